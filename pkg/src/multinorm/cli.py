"""Command-line front end: norms, multi-bounds, summing estimates, tensor
norms, semigroup analyses, the verification suite, and the growth demo.

Exit codes: 0 success, 1 failed verification check, 2 malformed input,
3 spec/exponent mismatch, 4 algebraic structure error.  Same flags plus
same seed give byte-identical stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction

import numpy as np

from .multibound import column_multi_bound, mb_operator_norm
from .norms import multi_norm, parse_spec
from .semigroups import (
    FiniteSemigroup,
    MeanFunctional,
    cancellativity_report,
    cyclic,
    dihedral,
    invariance_defect,
    left_zero,
    mean_check,
    multi_invariance_bound,
    point_mean,
    rectangular_band,
    right_zero,
    symmetric,
    uniform_mean,
)
from .spaces import (
    AlgebraError,
    Exponent,
    FiniteMeasureSpace,
    InputError,
    LinearMap,
    LpVector,
    OptimizerBudget,
    SpecMismatchError,
    VectorTuple,
)
from .summing import (
    partial_sum_operator,
    summing_norm_estimate,
    weak_summing_norm,
)
from .tensor import (
    TensorElement,
    injective_tensor_norm,
    multinorm_tensor_norm,
    projective_upper_bound,
)
from .verify import (
    disjoint_rank_bound_check,
    identity_suite,
    projection_inequality_check,
    rademacher_check,
    reports_to_csv,
    reports_to_json,
)

logger = logging.getLogger("multinorm")

_GENERATORS = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "left_zero": left_zero,
    "right_zero": right_zero,
    "rectangular_band": rectangular_band,
    "symmetric": symmetric,
}


# ---------------------------------------------------------------------------
# input parsing


def _parse_exponent(text: str):
    """Exponent flag: 'inf', an integer, a decimal, or an exact 'a/b'."""
    text = text.strip()
    if text in ("inf", "Inf", "INF", "oo"):
        return "inf"
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse exponent {text!r}") from e


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}") from e


def _space_from_dict(d) -> FiniteMeasureSpace:
    if not isinstance(d, dict) or "weights" not in d:
        raise InputError("space object needs a 'weights' array")
    weights = np.asarray(d["weights"], dtype=float)
    labels = d.get("labels")
    if labels is None:
        labels = tuple(f"t{i}" for i in range(weights.shape[0]))
    return FiniteMeasureSpace(tuple(labels), weights)


def _tuple_from_dict(d) -> VectorTuple:
    for key in ("space", "p", "vectors"):
        if key not in d:
            raise InputError(f"tuple object needs {key!r}")
    space = _space_from_dict(d["space"])
    p = _parse_exponent(str(d["p"]))
    return VectorTuple.from_array(space, p, np.asarray(d["vectors"], dtype=float))


def _operator_from_dict(d) -> LinearMap:
    for key in ("domain", "codomain", "matrix"):
        if key not in d:
            raise InputError(f"operator object needs {key!r}")
    dom = d["domain"]
    cod = d["codomain"]
    return LinearMap(
        _space_from_dict(dom["space"]),
        _parse_exponent(str(dom["p"])),
        _space_from_dict(cod["space"]),
        _parse_exponent(str(cod["p"])),
        np.asarray(d["matrix"], dtype=float),
    )


def _tensor_from_dict(d) -> TensorElement:
    for key in ("N", "summands"):
        if key not in d:
            raise InputError(f"tensor object needs {key!r}")
    pairs = []
    for s in d["summands"]:
        x = s["x"]
        space = _space_from_dict(x["space"])
        p = _parse_exponent(str(x["p"]))
        pairs.append((np.asarray(s["a"], dtype=float), LpVector(space, p, np.asarray(x["coords"], dtype=float))))
    return TensorElement.build(int(d["N"]), pairs)


def _semigroup_from_args(args) -> FiniteSemigroup:
    if args.cayley:
        return FiniteSemigroup.from_dict(_load_json(args.cayley))
    if not args.gen:
        raise InputError("need --gen NAME:ARGS or --cayley FILE")
    name, _, argtext = args.gen.partition(":")
    if name not in _GENERATORS:
        raise InputError(f"unknown generator {name!r}; have {sorted(_GENERATORS)}")
    gen_args = [int(a) for a in argtext.split(",")] if argtext else []
    return _GENERATORS[name](*gen_args)


def _mean_from_flag(S: FiniteSemigroup, text: str) -> MeanFunctional:
    if text == "uniform":
        return uniform_mean(S)
    if text.startswith("point:"):
        label = text[len("point:") :]
        try:
            return point_mean(S, label)
        except InputError:
            if label == "e" and S.identity is not None:
                return point_mean(S, S.identity)
            if label.isdigit():
                return point_mean(S, int(label))
            raise
    return MeanFunctional(S, np.asarray(_load_json(text)["coords"], dtype=float))


def _budget(args) -> OptimizerBudget:
    return OptimizerBudget(restarts=args.restarts, max_iter=args.iters, seed=args.seed)


# ---------------------------------------------------------------------------
# output plumbing


def _emit(args, payload: dict, text_lines: list[str], csv_rows: list[list] | None = None) -> None:
    fmt = "json" if getattr(args, "json", False) else args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"
    elif fmt == "csv":
        if csv_rows is None:
            csv_rows = [list(payload.keys()), [payload[k] for k in payload]]
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        out = buf.getvalue()
    else:
        out = "\n".join(text_lines) + "\n"
    sys.stdout.write(out)
    path = getattr(args, "output", None)
    if path:
        with open(path, "w") as fh:
            fh.write(out)


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    return str(x)


def _witness_kind(witness) -> str:
    if not witness:
        return "none"
    return str(witness.get("kind", "opaque"))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_norm(args) -> int:
    spec = parse_spec(args.spec)
    t = _tuple_from_dict(_load_json(args.input))
    est = multi_norm(spec, t, _budget(args))
    payload = est.to_dict()
    payload["spec"] = str(spec)
    payload["n"] = t.n
    lines = [
        f"spec: {spec}",
        f"entries: {t.n}",
        f"value: {est.value!r}",
        f"certified: {est.certified}",
        f"witness: {_witness_kind(est.witness)}",
    ]
    rows = [["spec", "n", "value", "certified"], [str(spec), t.n, repr(est.value), est.certified]]
    _emit(args, payload, lines, rows)
    return 0


def _cmd_mb(args) -> int:
    T = _operator_from_dict(_load_json(args.input))
    budget = _budget(args)
    if args.pq:
        p, q = (_parse_exponent(x) for x in args.pq.split(","))
        res = column_multi_bound(p, q, T, budget)
        head = f"column multi-bound pq:{p},{q}"
    else:
        if not (args.spec_dom and args.spec_cod):
            raise InputError("need either --pq P,Q or both --spec-dom and --spec-cod")
        res = mb_operator_norm(
            parse_spec(args.spec_dom), parse_spec(args.spec_cod), T, args.k_max, budget
        )
        head = f"multi-bounded norm {args.spec_dom} -> {args.spec_cod}, k_max {args.k_max}"
    payload = res.to_dict()
    payload["witness"] = _witness_kind(res.witness)
    lines = [
        head,
        f"value: {res.value!r}",
        f"certified: {res.certified}",
        f"collapse_length: {res.collapse_length}",
    ]
    rows = [["value", "certified", "collapse_length"], [repr(res.value), res.certified, res.collapse_length]]
    _emit(args, payload, lines, rows)
    return 0


def _cmd_summing(args) -> int:
    data = _load_json(args.input)
    budget = _budget(args)
    if "matrix" in data:
        if args.q is None:
            raise InputError("operator input needs --q")
        T = _operator_from_dict(data)
        est = summing_norm_estimate(
            _parse_exponent(args.q), _parse_exponent(args.p), T,
            tuple_cap=args.tuple_cap, budget=budget,
        )
        head = f"summing norm estimate q={args.q} p={args.p} cap={args.tuple_cap}"
    else:
        if args.q is not None:
            raise InputError("tuple input takes only --p")
        t = _tuple_from_dict(data)
        est = weak_summing_norm(_parse_exponent(args.p), t, budget=budget)
        head = f"weak summing value p={args.p}"
    payload = est.to_dict()
    payload["witness"] = _witness_kind(est.witness)
    lines = [head, f"value: {est.value!r}", f"certified: {est.certified}"]
    rows = [["value", "certified"], [repr(est.value), est.certified]]
    _emit(args, payload, lines, rows)
    return 0


def _cmd_tensor(args) -> int:
    tau = _tensor_from_dict(_load_json(args.input))
    budget = _budget(args)
    spec = parse_spec(args.spec)
    inj = injective_tensor_norm(tau)
    mid = multinorm_tensor_norm(spec, tau, budget)
    proj = projective_upper_bound(tau, budget)
    payload = {
        "injective": inj.to_dict(),
        "spec": str(spec),
        "spec_value": mid.to_dict(),
        "projective_upper": proj.to_dict(),
    }
    for key in ("injective", "spec_value", "projective_upper"):
        payload[key].pop("witness", None)
    lines = [
        f"injective: {inj.value!r} (certified={inj.certified})",
        f"{spec}: {mid.value!r} (certified={mid.certified})",
        f"projective upper: {proj.value!r} (certified={proj.certified})",
    ]
    rows = [
        ["norm", "value", "certified"],
        ["injective", repr(inj.value), inj.certified],
        [str(spec), repr(mid.value), mid.certified],
        ["projective_upper", repr(proj.value), proj.certified],
    ]
    _emit(args, payload, lines, rows)
    return 0


def _cmd_group(args) -> int:
    S = _semigroup_from_args(args)
    rep = cancellativity_report(S)
    payload = {"size": S.size, "elements": [str(e) for e in S.elements], "cancellativity": rep}
    lines = [f"semigroup on {S.size} elements"]
    for key in sorted(rep):
        lines.append(f"{key}: {rep[key]}")
    rows = [["key", "value"]] + [[k, rep[k]] for k in sorted(rep)]
    if args.mean:
        lam = _mean_from_flag(S, args.mean)
        chk = mean_check(lam)
        defect = invariance_defect(lam)
        payload["mean_check"] = chk
        payload["invariance_defect"] = defect
        lines.append(f"mean check: is_mean={chk['is_mean']} norm={chk['norm']!r} unit_pairing={chk['unit_pairing']!r}")
        lines.append(f"invariance defect: {defect!r}")
        rows.append(["invariance_defect", repr(defect)])
        payload["multi_invariance"] = {}
        for pq in args.pq or []:
            p, q = (_parse_exponent(x) for x in pq.split(","))
            res = multi_invariance_bound(p, q, lam, _budget(args))
            payload["multi_invariance"][f"{p},{q}"] = res.to_dict()
            lines.append(f"multi-invariance bound ({p},{q}): {res.value!r} (certified={res.certified})")
            rows.append([f"mib:{p},{q}", repr(res.value)])
    _emit(args, payload, lines, rows)
    return 0


def _inequality_reports(trials: int, seed: int) -> list:
    """Seeded instances of the three sign-enumeration checks."""
    reports = []
    for k in range(trials):
        g = np.random.default_rng([seed & 0x7FFFFFFF, 0x51D3, k])
        n = int(g.integers(1, 7))
        m = int(g.integers(1, 7))
        space = FiniteMeasureSpace(tuple(f"a{i}" for i in range(m)), g.uniform(0.5, 2.0, m))
        p = float(g.choice([1.0, 1.5, 2.0, 3.0]))
        F = [[LpVector(space, p, g.standard_normal(m)) for _ in range(n)] for _ in range(n)]
        reports.append(rademacher_check(F, p, seed=k))

        m2 = int(g.integers(2, 7))
        parts = int(g.integers(1, min(m2, 4) + 1))
        lx = g.integers(0, parts, m2)
        ly = g.integers(0, parts, m2)
        lx[:parts] = np.arange(parts)
        ly[:parts] = np.arange(parts)
        reports.append(
            projection_inequality_check(
                g.standard_normal((m2, m2, m2)),
                g.standard_normal((m2, m2)),
                [np.flatnonzero(lx == i) for i in range(parts)],
                [np.flatnonzero(ly == i) for i in range(parts)],
                p=float(g.choice([1.0, 1.5, 2.0])),
                seed=k,
            )
        )

        m3 = int(g.integers(2, 7))
        terms = int(g.integers(1, min(m3, 3) + 1))
        perm = g.permutation(m3)
        cuts = sorted(g.choice(np.arange(1, m3), size=terms - 1, replace=False)) if terms > 1 else []
        fs, xs = [], []
        for block in np.split(perm, cuts):
            f = np.zeros(m3)
            x = np.zeros(m3)
            f[block] = g.standard_normal(len(block))
            x[block[g.integers(len(block))]] = g.standard_normal()
            fs.append(f)
            xs.append(x)
        reports.append(
            disjoint_rank_bound_check(
                g.standard_normal((m3, m3)), float(g.choice([1.0, 2.0, 3.0])), fs, xs, seed=k
            )
        )
    return reports


def _cmd_verify(args) -> int:
    reports = identity_suite({"trials": args.trials, "seed": args.seed})
    reports += _inequality_reports(args.trials, args.seed)
    failures = [r for r in reports if not r.passed]
    fmt = "json" if getattr(args, "json", False) else args.format
    if fmt == "json":
        sys.stdout.write(reports_to_json(reports) + "\n")
    elif fmt == "csv":
        sys.stdout.write(reports_to_csv(reports))
    else:
        sys.stdout.write(f"checks: {len(reports)}\n")
        sys.stdout.write(f"failures: {len(failures)}\n")
        for r in failures:
            sys.stdout.write(
                f"FAIL {r.name} lhs={r.lhs!r} rhs={r.rhs!r} seed={r.seed} config={json.dumps(r.config, sort_keys=True)}\n"
            )
    if args.report:
        text = (
            reports_to_csv(reports)
            if args.report.endswith(".csv")
            else reports_to_json(reports) + "\n"
        )
        with open(args.report, "w") as fh:
            fh.write(text)
    return 1 if failures else 0


def _cmd_demo_kp(args) -> int:
    budget = _budget(args)
    p = _parse_exponent(args.p)
    q = _parse_exponent(args.q)
    rows = [["n", f"alpha_{q}_{q}", f"alpha_{p}_{q}"]]
    table = []
    for n in range(args.n_min, args.n_max + 1):
        T = partial_sum_operator(n)
        grow = column_multi_bound(q, q, T, budget)
        flat = column_multi_bound(p, q, T, budget)
        table.append({"n": n, "growing": grow.value, "bounded": flat.value})
        rows.append([n, repr(grow.value), repr(flat.value)])
    payload = {"p": str(p), "q": str(q), "rows": table}
    lines = [f"partial-sum operator growth, diagonal ({q},{q}) vs split ({p},{q})"]
    for r in table:
        lines.append(f"n={r['n']}: {r['growing']!r}  {r['bounded']!r}")
    _emit(args, payload, lines, rows)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sp, budget=True, fmt=True):
    if budget:
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--restarts", type=int, default=64)
        sp.add_argument("--iters", type=int, default=500)
    if fmt:
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--json", action="store_true", help="shorthand for --format json")
        sp.add_argument("--output", help="also write the formatted output to this file")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="multinorm",
        description="Multi-norms, summing norms, multi-bounds and invariant means on finite weighted L^p spaces.",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("norm", help="evaluate a multi-norm on a tuple")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--input", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_norm)

    sp = sub.add_parser("mb", help="multi-bound of an operator")
    sp.add_argument("--input", required=True)
    sp.add_argument("--pq", help="P,Q for the column multi-bound of an l^1-domain operator")
    sp.add_argument("--spec-dom", dest="spec_dom")
    sp.add_argument("--spec-cod", dest="spec_cod")
    sp.add_argument("--k-max", dest="k_max", type=int, default=4)
    _add_common(sp)
    sp.set_defaults(func=_cmd_mb)

    sp = sub.add_parser("summing", help="summing norm of an operator or weak summing value of a tuple")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q")
    sp.add_argument("--input", required=True)
    sp.add_argument("--tuple-cap", dest="tuple_cap", type=int, default=4)
    _add_common(sp)
    sp.set_defaults(func=_cmd_summing)

    sp = sub.add_parser("tensor", help="injective / spec / projective values of a level tensor")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--input", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_tensor)

    sp = sub.add_parser("group", help="semigroup analysis and mean invariance")
    sp.add_argument("--gen", help="builtin generator, e.g. cyclic:6 or rectangular_band:2,3")
    sp.add_argument("--cayley", help="JSON file with elements/table")
    sp.add_argument("--mean", help="uniform | point:LABEL | file.json")
    sp.add_argument("--pq", action="append", help="P,Q for a multi-invariance bound; repeatable")
    _add_common(sp)
    sp.set_defaults(func=_cmd_group)

    sp = sub.add_parser("verify", help="identity suite plus sign-enumeration inequality checks")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--report", help="write the full report to this JSON or CSV file")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("demo-kp", help="growth of the diagonal multi-bound of the partial-sum operators")
    sp.add_argument("--n-min", dest="n_min", type=int, default=2)
    sp.add_argument("--n-max", dest="n_max", type=int, default=8)
    sp.add_argument("--p", default="1")
    sp.add_argument("--q", default="2")
    _add_common(sp)
    sp.set_defaults(func=_cmd_demo_kp)

    return ap


def main(argv=None) -> int:
    level = os.environ.get("LOG_LEVEL")
    if level:
        logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), stream=sys.stderr)
    try:
        args = _parser().parse_args(argv)
        logger.debug("subcommand %s", args.subcommand)
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SpecMismatchError as e:
        print(f"spec mismatch: {e}", file=sys.stderr)
        return 3
    except AlgebraError as e:
        print(f"algebra error: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
