"""Standalone inequality checks and the cross-module identity suite.

Every check here is theorem-backed: a failure means a defect in the
library, not an unlucky random draw.  Inequalities whose proofs quantify
over sign choices are checked by exhausting the sign vectors exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .multibound import column_multi_bound, mb_operator_norm, multi_bound_set
from .norms import (
    MultiNormSpec,
    dual_level_norm,
    dual_spec,
    lattice_spec,
    max_spec,
    min_spec,
    multi_norm,
    pq_spec,
    standard_spec,
    standard_q_norm,
)
from .semigroups import (
    JModuleElement,
    MeanFunctional,
    abs_normalize,
    cancellativity_report,
    cyclic,
    dihedral,
    dual_translate,
    invariance_defect,
    lattice_sup_mean,
    left_zero,
    module_action,
    multi_invariance_bound,
    rectangular_band,
)
from .spaces import (
    DEFAULT_BUDGET,
    Exponent,
    FiniteMeasureSpace,
    InputError,
    LinearMap,
    LpVector,
    OptimizerBudget,
    VectorTuple,
    _norm_arr,
    _norming_coords,
)
from .summing import (
    _sign_matrix,
    summing_norm_estimate,
    weak_summing_norm,
    weak_summing_norm_predual,
)
from .tensor import (
    TensorElement,
    amplification_check,
    injective_tensor_norm,
    multinorm_tensor_norm,
    projective_upper_bound,
)

__all__ = [
    "CheckReport",
    "rademacher_check",
    "projection_inequality_check",
    "disjoint_rank_bound_check",
    "identity_suite",
    "reports_to_json",
    "reports_to_csv",
]


@dataclass(frozen=True)
class CheckReport:
    """One verified (in)equality: lhs against rhs with the achieved slack."""

    name: str
    passed: bool
    lhs: float
    rhs: float
    slack: float
    seed: int | None = None
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "seed": self.seed,
            "config": self.config,
        }


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "pass", "lhs", "rhs", "slack", "seed", "config"])
    for r in reports:
        d = r.to_dict()
        writer.writerow(
            [
                d["name"],
                d["pass"],
                repr(d["lhs"]),
                repr(d["rhs"]),
                repr(d["slack"]),
                "" if d["seed"] is None else d["seed"],
                json.dumps(d["config"], sort_keys=True),
            ]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# sign-enumeration inequalities


def rademacher_check(F, p, enum_cap: int = 20, seed: int | None = None) -> CheckReport:
    """Diagonal p-power sum against the worst signed row combination.

    F is an n x n array of vectors in one space.  The bound constant is
    C^p = max over sign vectors d of sum_j ||sum_i d_i F(i,j)||_p^p, and
    the claim sum_j ||F(j,j)||_p^p <= C^p holds by convexity, so the
    check passes unconditionally on correct arithmetic.
    """
    p = Exponent(p)
    if p.is_inf:
        raise InputError("the diagonal bound needs a finite exponent")
    rows = list(F)
    n = len(rows)
    if n == 0:
        raise InputError("need a nonempty square array")
    if n > enum_cap:
        raise InputError(f"sign enumeration capped at n = {enum_cap}")
    space = rows[0][0].space
    coords = np.empty((n, n, space.size), dtype=np.result_type(*(v.coords.dtype for r in rows for v in r)))
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError("array of vectors must be square")
        for j, v in enumerate(row):
            if v.space != space:
                raise InputError("all entries must share one space")
            coords[i, j] = v.coords
    pf = float(p)
    w = space.weights
    wrep = np.tile(w, n)

    # d and -d give the same value, so fix the first sign
    half = _sign_matrix(n - 1) if n > 1 else np.zeros((1, 0))
    signs = np.hstack([np.ones((half.shape[0], 1)), half])
    flat = coords.reshape(n, n * space.size)
    best = 0.0
    for start in range(0, signs.shape[0], 4096):
        block = signs[start : start + 4096] @ flat
        totals = np.abs(block) ** pf @ wrep
        best = max(best, float(totals.max()))
    diag = np.abs(coords[np.arange(n), np.arange(n)]) ** pf @ w
    lhs = float(diag.sum())
    slack = best - lhs
    return CheckReport(
        name="diagonal_sign_bound",
        passed=lhs <= best * (1 + 1e-12) + 1e-12,
        lhs=lhs,
        rhs=best,
        slack=slack,
        seed=seed,
        config={"n": n, "p": str(p), "dim": space.size},
    )


def _validate_partition(parts, m, label):
    seen = np.zeros(m, dtype=bool)
    for part in parts:
        for idx in part:
            if not 0 <= idx < m:
                raise InputError(f"{label} indexes outside the space")
            if seen[idx]:
                raise InputError(f"{label} pieces overlap at index {idx}")
            seen[idx] = True
    if not seen.all():
        raise InputError(f"{label} does not cover the space")


def projection_inequality_check(
    R, U, X, Y, p=2, omega_cap: int = 8, seed: int | None = None
) -> CheckReport:
    """Blockwise projections of R against its worst signed input.

    R is an (m, m, m) tensor acting on matrices, R(U)(s) = sum R[s,x,y]
    U[x,y]; U is a matrix whose rows are the images of unit point masses;
    X and Y are partitions of the m coordinates into equally many pieces.
    The left side aggregates the X_i-masked outputs of the Y_i-masked
    inputs; the right side exhausts the sign combinations of the
    Y-blocks, which the operator norm of R dominates.
    """
    p = Exponent(p)
    if p.is_inf:
        raise InputError("the projection bound needs a finite exponent")
    R = np.asarray(R, dtype=float)
    U = np.asarray(U, dtype=float)
    m = U.shape[0]
    if U.shape != (m, m) or R.shape != (m, m, m):
        raise InputError("R must be (m, m, m) and U (m, m)")
    if m > omega_cap:
        raise InputError(f"projection check capped at {omega_cap} points")
    X = [np.asarray(part, dtype=int) for part in X]
    Y = [np.asarray(part, dtype=int) for part in Y]
    if len(X) != len(Y):
        raise InputError("partitions must have equally many pieces")
    _validate_partition(X, m, "X partition")
    _validate_partition(Y, m, "Y partition")
    n = len(X)
    pf = float(p)

    def apply(mat):
        return np.tensordot(R, mat, axes=([1, 2], [0, 1]))

    lhs_p = 0.0
    for Xi, Yi in zip(X, Y):
        mask = np.zeros(m)
        mask[Yi] = 1.0
        out = apply(U * mask[None, :])
        lhs_p += float((np.abs(out[Xi]) ** pf).sum())
    lhs = lhs_p ** (1.0 / pf)

    rhs = 0.0
    for d in _sign_matrix(n - 1) if n > 1 else [np.zeros(0)]:
        dvec = np.zeros(m)
        dvec[Y[0]] = 1.0
        for di, Yi in zip(d, Y[1:]):
            dvec[Yi] = di
        out = apply(U * dvec[None, :])
        rhs = max(rhs, float((np.abs(out) ** pf).sum() ** (1.0 / pf)))
    return CheckReport(
        name="partition_projection_bound",
        passed=lhs <= rhs * (1 + 1e-12) + 1e-12,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        seed=seed,
        config={"m": m, "pieces": n, "p": str(p)},
    )


def _support(v):
    return set(np.flatnonzero(np.abs(v) > 0).tolist())


def disjoint_rank_bound_check(U, p, fs, xs, seed: int | None = None) -> CheckReport:
    """Finite-rank recombination bound from disjoint supports.

    T sends a point mass delta_s to sum_i <U delta_s, f_i> x_i.  When the
    f_i and the x_i each live on pairwise disjoint coordinates, the norm
    of T (certified by columns, the domain being l^1) is at most
    ||U|| max_i ||f_i||_{p'} ||x_i||_p.
    """
    p = Exponent(p)
    U = np.asarray(U)
    m = U.shape[0]
    if U.shape != (m, m):
        raise InputError("U must be square")
    F = np.asarray([np.asarray(f) for f in fs])
    Xm = np.asarray([np.asarray(x) for x in xs])
    if F.shape[0] != Xm.shape[0]:
        raise InputError("need equally many f and x vectors")
    if F.shape[1] != m or Xm.shape[1] != m:
        raise InputError("vectors must live on the same coordinates as U")
    for fam, label in ((F, "f"), (Xm, "x")):
        taken = set()
        for i in range(fam.shape[0]):
            sup = _support(fam[i])
            if taken & sup:
                raise InputError(f"{label} supports overlap")
            taken |= sup
    ones = np.ones(m)
    q = p.conjugate()
    T = (U @ F.T) @ Xm
    lhs = max(_norm_arr(T[s], ones, p) for s in range(m))
    u_norm = max(_norm_arr(U[s], ones, p) for s in range(m))
    pair = max(
        _norm_arr(F[i], ones, q) * _norm_arr(Xm[i], ones, p)
        for i in range(F.shape[0])
    )
    rhs = u_norm * pair
    return CheckReport(
        name="disjoint_rank_bound",
        passed=lhs <= rhs * (1 + 1e-12) + 1e-12,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        seed=seed,
        config={"m": m, "terms": int(F.shape[0]), "p": str(p)},
    )


# ---------------------------------------------------------------------------
# identity suite


DEFAULT_SUITE_CONFIG = {
    "dims": (2, 3),
    "exponents": (1, 2),
    "trials": 2,
    "seed": 2026,
    "budget": None,
}


def _space(rng, m, weighted=True) -> FiniteMeasureSpace:
    w = rng.uniform(0.5, 2.0, m) if weighted else np.ones(m)
    return FiniteMeasureSpace(tuple(f"t{i}" for i in range(m)), w)


def _tuple(rng, space, p, n) -> VectorTuple:
    return VectorTuple.from_array(space, p, rng.standard_normal((n, space.size)))


def _report(name, lhs, rhs, ok, seed, **config) -> CheckReport:
    return CheckReport(
        name=name,
        passed=bool(ok),
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(rhs - lhs),
        seed=seed,
        config=config,
    )


def _finite_exponents(exponents):
    out = []
    for e in exponents:
        e = Exponent(e)
        if not e.is_inf:
            out.append(e)
    if not out:
        raise InputError("identity suite needs at least one finite exponent")
    return out


def _check_sandwich(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    space = _space(rng, m)
    t = _tuple(rng, space, 1, n)
    q = exps[int(rng.integers(len(exps)))]
    pool = [
        lattice_spec(),
        standard_spec(q),
        pq_spec(1, q),
        pq_spec(q, q),
        min_spec(),
        max_spec(),
    ]
    spec = pool[int(rng.integers(len(pool)))]
    lo = multi_norm(min_spec(), t).value
    hi = multi_norm(max_spec(), t, budget)
    mid = multi_norm(spec, t, budget).value
    ok = (
        lo <= mid * (1 + 5e-3) + 1e-12
        and mid <= hi.value * (1 + 5e-3) + 1e-12
        and hi.certified
    )
    return _report(
        "sandwich_min_spec_max", mid, hi.value, ok, seed, spec=str(spec), min=lo, n=n, m=m
    )


def _check_pq_monotone(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    base = exps[int(rng.integers(len(exps)))]
    t = _tuple(rng, _space(rng, m), base, n)
    qs = sorted({float(e) for e in exps})
    q = qs[-1]
    ps = [e for e in qs if e <= q]
    worst_lhs, worst_rhs = 0.0, np.inf
    # nondecreasing in p at fixed q
    vals = [multi_norm(pq_spec(p, q), t, budget).value for p in ps]
    ok = True
    for a, b in zip(vals, vals[1:]):
        if a > b * (1 + 5e-3) + 1e-12:
            ok = False
        if a - b > worst_lhs - worst_rhs:
            worst_lhs, worst_rhs = a, b
    # nonincreasing in q at fixed p
    p0 = ps[0]
    qvals = [(q2, multi_norm(pq_spec(p0, q2), t, budget).value) for q2 in qs if q2 >= float(p0)]
    for (qa, va), (qb, vb) in zip(qvals, qvals[1:]):
        if vb > va * (1 + 5e-3) + 1e-12:
            ok = False
        if vb - va > worst_lhs - worst_rhs:
            worst_lhs, worst_rhs = vb, va
    if not np.isfinite(worst_rhs):
        worst_lhs, worst_rhs = vals[0], vals[-1]
    return _report(
        "pq_exponent_monotonicity", worst_lhs, worst_rhs, ok, seed, base=str(base), m=m, n=n
    )


def _check_pq11_max(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    t = _tuple(rng, _space(rng, m), 1, n)
    a = multi_norm(pq_spec(1, 1), t, budget).value
    b = multi_norm(max_spec(), t, budget)
    ok = b.certified and a >= 0.98 * b.value - 1e-12 and a <= b.value * (1 + 1e-9) + 1e-12
    return _report("pq11_equals_max_on_l1", a, b.value, ok, seed, m=m, n=n)


def _check_std_lattice(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    p = exps[int(rng.integers(len(exps)))]
    t = _tuple(rng, _space(rng, m), p, n)
    a = standard_q_norm(p, t, budget=budget)
    b = multi_norm(lattice_spec(), t)
    scale = max(1.0, b.value)
    ok = a.certified and abs(a.value - b.value) <= 1e-12 * scale
    return _report("std_p_equals_lattice_on_lp", a.value, b.value, ok, seed, p=str(p), m=m, n=n)


def _check_chain_l1(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    t = _tuple(rng, _space(rng, m), 1, n)
    a = multi_norm(max_spec(), t, budget)
    b = standard_q_norm(1, t, budget=budget)
    c = multi_norm(lattice_spec(), t)
    scale = max(1.0, c.value)
    ok = (
        a.certified
        and b.certified
        and abs(a.value - c.value) <= 1e-12 * scale
        and abs(b.value - c.value) <= 1e-12 * scale
    )
    return _report("max_std1_lattice_chain_on_l1", a.value, c.value, ok, seed, m=m, n=n, mid=b.value)


def _check_dual_dual(rng, dims, exps, budget, seed):
    """Pair t against dual tuples normalized by the certified dual value;
    the supremum must reproduce the inner norm of t."""
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    inner = min_spec() if rng.integers(2) else max_spec()
    base = 2 if inner.kind == "min" else 1
    space = _space(rng, m)
    t = _tuple(rng, space, base, n)
    direct = multi_norm(inner, t, budget)
    dspace = space
    dp = t.p.conjugate()
    dual_of_inner = dual_spec(inner)

    seeds = []
    if direct.witness and direct.witness.get("kind") == "dual_tuple":
        seeds.append(np.asarray(direct.witness["coords"]))
    for i in range(n):
        L = np.zeros((n, m))
        L[i] = _norming_coords(t.coords[i], space.weights, t.p)
        seeds.append(L)
    for _ in range(8):
        seeds.append(rng.standard_normal((n, m)))

    back = 0.0
    for L in seeds:
        lam = VectorTuple.from_array(dspace, dp, L)
        den = dual_level_norm(dual_of_inner, lam, budget)
        if not den.certified or den.value <= 0:
            continue
        num = abs(float(((t.coords * L) @ space.weights).sum()))
        back = max(back, num / den.value)
    ok = (
        direct.certified
        and back <= direct.value * (1 + 1e-9) + 1e-12
        and back >= direct.value * (1 - 5e-3) - 1e-12
    )
    return _report(
        "double_dual_restriction", back, direct.value, ok, seed, inner=inner.kind, m=m, n=n
    )


def _check_predual(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    p = exps[int(rng.integers(len(exps)))]
    base = Exponent(2) if rng.integers(2) else Exponent(1).conjugate()
    t = _tuple(rng, _space(rng, m), base, n)
    a = weak_summing_norm(p, t, budget=budget)
    b = weak_summing_norm_predual(p, t, budget)
    scale = max(1.0, a.value, b.value)
    if a.certified:
        ok = b.value <= a.value + 1e-9 * scale and b.value >= a.value - 5e-3 * scale
    else:
        ok = abs(a.value - b.value) <= 5e-3 * scale
    return _report(
        "dual_space_predual_agreement", b.value, a.value, ok, seed, p=str(p), base=str(base), m=m, n=n
    )


def _check_amplification(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    n = int(rng.integers(2, 4))
    q = exps[int(rng.integers(len(exps)))]
    t = _tuple(rng, _space(rng, m), int(rng.integers(1, 3)), n)
    pool = [lattice_spec(), min_spec(), standard_spec(q), pq_spec(1, q)]
    spec = pool[int(rng.integers(len(pool)))]
    T = rng.standard_normal((int(rng.integers(1, 4)), n))
    res = amplification_check(spec, T, t, budget)
    return _report(
        "tuple_map_amplification", res["lhs"], res["rhs"], res["pass"], seed, spec=str(spec)
    )


def _random_tensor(rng, N, space, p, k):
    pairs = []
    for _ in range(k):
        a = rng.standard_normal(N)
        x = rng.standard_normal(space.size)
        pairs.append((a, LpVector(space, p, x)))
    return TensorElement.build(N, pairs)


def _check_bracketing(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    N = int(rng.integers(2, 4))
    space = _space(rng, m)
    q = exps[int(rng.integers(len(exps)))]
    tau = _random_tensor(rng, N, space, int(rng.integers(1, 3)), int(rng.integers(1, 4)))
    spec = [lattice_spec(), standard_spec(q), pq_spec(1, q)][int(rng.integers(3))]
    inj = injective_tensor_norm(tau)
    mid = multinorm_tensor_norm(spec, tau, budget)
    proj = projective_upper_bound(tau, budget)
    ok = (
        inj.value <= mid.value * (1 + 5e-3) + 1e-12
        and mid.value <= proj.value * (1 + 5e-3) + 1e-12
    )
    return _report(
        "tensor_norm_bracketing", inj.value, proj.value, ok, seed, spec=str(spec), mid=mid.value
    )


def _check_elementary(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    N = int(rng.integers(2, 4))
    space = _space(rng, m)
    q = exps[int(rng.integers(len(exps)))]
    p = int(rng.integers(1, 3))
    tau = _random_tensor(rng, N, space, p, 1)
    a, x = tau.summands[0]
    want = float(np.abs(a).max()) * x.norm
    pool = [lattice_spec(), min_spec(), max_spec(), standard_spec(q), pq_spec(1, q), pq_spec(q, q)]
    spec = pool[int(rng.integers(len(pool)))]
    got = multinorm_tensor_norm(spec, tau, budget).value
    scale = max(1.0, want)
    ok = abs(got - want) <= 1e-9 * scale
    return _report("elementary_cross_norm", got, want, ok, seed, spec=str(spec), N=N, m=m)


def _check_min_max_corners(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    N = int(rng.integers(2, 4))
    space = _space(rng, m)
    tau = _random_tensor(rng, N, space, 1, int(rng.integers(1, 4)))
    inj = injective_tensor_norm(tau)
    minv = multinorm_tensor_norm(min_spec(), tau)
    maxv = multinorm_tensor_norm(max_spec(), tau, budget)
    proj = projective_upper_bound(tau, budget)
    scale = max(1.0, inj.value)
    ok = (
        abs(minv.value - inj.value) <= 1e-9 * scale
        and maxv.certified
        and proj.value <= maxv.value * 1.02 + 1e-12
        and proj.value >= maxv.value - 1e-9 * scale
    )
    return _report(
        "tensor_corner_identities", minv.value, inj.value, ok, seed, max=maxv.value, proj=proj.value
    )


def _check_collapse(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    space = _space(rng, m)
    B = [LpVector(space, 1, rng.standard_normal(m)) for _ in range(int(rng.integers(2, 4)))]
    spec = [lattice_spec(), max_spec(), standard_spec(1)][int(rng.integers(3))]
    res = multi_bound_set(spec, B, budget)
    worst, bound = 0.0, res.value
    k_top = min(2 * len(B), len(B) + 2)
    idx = np.arange(len(B))
    ok = res.certified
    for K in range(1, k_top + 1):
        for combo in np.stack(np.meshgrid(*([idx] * K)), axis=-1).reshape(-1, K):
            t = VectorTuple([B[i] for i in combo])
            val = multi_norm(spec, t, budget).value
            worst = max(worst, val)
            if val > bound + 1e-9:
                ok = False
    return _report(
        "finite_set_tuple_collapse", worst, bound, ok, seed, spec=str(spec), set_size=len(B)
    )


def _check_hull(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    space = _space(rng, m)
    B = [LpVector(space, 1, rng.standard_normal(m)) for _ in range(int(rng.integers(2, 4)))]
    spec = [lattice_spec(), max_spec(), standard_spec(1)][int(rng.integers(3))]
    base = multi_bound_set(spec, B, budget)
    hull = []
    for _ in range(6):
        c = rng.standard_normal(len(B))
        c /= max(1.0, np.abs(c).sum())
        hull.append(LpVector(space, 1, sum(ci * b.coords for ci, b in zip(c, B))))
    sampled = multi_bound_set(spec, hull, budget)
    ok = base.certified and sampled.value <= base.value * (1 + 1e-9) + 1e-12
    return _report(
        "absolute_hull_multi_bound", sampled.value, base.value, ok, seed, spec=str(spec)
    )


def _check_summing_duality(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    pcod = exps[int(rng.integers(len(exps)))]
    dom = _space(rng, m, weighted=False)
    cod = _space(rng, m)
    T = LinearMap(dom, 1, cod, pcod, rng.standard_normal((m, m)))
    qs = sorted({float(e) for e in exps})
    p = qs[0]
    q = qs[-1]
    alpha = column_multi_bound(p, q, T, budget)
    pi = summing_norm_estimate(q, p, T.adjoint(), tuple_cap=m, budget=budget)
    ok = (
        pi.value <= alpha.value * (1 + 1e-9) + 1e-12
        and pi.value >= 0.95 * alpha.value - 1e-12
    )
    return _report(
        "summing_adjoint_duality", pi.value, alpha.value, ok, seed, p=p, q=q, pcod=str(pcod), m=m
    )


def _check_mb_alpha(rng, dims, exps, budget, seed):
    m = int(rng.choice(dims))
    pcod = exps[int(rng.integers(len(exps)))]
    dom = _space(rng, m, weighted=False)
    cod = _space(rng, m)
    T = LinearMap(dom, 1, cod, pcod, rng.standard_normal((m, m)))
    qs = sorted({float(e) for e in exps})
    p, q = qs[0], qs[-1]
    mb = mb_operator_norm(min_spec(), pq_spec(p, q), T, k_max=m, budget=budget)
    alpha = column_multi_bound(p, q, T, budget)
    scale = max(1.0, alpha.value)
    ok = abs(mb.value - alpha.value) <= 5e-3 * scale
    return _report("mb_from_l1_equals_alpha", mb.value, alpha.value, ok, seed, p=p, q=q, m=m)


_GROUP_POOL = None


def _group_pool():
    global _GROUP_POOL
    if _GROUP_POOL is None:
        _GROUP_POOL = (
            cyclic(3),
            cyclic(4),
            dihedral(3),
            left_zero(2),
            rectangular_band(2, 2),
        )
    return _GROUP_POOL


def _check_translate_pairing(rng, dims, exps, budget, seed):
    pool = _group_pool()
    S = pool[int(rng.integers(len(pool)))]
    lam = MeanFunctional(S, rng.standard_normal(S.size))
    worst = max(
        abs(dual_translate(s, lam).unit_pairing - lam.unit_pairing)
        for s in range(S.size)
    )
    return _report(
        "translate_preserves_unit_pairing", worst, 1e-12, worst <= 1e-12, seed, semigroup=S.size
    )


def _check_translate_isometry(rng, dims, exps, budget, seed):
    worst = 0.0
    for S in _group_pool():
        if not cancellativity_report(S)["left_cancellative"]:
            continue
        lam = MeanFunctional(S, rng.standard_normal(S.size))
        worst = max(
            worst, max(abs(dual_translate(s, lam).norm - lam.norm) for s in range(S.size))
        )
    lz = left_zero(2)
    lam = MeanFunctional(lz, np.array([0.7, -0.4]))
    drop = lam.norm - dual_translate(0, lam).norm
    ok = worst <= 1e-12 and drop > 1e-6
    return _report("translate_isometry_iff_cancellative", worst, 1e-12, ok, seed, witness_drop=drop)


def _check_group_modulus(rng, dims, exps, budget, seed):
    pool = [S for S in _group_pool() if S.is_group]
    S = pool[int(rng.integers(len(pool)))]
    lam = MeanFunctional(S, rng.standard_normal(S.size))
    lam_abs = MeanFunctional(S, np.abs(lam.coords))
    worst = max(
        float(
            np.abs(
                np.abs(dual_translate(s, lam).coords) - dual_translate(s, lam_abs).coords
            ).max()
        )
        for s in range(S.size)
    )
    return _report("group_translate_modulus", worst, 1e-12, worst <= 1e-12, seed, size=S.size)


def _check_mib_monotone(rng, dims, exps, budget, seed):
    pool = [S for S in _group_pool() if S.is_group and S.size <= 4]
    S = pool[int(rng.integers(len(pool)))]
    lam = abs_normalize(MeanFunctional(S, rng.uniform(0.1, 1.0, S.size)))
    qs = sorted({float(e) for e in exps})
    q = qs[-1]
    ps = [p for p in qs if p <= q]
    vals = [multi_invariance_bound(p, q, lam, budget).value for p in ps]
    ok = all(a <= b * (1 + 5e-3) + 1e-12 for a, b in zip(vals, vals[1:]))
    p0 = ps[0]
    qvals = [multi_invariance_bound(p0, q2, lam, budget).value for q2 in qs if q2 >= p0]
    ok = ok and all(b <= a * (1 + 5e-3) + 1e-12 for a, b in zip(qvals, qvals[1:]))
    return _report(
        "mean_invariance_monotonicity", vals[0], vals[-1], ok, seed, size=S.size, exps=qs
    )


def _check_lattice_sup(rng, dims, exps, budget, seed):
    pool = [S for S in _group_pool() if S.is_group]
    S = pool[int(rng.integers(len(pool)))]
    lam = abs_normalize(MeanFunctional(S, rng.uniform(0.05, 1.0, S.size)))
    out = lattice_sup_mean(lam)
    defect = invariance_defect(out)
    return _report("lattice_sup_mean_invariance", defect, 1e-12, defect < 1e-12, seed, size=S.size)


def _check_module_bound(rng, dims, exps, budget, seed):
    pool = _group_pool()
    S = pool[int(rng.integers(len(pool)))]
    C = cancellativity_report(S)["uniform_constant"]
    p = exps[int(rng.integers(len(exps)))]
    pf = float(p)
    f = S.vector(rng.standard_normal(S.size))
    U = JModuleElement(S, p, rng.standard_normal((S.size, S.size)))
    got = module_action(f, U).norm
    cap = C ** (2.0 - 1.0 / pf) * f.norm * U.norm
    ok = got <= cap * (1 + 1e-9) + 1e-12
    return _report(
        "module_action_norm_bound", got, cap, ok, seed, size=S.size, p=str(p), constant=C
    )


_IDENTITIES = (
    _check_sandwich,
    _check_pq_monotone,
    _check_pq11_max,
    _check_std_lattice,
    _check_chain_l1,
    _check_dual_dual,
    _check_predual,
    _check_amplification,
    _check_bracketing,
    _check_elementary,
    _check_min_max_corners,
    _check_collapse,
    _check_hull,
    _check_summing_duality,
    _check_mb_alpha,
    _check_translate_pairing,
    _check_translate_isometry,
    _check_group_modulus,
    _check_mib_monotone,
    _check_lattice_sup,
    _check_module_bound,
)


def identity_suite(config: dict | None = None) -> list[CheckReport]:
    """Run every cross-module identity once per trial and report each.

    The config keys are dims (base dimensions to draw from), exponents
    (finite exponents to draw from), trials, seed, and budget.  Reports
    are a deterministic function of the config.
    """
    merged = dict(DEFAULT_SUITE_CONFIG)
    if config:
        unknown = set(config) - set(DEFAULT_SUITE_CONFIG)
        if unknown:
            raise InputError(f"unknown identity suite config keys: {sorted(unknown)}")
        merged.update(config)
    dims = tuple(int(m) for m in merged["dims"])
    if not dims or min(dims) < 1:
        raise InputError("dims must be positive")
    exps = _finite_exponents(merged["exponents"])
    trials = int(merged["trials"])
    seed = int(merged["seed"])
    budget = merged["budget"] or DEFAULT_BUDGET.scaled(restarts=16, max_iter=200)
    reports = []
    for trial in range(trials):
        trial_seed = seed + trial
        for check in _IDENTITIES:
            rng = np.random.default_rng([trial_seed & 0x7FFFFFFF, id_salt(check.__name__)])
            reports.append(check(rng, dims, exps, budget, trial_seed))
    return reports


def id_salt(name: str) -> int:
    return sum(ord(c) << (8 * (i % 3)) for i, c in enumerate(name)) & 0x7FFFFFFF
