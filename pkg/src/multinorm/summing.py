"""Weak summing aggregates of vector tuples and summing-norm estimates.

For a tuple (x_1, ..., x_n) in a weighted L^r space, the weak p-summing
value is

    sup { (sum_i |<x_i, g>|^p)^(1/p) : g in the unit ball of L^r' }

with the bilinear weighted pairing.  Several exponent patterns admit exact
closed forms (enumerable ball extreme points, a singular value, a plain
maximum); everything else is bounded from below by a seeded ascent whose
witness reproduces the reported value.

The same quantity normalizes the summing-norm estimate for an operator:
pi(q, p, T) is approached from below by tuples maximizing the ratio of the
q-aggregate of image norms to the weak p-summing value of the tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend, _kernels_py
from .spaces import (
    DEFAULT_BUDGET,
    FiniteMeasureSpace,
    Exponent,
    InputError,
    LinearMap,
    LpVector,
    ONE,
    OptimizerBudget,
    VectorTuple,
    _norm_arr,
    _norming_coords,
    _sign,
    _witness_jsonable,
    operator_norm,
)

__all__ = [
    "SummingEstimate",
    "partial_sum_operator",
    "summing_norm_estimate",
    "weak_summing_norm",
    "weak_summing_norm_predual",
]

# enumeration caps: one-shot certifications may enumerate 2^16 sign vectors,
# in-loop constraint evaluations stay smaller
ENUM_CAP = 16
LOOP_ENUM_CAP = 10


@dataclass
class SummingEstimate:
    """Value plus certification flag; witness reproduces value to 1e-9."""

    value: float
    certified: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"value": self.value, "certified": self.certified}
        if self.witness is not None:
            out["witness"] = _witness_jsonable(self.witness)
        return out


@lru_cache(maxsize=32)
def _sign_matrix(k: int) -> np.ndarray:
    """All 2^k sign vectors as rows, deterministic order."""
    if k > 20:
        raise InputError("sign enumeration capped at 2^20")
    out = np.empty((2**k, k))
    for j in range(k):
        pattern = np.repeat(np.array([1.0, -1.0]), 2**j)
        out[:, j] = np.tile(pattern, 2 ** (k - j - 1))
    return out


def _aggregate(z: np.ndarray, pf: float) -> float:
    az = np.abs(z)
    if pf == np.inf:
        return float(az.max())
    if pf == 1.0:
        return float(az.sum())
    return float((az**pf).sum() ** (1.0 / pf))


def _pairings(coords: np.ndarray, lam: np.ndarray, w: np.ndarray) -> np.ndarray:
    # z_i = <x_i, lam> with the bilinear weighted pairing
    return coords @ (lam * w)


def mu_closed_form(pf, coords, w, r):
    """Exact weak p-summing value when a closed form applies, else None.

    Returns (value, dual ball witness coords).  The menu:
      * n = 1: the norm of the single entry;
      * p = inf: max entry norm, sup and max over the ball commute;
      * r = inf: the ball of L^1 has the scaled point masses as extreme
        points and the aggregate is convex, so a maximum over atoms;
      * r = 1, real data: sign-vector enumeration over the sup-ball;
      * p = 2, r = 2: top singular value of the weight-scaled matrix;
      * p = 1, real data: aggregate = max over entry signs of the norm
        of the signed sum, each term evaluated exactly.
    """
    n, m = coords.shape
    real = not np.iscomplexobj(coords)

    if n == 1:
        v = _norm_arr(coords[0], w, r)
        return v, _norming_coords(coords[0], w, r)

    if pf == np.inf:
        norms = [_norm_arr(coords[i], w, r) for i in range(n)]
        i = int(np.argmax(norms))
        return float(norms[i]), _norming_coords(coords[i], w, r)

    if r.is_inf:
        per_atom = (np.abs(coords) ** pf).sum(axis=0) ** (1.0 / pf)
        t = int(np.argmax(per_atom))
        lam = np.zeros(m)
        lam[t] = 1.0 / w[t]
        return float(per_atom[t]), lam

    if float(r) == 1.0 and real and m <= ENUM_CAP:
        S = _sign_matrix(m)
        Z = (coords * w[None, :]) @ S.T  # (n, 2^m)
        vals = (np.abs(Z) ** pf).sum(axis=0) ** (1.0 / pf)
        k = int(np.argmax(vals))
        return float(vals[k]), S[k].copy()

    if pf == 2.0 and float(r) == 2.0:
        G = coords * np.sqrt(w)[None, :]
        _, svals, vh = np.linalg.svd(G)
        phi = vh[0].conj()
        return float(svals[0]), phi / np.sqrt(w)

    if pf == 1.0 and real and n <= ENUM_CAP:
        S = _sign_matrix(n)
        sums = S @ coords  # (2^n, m)
        vals = np.array([_norm_arr(row, w, r) for row in sums])
        k = int(np.argmax(vals))
        return float(vals[k]), _norming_coords(sums[k], w, r)

    return None


def mu_normalizer(pf, coords, w, r):
    """Exact-or-upper weak p-summing value, safe as a denominator.

    Returns (value, exact flag).  Exact when the closed-form menu applies;
    otherwise the minimum of the sum aggregate of entry norms and, for real
    data, the sign-enumeration value at p = 1 (which dominates every p).
    """
    closed = mu_closed_form(pf, coords, w, r)
    if closed is not None:
        return closed[0], True
    n = coords.shape[0]
    norms = np.array([_norm_arr(coords[i], w, r) for i in range(n)])
    upper = _aggregate(norms, pf)
    if not np.iscomplexobj(coords) and n <= ENUM_CAP:
        S = _sign_matrix(n)
        sums = S @ coords
        mu1 = max(_norm_arr(row, w, r) for row in sums)
        upper = min(upper, float(mu1))
    return float(upper), False


def _loop_normalizer_code(pf, w, r, real, n, m):
    """Kernel constraint code and data for in-loop normalization."""
    s = r.conjugate()  # exponent of the ball being supped over
    if s == Exponent(1):
        return _kernels_py.NORM_POINT, 0.0, None
    if s.is_inf and real and m <= LOOP_ENUM_CAP:
        return _kernels_py.NORM_SIGNS, 0.0, _sign_matrix(m)
    if not s.is_inf and pf == 2.0 and float(s) == 2.0:
        return _kernels_py.NORM_FROB, 0.0, None
    signs = _sign_matrix(n) if real and n <= LOOP_ENUM_CAP else None
    return _kernels_py.NORM_UPPER, float(r), signs


def weak_summing_norm(p, t: VectorTuple, budget: OptimizerBudget | None = None) -> SummingEstimate:
    """Weak p-summing value of a tuple; certified when a closed form fires.

    The fallback identifies the value with the operator norm of the map
    sending the i-th unit vector of l^p' to x_i, runs the shared ascent,
    and converts the best domain vector into a dual-ball witness.
    """
    budget = budget or DEFAULT_BUDGET
    pf = float(Exponent(p))
    coords, w, r = t.coords, t.space.weights, t.p
    if not coords.any():
        return SummingEstimate(0.0, True, {"kind": "dual_vector", "coords": np.zeros(t.space.size)})

    closed = mu_closed_form(pf, coords, w, r)
    if closed is not None:
        val, lam = closed
        z = _pairings(coords, lam, w)
        return SummingEstimate(
            _aggregate(z, pf), True, {"kind": "dual_vector", "coords": lam}
        )

    # operator route: columns of the matrix are the tuple entries
    dom = FiniteMeasureSpace.unit(t.n)
    A = LinearMap(dom, Exponent(p).conjugate(), t.space, r, coords.T)
    est = operator_norm(A, budget)
    u = np.asarray(est.witness["coords"])
    y = coords.T @ u
    cands = [_norming_coords(y, w, r)]
    cands.extend(_norming_coords(coords[i], w, r) for i in range(t.n))
    best_val, best_lam = -1.0, cands[0]
    for lam in cands:
        val = _aggregate(_pairings(coords, lam, w), pf)
        if val > best_val:
            best_val, best_lam = val, lam
    return SummingEstimate(
        best_val, est.certified, {"kind": "dual_vector", "coords": best_lam}
    )


def weak_summing_norm_predual(
    p, t: VectorTuple, budget: OptimizerBudget | None = None
) -> SummingEstimate:
    """Independent route: direct supremum over the pairing ball.

    Alternating maximization entirely inside the ball of L^r', seeded from
    norming functionals, point masses and random directions.  Never
    certified; serves as a cross-check oracle for weak_summing_norm.
    """
    budget = budget or DEFAULT_BUDGET
    pf = float(Exponent(p))
    coords, w, r = t.coords, t.space.weights, t.p
    if not coords.any():
        return SummingEstimate(0.0, False, {"kind": "dual_vector", "coords": np.zeros(t.space.size)})
    n, m = coords.shape
    rp = r.conjugate()
    real = not np.iscomplexobj(coords)
    rng = budget.rng(0x9D0A1)

    starts = [_norming_coords(coords[i], w, r) for i in range(n)]
    for tt in range(min(m, 4)):
        e = np.zeros(m)
        e[tt] = 1.0
        starts.append(e)
    while len(starts) < max(budget.restarts // 2, n + 4):
        g = rng.standard_normal(m)
        if not real:
            g = g + 1j * rng.standard_normal(m)
        starts.append(g)

    best_val, best_lam = -1.0, starts[0]
    for lam in starts:
        nl = _norm_arr(lam, w, rp)
        if nl == 0:
            continue
        lam = lam / nl
        prev = -1.0
        for _ in range(budget.max_iter):
            z = _pairings(coords, lam, w)
            val = _aggregate(z, pf)
            if val > best_val:
                best_val, best_lam = val, lam.copy()
            if val == 0 or val - prev <= budget.step_tol * max(1.0, val):
                break
            prev = val
            az = np.abs(z)
            if pf == np.inf:
                c = np.zeros_like(z)
                i = int(np.argmax(az))
                c[i] = np.conj(_sign(z[i]))
            elif pf == 1.0:
                c = np.conj(_sign(z))
            else:
                c = np.conj(_sign(z)) * az ** (pf - 1.0)
            u = c @ coords  # steepest pairing direction, conjugated below
            u = np.conj(u)
            lam = _norming_coords(u, w, r)
    return SummingEstimate(
        best_val, False, {"kind": "dual_vector", "coords": best_lam}
    )


# ---------------------------------------------------------------------------
# pairing ascent against a weakly bounded dual tuple


def greedy_disjoint_dual(coords: np.ndarray) -> np.ndarray:
    # atom t feeds the entry with the largest modulus there (ties: lowest i)
    assign = np.argmax(np.abs(coords), axis=0)
    mask = assign[None, :] == np.arange(coords.shape[0])[:, None]
    return np.conj(_sign(coords)) * mask


def pair_aggregate(coords: np.ndarray, L: np.ndarray, w: np.ndarray, qf: float) -> float:
    z = (coords * L) @ w
    return _aggregate(z, qf)


def pq_dual_ascent(pf, qf, coords, w, r, budget, extra_seeds=()):
    """Seeded ascent for the q-aggregate of pairings of a tuple in L^r(w)
    against a dual tuple with weak p-summing value at most one.

    Returns (value, normalized dual tuple).  The value is a sound lower
    bound: the final constraint normalizer is exact or an upper bound.
    """
    coords = np.asarray(coords)
    n, m = coords.shape
    r = Exponent(r)
    rp = r.conjugate()
    real = not np.iscomplexobj(coords)
    code, sprime, signs = _loop_normalizer_code(pf, w, rp, real, n, m)

    seeds = [greedy_disjoint_dual(coords)]
    seeds.append(np.vstack([_norming_coords(coords[i], w, r) for i in range(n)]))
    for i in range(min(n, 16)):
        # single-entry seed: guarantees the value dominates each entry norm
        single = np.zeros_like(coords)
        single[i] = _norming_coords(coords[i], w, r)
        seeds.append(single)
    # polar seeds: under the spectral constraint that the weak 2-value
    # takes on an L^2 base, the best dual tuple for the plain sum of
    # pairings is the polar factor of the weighted entry stack, and
    # reweighting rows by the aggregate gradient is a fixed-point
    # refinement.  Kept for every exponent pattern: re-scoring is exact.
    try:
        sw = np.sqrt(w)
        stack = coords * sw[None, :]
        U, _, Vh = np.linalg.svd(stack, full_matrices=False)
        pol = np.conj(U @ Vh) / sw[None, :]
        seeds.append(pol)
        if np.isfinite(qf) and qf != 1.0:
            for _ in range(12):
                z = np.abs((coords * pol) @ w)
                zm = float(z.max())
                if zm <= 0:
                    break
                d = (z / zm) ** (qf - 1.0)
                U, _, Vh = np.linalg.svd(stack * d[:, None], full_matrices=False)
                pol = np.conj(U @ Vh) / sw[None, :]
                seeds.append(pol)
    except np.linalg.LinAlgError:
        pass
    for s in extra_seeds:
        seeds.append(np.asarray(s))
    rng = budget.rng(0xB0057)
    while len(seeds) < budget.restarts:
        g = rng.standard_normal((n, m))
        if not real:
            g = g + 1j * rng.standard_normal((n, m))
        seeds.append(g)
    dt = np.float64 if real else np.complex128
    L0 = np.array([np.asarray(s, dtype=dt) for s in seeds])

    _, _, all_L = _backend.kernels().pq_ascent(
        coords, w, pf, qf, code, float(sprime), L0, signs,
        budget.max_iter, budget.step_tol,
    )
    best_val, best_L = 0.0, np.zeros((n, m), dtype=dt)
    # seeds are re-scored exactly too: the in-loop normalizer may be an
    # upper bound, so per-restart winners alone could drop a good start
    for L in list(L0) + list(all_L):
        L = np.asarray(L)
        if not L.any():
            continue
        mu, _ = mu_normalizer(pf, L, w, rp)
        if mu <= 0 or not np.isfinite(mu):
            continue
        val = pair_aggregate(coords, L, w, qf) / mu
        if val > best_val:
            best_val, best_L = val, L / mu
    return best_val, best_L


# ---------------------------------------------------------------------------
# summing norm of an operator


def _image_aggregate(M, L, vcod, b, qf):
    bexp = Exponent(b)
    Y = L @ M.T
    ns = np.array([_norm_arr(Y[i], vcod, bexp) for i in range(L.shape[0])])
    return _aggregate(ns, qf), Y, ns


def _image_ascent(M, wdom, vcod, bexp, qf, pf, code, sprime, signs, L0, max_iter, tol):
    """Projected gradient ascent for the image-aggregate objective.

    Same skeleton as the pairing kernel, but the per-entry score is the
    codomain norm of the image; runs in numpy on both backends since the
    summing estimate is uncertified by design.  Returns the per-restart
    tuples so the caller can re-rank them under the exact constraint.
    """
    best_obj, best_L = -1.0, np.array(L0[0])
    all_L = np.zeros_like(np.asarray(L0))
    bf = float(bexp)
    for r in range(L0.shape[0]):
        L = np.array(L0[r])
        mu = _kernels_py.mu_hat(L, wdom, pf, code, sprime, signs)
        if mu == 0 or not np.isfinite(mu):
            continue
        L = L / mu
        obj, Y, ns = _image_aggregate(M, L, vcod, bf, qf)
        r_obj = obj
        all_L[r] = L
        if obj > best_obj:
            best_obj, best_L = obj, L.copy()
        eta = 0.5
        for _ in range(max_iter):
            G = np.empty_like(L)
            for i in range(L.shape[0]):
                coef = 1.0 if qf == 1.0 else (ns[i] ** (qf - 1.0) if ns[i] > 0 else 0.0)
                nu = _norming_coords(Y[i], vcod, bexp)
                G[i] = coef * np.conj(M.T @ (nu * vcod))
            gn = float(np.linalg.norm(G))
            if gn == 0:
                break
            Lc = L + (eta * max(float(np.linalg.norm(L)), 1e-30) / gn) * G
            mu = _kernels_py.mu_hat(Lc, wdom, pf, code, sprime, signs)
            if mu == 0 or not np.isfinite(mu):
                break
            Lc = Lc / mu
            objc, Yc, nsc = _image_aggregate(M, Lc, vcod, bf, qf)
            if objc > obj:
                gain = objc - obj
                L, Y, ns, obj = Lc, Yc, nsc, objc
                if obj > r_obj:
                    r_obj = obj
                    all_L[r] = L
                if obj > best_obj:
                    best_obj, best_L = obj, L.copy()
                eta = min(eta * 1.5, 4.0)
                if gain <= tol * max(1.0, obj):
                    break
            else:
                eta *= 0.5
                if eta < 1e-7:
                    break
    return best_obj, best_L, all_L


def summing_norm_estimate(
    q,
    p,
    T: LinearMap,
    tuple_cap: int | None = None,
    budget: OptimizerBudget | None = None,
) -> SummingEstimate:
    """Lower estimate of the (q, p) summing norm of T.

    Maximizes the ratio of the q-aggregate of image norms to the weak
    p-summing value over tuples of length 1..tuple_cap in the domain.
    Denominators are exact-or-upper, so the reported ratio is a genuine
    lower bound; appending a zero entry keeps both sides fixed, which makes
    the estimate monotone in tuple_cap.
    """
    budget = budget or DEFAULT_BUDGET
    qf, pf = float(Exponent(q)), float(Exponent(p))
    M = T.matrix
    wdom = T.domain_space.weights
    vcod = T.codomain_space.weights
    r = T.domain_p
    bf = float(T.codomain_p)
    m = T.domain_space.size
    cap = tuple_cap if tuple_cap is not None else m
    if cap < 1:
        raise InputError("tuple_cap must be at least 1")
    if not M.any():
        return SummingEstimate(0.0, True, {"kind": "zero_map"})

    real = not np.iscomplexobj(M)
    rng = budget.rng(0x51E57)
    # strongest single columns first
    col_scores = [
        _norm_arr(M[:, j], vcod, T.codomain_p) / _norm_arr(np.eye(m)[j], wdom, r)
        for j in range(m)
    ]
    order = np.argsort(col_scores)[::-1]

    # dual-route seed: when the adjoint has an l^1 domain, the same
    # supremum is a pairing problem on the adjoint's columns, and its
    # dual-tuple witness already lives among our domain tuples
    adj_seed = None
    R = T.adjoint()
    if R.domain_p == ONE:
        C = np.array([c.coords for c in R.columns()])
        _, aL = pq_dual_ascent(pf, qf, C, wdom, R.codomain_p, budget)
        if aL.any():
            if aL.shape[0] > cap:
                _, _, rows = _image_aggregate(M, aL, vcod, bf, qf)
                keep = np.sort(np.argsort(rows)[::-1][:cap])
                aL = aL[keep]
            adj_seed = aL

    best_val, best_L, by_len = 0.0, None, []
    prev_best_L = None
    for k in range(1, cap + 1):
        code, sprime, signs = _loop_normalizer_code(pf, wdom, r, real, k, m)
        seeds = []
        pm = np.zeros((k, m))
        for i in range(k):
            pm[i, order[i % m]] = 1.0
        seeds.append(pm)
        if adj_seed is not None and adj_seed.shape[0] == k:
            seeds.append(adj_seed)
        if prev_best_L is not None:
            ext = np.vstack([prev_best_L, np.zeros((1, m), dtype=prev_best_L.dtype)])
            seeds.append(ext)
            rep = np.vstack([prev_best_L, prev_best_L[-1:]])
            seeds.append(rep)
        n_rand = max(budget.restarts // 2 - len(seeds), 4)
        for _ in range(n_rand):
            g = rng.standard_normal((k, m))
            if not real:
                g = g + 1j * rng.standard_normal((k, m))
            seeds.append(g)
        dt = np.complex128 if not real else np.float64
        L0 = np.array([np.asarray(s, dtype=dt) for s in seeds])
        _, _, all_L = _image_ascent(
            M, wdom, vcod, T.codomain_p, qf, pf, code, sprime, signs, L0,
            budget.max_iter, budget.step_tol,
        )
        # re-rank every restart and every raw seed under the exact-or-upper
        # constraint: the in-loop normalizer may overvalue mu and bury a
        # good start
        val_k, L_k = 0.0, None
        for L in list(L0) + list(all_L):
            L = np.asarray(L)
            if not L.any():
                continue
            mu, _ = mu_normalizer(pf, L, wdom, r)
            if mu <= 0 or not np.isfinite(mu):
                continue
            agg, _, _ = _image_aggregate(M, L, vcod, bf, qf)
            if agg / mu > val_k:
                val_k, L_k = agg / mu, L / mu
        if val_k > best_val:
            best_val, best_L = val_k, L_k
        by_len.append(best_val)
        if L_k is not None:
            prev_best_L = L_k

    witness = {
        "kind": "domain_tuple",
        "coords": best_L if best_L is not None else np.zeros((1, m)),
        "value_by_length": by_len,
    }
    return SummingEstimate(best_val, False, witness)


def partial_sum_operator(n: int) -> LinearMap:
    """Cumulative-sum demo operator from l^1_n to l^inf_n.

    Column j is the indicator of {0..j}, so the image of the j-th point
    mass is the j-th partial-sum pattern.
    """
    if n < 1:
        raise InputError("n must be positive")
    M = np.triu(np.ones((n, n)))
    space = FiniteMeasureSpace.unit(n)
    return LinearMap(space, 1, space, "inf", M)
