"""Numpy implementations of the two ascent kernels.

The compiled extension in _kernels.pyx mirrors these routines exactly; the
backend module picks whichever is importable.  Both backends are
deterministic functions of their inputs, so results agree to rounding.

Kernel 1, power_ascent: multi-start alternating maximization of
``|| M x ||_(b,v)`` over the unit ball of ``l^a(w)``.  Each step pairs the
current image with its norming functional, pulls that back through the
bilinear adjoint, and moves to the domain vector norming the pullback, so
the objective never decreases.

Kernel 2, pq_ascent: projected gradient ascent for
``(sum_i |<x_i, l_i>|^q)^(1/q)`` over dual tuples ``l`` with aggregate
constraint mu_p(l) <= 1.  The in-loop constraint value is exact for the
closed-form codes and an upper bound otherwise, so the normalized objective
is always a valid lower bound for the constrained supremum.
"""

from __future__ import annotations

import numpy as np

# constraint evaluation codes shared with the compiled kernel
NORM_POINT = 0  # ball exponent 1: max over atoms of the p-aggregate
NORM_SIGNS = 1  # ball exponent inf, real data: enumerate sign vectors
NORM_FROB = 2  # p = 2 over an l^2 ball: Frobenius upper bound for sigma_max
NORM_UPPER = 3  # generic: min of sum-aggregate and real tuple-sign bounds


def _sign(z):
    a = np.abs(z)
    return np.where(a == 0, 0, z / np.where(a == 0, 1, a))


def _norm_w(x, w, p):
    a = np.abs(x)
    if p == np.inf:
        return float(a.max())
    if p == 1.0:
        return float(np.dot(a, w))
    if p == 2.0:
        return float(np.sqrt(np.dot(a * a, w)))
    return float(np.dot(a**p, w) ** (1.0 / p))


def _norming(y, v, b, val):
    # functional of unit dual norm with <y, lam> = ||y||
    if b == np.inf:
        t = int(np.argmax(np.abs(y)))
        lam = np.zeros_like(y)
        lam[t] = np.conj(_sign(y[t])) / v[t]
        return lam
    if b == 1.0:
        return np.conj(_sign(y))
    return np.conj(_sign(y)) * (np.abs(y) / val) ** (b - 1.0)


def _next_x(g, w, a):
    if a == np.inf:
        x = np.conj(_sign(g))
        x[np.abs(g) == 0] = 1.0
        return x
    if a == 1.0:
        j = int(np.argmax(np.abs(g)))
        if abs(g[j]) == 0:
            return None
        x = np.zeros_like(g)
        x[j] = np.conj(_sign(g[j])) / w[j]
        return x
    ap = a / (a - 1.0)
    x = np.conj(_sign(g)) * np.abs(g) ** (ap - 1.0)
    nx = _norm_w(x, w, a)
    if nx == 0:
        return None
    return x / nx


def power_ascent(M, w, v, a, b, X0, max_iter, tol):
    """Best (value, domain vector) found over all restarts in X0."""
    M = np.asarray(M)
    R = X0.shape[0]
    best_val = -1.0
    best_x = np.array(X0[0])
    for r in range(R):
        x = np.array(X0[r])
        nx = _norm_w(x, w, a)
        if nx == 0:
            continue
        x = x / nx
        prev = -1.0
        stall = 0
        for _ in range(max_iter):
            y = M @ x
            val = _norm_w(y, v, b)
            if val > best_val:
                best_val = val
                best_x = x.copy()
            if val == 0:
                break
            if val - prev <= tol * max(1.0, val):
                stall += 1
                if stall >= 2:
                    break
            else:
                stall = 0
            prev = val
            lam = _norming(y, v, b, val)
            g = (M.T @ (lam * v)) / w
            x = _next_x(g, w, a)
            if x is None:
                break
    return best_val, best_x


def mu_hat(L, w, p, norm_code, sprime, signs):
    """Constraint value used inside pq_ascent; exact or an upper bound."""
    if norm_code == NORM_POINT:
        return float(np.max((np.abs(L) ** p).sum(axis=0) ** (1.0 / p)))
    if norm_code == NORM_SIGNS:
        V = (L * w[None, :]) @ signs.T
        return float(np.max((np.abs(V) ** p).sum(axis=0) ** (1.0 / p)))
    if norm_code == NORM_FROB:
        return float(np.sqrt(((np.abs(L) ** 2) * w[None, :]).sum()))
    row = np.array([_norm_w(L[i], w, sprime) for i in range(L.shape[0])])
    upper = float((row**p).sum() ** (1.0 / p))
    if signs is not None and signs.size:
        V = signs @ L
        mu1 = max(_norm_w(V[k], w, sprime) for k in range(V.shape[0]))
        upper = min(upper, float(mu1))
    return upper


def _pq_obj(X, L, w, q):
    z = (X * L) @ w
    az = np.abs(z)
    if q == 1.0:
        return float(az.sum()), z
    return float((az**q).sum() ** (1.0 / q)), z


def pq_ascent(X, w, p, q, norm_code, sprime, L0, signs, max_iter, tol):
    """Run the ascent from every start in L0.

    Returns (best objective, best tuple, per-restart tuples).  The in-loop
    constraint may be a strict upper bound, in which case the in-loop
    objective cannot rank restarts faithfully; callers re-rank the
    per-restart tuples under the exact constraint.
    """
    X = np.asarray(X)
    R = L0.shape[0]
    best_obj = -1.0
    best_L = np.array(L0[0])
    all_L = np.zeros_like(np.asarray(L0))
    for r in range(R):
        L = np.array(L0[r])
        mu = mu_hat(L, w, p, norm_code, sprime, signs)
        if mu == 0 or not np.isfinite(mu):
            continue
        L = L / mu
        obj, z = _pq_obj(X, L, w, q)
        r_obj = obj
        all_L[r] = L
        if obj > best_obj:
            best_obj = obj
            best_L = L.copy()
        eta = 0.5
        for _ in range(max_iter):
            az = np.abs(z)
            coef = _sign(z) if q == 1.0 else az ** (q - 1.0) * _sign(z)
            G = coef[:, None] * np.conj(X) * w[None, :]
            gn = float(np.linalg.norm(G))
            if gn == 0:
                break
            ln = float(np.linalg.norm(L))
            Lc = L + (eta * max(ln, 1e-30) / gn) * G
            mu = mu_hat(Lc, w, p, norm_code, sprime, signs)
            if mu == 0 or not np.isfinite(mu):
                break
            Lc = Lc / mu
            objc, zc = _pq_obj(X, Lc, w, q)
            if objc > obj:
                gain = objc - obj
                L, z, obj = Lc, zc, objc
                if obj > r_obj:
                    r_obj = obj
                    all_L[r] = L
                if obj > best_obj:
                    best_obj = obj
                    best_L = L.copy()
                eta = min(eta * 1.5, 4.0)
                if gain <= tol * max(1.0, obj):
                    break
            else:
                eta *= 0.5
                if eta < 1e-7:
                    break
    return best_obj, best_L, all_L
