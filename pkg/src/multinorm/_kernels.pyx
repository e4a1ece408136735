# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled ascent kernels; semantics mirror _kernels_py line for line.

Real and complex data share one code path through a fused scalar type.
The Python-visible wrappers harmonize dtypes and dispatch.
"""

import numpy as np

from libc.math cimport INFINITY, fabs, fmax, pow, sqrt

ctypedef double complex dcomplex

ctypedef fused scalar:
    double
    dcomplex

NORM_POINT = 0
NORM_SIGNS = 1
NORM_FROB = 2
NORM_UPPER = 3


cdef inline double _abs2(scalar z) noexcept nogil:
    if scalar is double:
        return z * z
    else:
        return z.real * z.real + z.imag * z.imag


cdef inline double _absv(scalar z) noexcept nogil:
    if scalar is double:
        return fabs(z)
    else:
        return sqrt(z.real * z.real + z.imag * z.imag)


cdef inline scalar _conj(scalar z) noexcept nogil:
    if scalar is double:
        return z
    else:
        return z.real - 1j * z.imag


cdef inline scalar _sgn(scalar z) noexcept nogil:
    cdef double a = _absv(z)
    if a == 0.0:
        return 0
    return z / a


cdef double _norm_w(const scalar[::1] x, const double[::1] w, double p) noexcept nogil:
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double acc = 0.0, a
    if p == INFINITY:
        for i in range(n):
            a = _absv(x[i])
            if a > acc:
                acc = a
        return acc
    if p == 1.0:
        for i in range(n):
            acc += _absv(x[i]) * w[i]
        return acc
    if p == 2.0:
        for i in range(n):
            acc += _abs2(x[i]) * w[i]
        return sqrt(acc)
    for i in range(n):
        acc += pow(_absv(x[i]), p) * w[i]
    return pow(acc, 1.0 / p)


# ---------------------------------------------------------------------------
# power ascent


cdef _power_impl(const scalar[:, ::1] M, const double[::1] w, const double[::1] v,
                 double a, double b, const scalar[:, ::1] X0,
                 int max_iter, double tol):
    cdef Py_ssize_t m = M.shape[0], n = M.shape[1], R = X0.shape[0]
    cdef Py_ssize_t r, it, i, j, t, jmax
    if scalar is double:
        dt = np.float64
    else:
        dt = np.complex128
    x_arr = np.empty(n, dtype=dt)
    y_arr = np.empty(m, dtype=dt)
    lam_arr = np.empty(m, dtype=dt)
    g_arr = np.empty(n, dtype=dt)
    best_arr = np.zeros(n, dtype=dt)
    cdef scalar[::1] x = x_arr
    cdef scalar[::1] y = y_arr
    cdef scalar[::1] lam = lam_arr
    cdef scalar[::1] g = g_arr
    cdef scalar[::1] best = best_arr
    cdef double best_val = -1.0, nx, val, prev, gmax, ga, ap, gn
    cdef int stall, ok
    cdef scalar acc

    for r in range(R):
        for j in range(n):
            x[j] = X0[r, j]
        nx = _norm_w(x, w, a)
        if nx == 0.0:
            continue
        for j in range(n):
            x[j] = x[j] / nx
        prev = -1.0
        stall = 0
        for it in range(max_iter):
            for i in range(m):
                acc = 0
                for j in range(n):
                    acc = acc + M[i, j] * x[j]
                y[i] = acc
            val = _norm_w(y, v, b)
            if val > best_val:
                best_val = val
                for j in range(n):
                    best[j] = x[j]
            if val == 0.0:
                break
            if val - prev <= tol * fmax(1.0, val):
                stall += 1
                if stall >= 2:
                    break
            else:
                stall = 0
            prev = val
            # norming functional of y in l^b(v)
            if b == INFINITY:
                t = 0
                for i in range(1, m):
                    if _absv(y[i]) > _absv(y[t]):
                        t = i
                for i in range(m):
                    lam[i] = 0
                lam[t] = _conj(_sgn(y[t])) / v[t]
            elif b == 1.0:
                for i in range(m):
                    lam[i] = _conj(_sgn(y[i]))
            else:
                for i in range(m):
                    lam[i] = _conj(_sgn(y[i])) * pow(_absv(y[i]) / val, b - 1.0)
            # bilinear adjoint pullback
            for j in range(n):
                acc = 0
                for i in range(m):
                    acc = acc + M[i, j] * (lam[i] * v[i])
                g[j] = acc / w[j]
            # next domain vector
            ok = 1
            if a == INFINITY:
                for j in range(n):
                    if _absv(g[j]) == 0.0:
                        x[j] = 1
                    else:
                        x[j] = _conj(_sgn(g[j]))
            elif a == 1.0:
                jmax = 0
                for j in range(1, n):
                    if _absv(g[j]) > _absv(g[jmax]):
                        jmax = j
                if _absv(g[jmax]) == 0.0:
                    ok = 0
                else:
                    for j in range(n):
                        x[j] = 0
                    x[jmax] = _conj(_sgn(g[jmax])) / w[jmax]
            else:
                ap = a / (a - 1.0)
                for j in range(n):
                    ga = _absv(g[j])
                    if ga == 0.0:
                        x[j] = 0
                    else:
                        x[j] = _conj(_sgn(g[j])) * pow(ga, ap - 1.0)
                gn = _norm_w(x, w, a)
                if gn == 0.0:
                    ok = 0
                else:
                    for j in range(n):
                        x[j] = x[j] / gn
            if not ok:
                break
    return best_val, best_arr


def power_ascent(M, w, v, a, b, X0, max_iter, tol):
    """Best (value, domain vector) found over all restarts in X0."""
    w = np.ascontiguousarray(w, dtype=np.float64)
    v = np.ascontiguousarray(v, dtype=np.float64)
    cdef const double[::1] wv = w
    cdef const double[::1] vv = v
    cdef const double complex[:, ::1] Mc, Xc
    cdef const double[:, ::1] Mr, Xr
    if np.iscomplexobj(M) or np.iscomplexobj(X0):
        Mc = np.ascontiguousarray(M, dtype=np.complex128)
        Xc = np.ascontiguousarray(X0, dtype=np.complex128)
        return _power_impl[dcomplex](Mc, wv, vv, float(a), float(b), Xc, int(max_iter), float(tol))
    Mr = np.ascontiguousarray(M, dtype=np.float64)
    Xr = np.ascontiguousarray(X0, dtype=np.float64)
    return _power_impl[double](Mr, wv, vv, float(a), float(b), Xr, int(max_iter), float(tol))


# ---------------------------------------------------------------------------
# constrained tuple-pairing ascent


cdef double _mu_hat_impl(const scalar[:, ::1] L, const double[::1] w, double p, int code,
                         double sprime, const double[:, ::1] signs, bint have_signs,
                         scalar[::1] vrow) noexcept nogil:
    cdef Py_ssize_t n = L.shape[0], m = L.shape[1]
    cdef Py_ssize_t i, t, k, K
    cdef double acc, best, upper, mu1, rn
    cdef scalar z
    if code == 0:
        best = 0.0
        for t in range(m):
            acc = 0.0
            for i in range(n):
                acc += pow(_absv(L[i, t]), p)
            if acc > best:
                best = acc
        return pow(best, 1.0 / p)
    if code == 1:
        K = signs.shape[0]
        best = 0.0
        for k in range(K):
            acc = 0.0
            for i in range(n):
                z = 0
                for t in range(m):
                    z = z + L[i, t] * (w[t] * signs[k, t])
                acc += pow(_absv(z), p)
            if acc > best:
                best = acc
        return pow(best, 1.0 / p)
    if code == 2:
        acc = 0.0
        for t in range(m):
            for i in range(n):
                acc += _abs2(L[i, t]) * w[t]
        return sqrt(acc)
    # generic upper bound
    acc = 0.0
    for i in range(n):
        rn = _norm_w(L[i], w, sprime)
        acc += pow(rn, p)
    upper = pow(acc, 1.0 / p)
    if have_signs:
        K = signs.shape[0]
        mu1 = 0.0
        for k in range(K):
            for t in range(m):
                z = 0
                for i in range(n):
                    z = z + L[i, t] * signs[k, i]
                vrow[t] = z
            rn = _norm_w(vrow, w, sprime)
            if rn > mu1:
                mu1 = rn
        if mu1 < upper:
            upper = mu1
    return upper


cdef double _pq_obj_impl(const scalar[:, ::1] X, const scalar[:, ::1] L, const double[::1] w,
                         double q, scalar[::1] z) noexcept nogil:
    cdef Py_ssize_t n = X.shape[0], m = X.shape[1]
    cdef Py_ssize_t i, t
    cdef scalar acc
    cdef double obj = 0.0
    for i in range(n):
        acc = 0
        for t in range(m):
            acc = acc + X[i, t] * L[i, t] * w[t]
        z[i] = acc
        if q == 1.0:
            obj += _absv(acc)
        else:
            obj += pow(_absv(acc), q)
    if q == 1.0:
        return obj
    return pow(obj, 1.0 / q)


cdef _pq_impl(const scalar[:, ::1] X, const double[::1] w, double p, double q, int code,
              double sprime, const scalar[:, :, ::1] L0, const double[:, ::1] signs,
              bint have_signs, int max_iter, double tol):
    cdef Py_ssize_t n = X.shape[0], m = X.shape[1], R = L0.shape[0]
    cdef Py_ssize_t r, it, i, t
    if scalar is double:
        dt = np.float64
    else:
        dt = np.complex128
    L_arr = np.empty((n, m), dtype=dt)
    Lc_arr = np.empty((n, m), dtype=dt)
    G_arr = np.empty((n, m), dtype=dt)
    z_arr = np.empty(n, dtype=dt)
    zc_arr = np.empty(n, dtype=dt)
    vrow_arr = np.empty(m, dtype=dt)
    best_arr = np.zeros((n, m), dtype=dt)
    all_arr = np.zeros((R, n, m), dtype=dt)
    cdef scalar[:, ::1] L = L_arr
    cdef scalar[:, ::1] Lc = Lc_arr
    cdef scalar[:, ::1] G = G_arr
    cdef scalar[::1] z = z_arr
    cdef scalar[::1] zc = zc_arr
    cdef scalar[::1] vrow = vrow_arr
    cdef scalar[:, ::1] best = best_arr
    cdef scalar[:, :, ::1] alls = all_arr
    cdef double best_obj = -1.0, mu, obj, objc, eta, gn, ln, fac, gain, az, r_obj
    cdef scalar coef

    for r in range(R):
        for i in range(n):
            for t in range(m):
                L[i, t] = L0[r, i, t]
        mu = _mu_hat_impl(L, w, p, code, sprime, signs, have_signs, vrow)
        if mu == 0.0 or mu != mu or mu == INFINITY:
            continue
        for i in range(n):
            for t in range(m):
                L[i, t] = L[i, t] / mu
        obj = _pq_obj_impl(X, L, w, q, z)
        r_obj = obj
        for i in range(n):
            for t in range(m):
                alls[r, i, t] = L[i, t]
        if obj > best_obj:
            best_obj = obj
            for i in range(n):
                for t in range(m):
                    best[i, t] = L[i, t]
        eta = 0.5
        for it in range(max_iter):
            gn = 0.0
            ln = 0.0
            for i in range(n):
                az = _absv(z[i])
                if q == 1.0:
                    coef = _sgn(z[i])
                elif az == 0.0:
                    coef = 0
                else:
                    coef = _sgn(z[i]) * pow(az, q - 1.0)
                for t in range(m):
                    G[i, t] = coef * _conj(X[i, t]) * w[t]
                    gn += _abs2(G[i, t])
                    ln += _abs2(L[i, t])
            gn = sqrt(gn)
            ln = sqrt(ln)
            if gn == 0.0:
                break
            fac = eta * fmax(ln, 1e-30) / gn
            for i in range(n):
                for t in range(m):
                    Lc[i, t] = L[i, t] + fac * G[i, t]
            mu = _mu_hat_impl(Lc, w, p, code, sprime, signs, have_signs, vrow)
            if mu == 0.0 or mu != mu or mu == INFINITY:
                break
            for i in range(n):
                for t in range(m):
                    Lc[i, t] = Lc[i, t] / mu
            objc = _pq_obj_impl(X, Lc, w, q, zc)
            if objc > obj:
                gain = objc - obj
                for i in range(n):
                    z[i] = zc[i]
                    for t in range(m):
                        L[i, t] = Lc[i, t]
                obj = objc
                if obj > r_obj:
                    r_obj = obj
                    for i in range(n):
                        for t in range(m):
                            alls[r, i, t] = L[i, t]
                if obj > best_obj:
                    best_obj = obj
                    for i in range(n):
                        for t in range(m):
                            best[i, t] = L[i, t]
                eta = eta * 1.5
                if eta > 4.0:
                    eta = 4.0
                if gain <= tol * fmax(1.0, obj):
                    break
            else:
                eta = eta * 0.5
                if eta < 1e-7:
                    break
    return best_obj, best_arr, all_arr


def mu_hat(L, w, p, norm_code, sprime, signs):
    """Constraint value used inside pq_ascent; exact or an upper bound."""
    w = np.ascontiguousarray(w, dtype=np.float64)
    cdef const double[::1] wv = w
    have = signs is not None and getattr(signs, "size", 0)
    sg = np.ascontiguousarray(signs if have else np.zeros((0, 0)), dtype=np.float64)
    cdef const double[:, ::1] sgv = sg
    cdef const double complex[:, ::1] Lc
    cdef double complex[::1] vc
    cdef const double[:, ::1] Lr
    cdef double[::1] vr
    if np.iscomplexobj(L):
        Lc = np.ascontiguousarray(L, dtype=np.complex128)
        vc = np.empty(Lc.shape[1], dtype=np.complex128)
        return _mu_hat_impl[dcomplex](Lc, wv, float(p), int(norm_code), float(sprime), sgv, bool(have), vc)
    Lr = np.ascontiguousarray(L, dtype=np.float64)
    vr = np.empty(Lr.shape[1], dtype=np.float64)
    return _mu_hat_impl[double](Lr, wv, float(p), int(norm_code), float(sprime), sgv, bool(have), vr)


def pq_ascent(X, w, p, q, norm_code, sprime, L0, signs, max_iter, tol):
    """Run the ascent from every start; also return per-restart tuples."""
    w = np.ascontiguousarray(w, dtype=np.float64)
    cdef const double[::1] wv = w
    have = signs is not None and getattr(signs, "size", 0)
    sg = np.ascontiguousarray(signs if have else np.zeros((0, 0)), dtype=np.float64)
    cdef const double[:, ::1] sgv = sg
    cdef const double complex[:, ::1] Xc
    cdef const double complex[:, :, ::1] L0c
    cdef const double[:, ::1] Xr
    cdef const double[:, :, ::1] L0r
    if np.iscomplexobj(X) or np.iscomplexobj(L0):
        Xc = np.ascontiguousarray(X, dtype=np.complex128)
        L0c = np.ascontiguousarray(L0, dtype=np.complex128)
        return _pq_impl[dcomplex](Xc, wv, float(p), float(q), int(norm_code), float(sprime),
                                  L0c, sgv, bool(have), int(max_iter), float(tol))
    Xr = np.ascontiguousarray(X, dtype=np.float64)
    L0r = np.ascontiguousarray(L0, dtype=np.float64)
    return _pq_impl[double](Xr, wv, float(p), float(q), int(norm_code), float(sprime),
                            L0r, sgv, bool(have), int(max_iter), float(tol))
