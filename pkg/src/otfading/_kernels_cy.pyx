# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same algorithms and schedules as ``_kernels_py``."""

import numpy as np

from libc.math cimport exp, log, sqrt, NAN

from .errors import AllocationError

ETA_LO = 1e-12
ETA_HI = 1e12
BISECT_ITERS = 200

cdef double _ETA_LO = 1e-12
cdef double _ETA_HI = 1e12
cdef int _BISECT_ITERS = 200
# near-tied pairs at huge budgets push the multiplier below ETA_LO; the
# starting bracket is widened by this log step until it pins the budget
cdef double _BRACKET_STEP = log(1e4)
cdef double _BRACKET_LIMIT = log(1e300)


def jacobi_sweeps(double complex[:, ::1] b, v, double tol, int max_sweeps):
    """In-place one-sided Jacobi on the columns of b; see _kernels_py."""
    cdef double complex[:, ::1] vv = None
    cdef bint has_v = v is not None
    if has_v:
        vv = v
    cdef Py_ssize_t p = b.shape[0]
    cdef Py_ssize_t q = b.shape[1]
    cdef Py_ssize_t i, j, k
    cdef int sweep
    cdef double alpha, beta, mag, tau, t, c, s
    cdef double complex g, omega, somega, somegac, x, y
    cdef bint rotated
    for sweep in range(1, max_sweeps + 1):
        rotated = False
        for i in range(q - 1):
            for j in range(i + 1, q):
                alpha = 0.0
                beta = 0.0
                g = 0.0
                for k in range(p):
                    x = b[k, i]
                    y = b[k, j]
                    alpha += x.real * x.real + x.imag * x.imag
                    beta += y.real * y.real + y.imag * y.imag
                    g += x.conjugate() * y
                if alpha == 0.0 or beta == 0.0:
                    continue
                mag = sqrt(g.real * g.real + g.imag * g.imag)
                if mag <= tol * sqrt(alpha * beta):
                    continue
                rotated = True
                omega = g / mag
                tau = (beta - alpha) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                somega = s * omega
                somegac = s * omega.conjugate()
                for k in range(p):
                    x = b[k, i]
                    y = b[k, j]
                    b[k, i] = c * x - somegac * y
                    b[k, j] = somega * x + c * y
                if has_v:
                    for k in range(q):
                        x = vv[k, i]
                        y = vv[k, j]
                        vv[k, i] = c * x - somegac * y
                        vv[k, j] = somega * x + c * y
        if not rotated:
            return sweep
    return -1


cdef inline double _power_one(double eta, double s2, double w2) nogil:
    cdef double d, f, p
    if s2 <= 0.0:
        return 0.0
    if w2 == 0.0:
        p = 1.0 / eta - 1.0 / s2
        return p if p > 0.0 else 0.0
    if s2 <= w2:
        return 0.0
    d = 1.0 / w2 - 1.0 / s2
    f = 0.25 * d * (d + 4.0 / eta)
    p = sqrt(f) - 0.5 * (1.0 / s2 + 1.0 / w2)
    return p if p > 0.0 else 0.0


def pair_powers(eta, strong2, weak2):
    """Optimal per-pair power at multiplier eta (elementwise)."""
    arrs = np.broadcast_arrays(
        np.asarray(strong2, dtype=np.float64),
        np.asarray(weak2, dtype=np.float64),
        np.asarray(eta, dtype=np.float64),
    )
    s2 = np.array(arrs[0], dtype=np.float64, order="C")
    w2 = np.array(arrs[1], dtype=np.float64, order="C")
    et = np.array(arrs[2], dtype=np.float64, order="C")
    out = np.empty(s2.shape)
    cdef double[::1] sf = s2.ravel()
    cdef double[::1] wf = w2.ravel()
    cdef double[::1] ef = et.ravel()
    cdef double[::1] of = out.ravel()
    cdef Py_ssize_t k
    for k in range(sf.shape[0]):
        of[k] = _power_one(ef[k], sf[k], wf[k])
    return out


def waterfill(strong2, weak2, double budget):
    """Per-row bisection so each row's powers sum to budget."""
    s2 = np.atleast_2d(np.ascontiguousarray(strong2, dtype=np.float64))
    w2 = np.atleast_2d(np.ascontiguousarray(weak2, dtype=np.float64))
    cdef Py_ssize_t nrows = s2.shape[0]
    cdef Py_ssize_t ncols = s2.shape[1]
    powers = np.zeros((nrows, ncols))
    eta = np.full(nrows, np.nan)
    cdef double[:, ::1] sv = s2
    cdef double[:, ::1] wv = w2
    cdef double[:, ::1] pv = powers
    cdef double[::1] ev = eta
    cdef Py_ssize_t r, l
    cdef int it, step, max_steps
    cdef bint gap
    cdef double tot, lo, hi, mid, e
    cdef int fail = 0
    max_steps = <int>(_BRACKET_LIMIT / _BRACKET_STEP) + 2
    for r in range(nrows):
        gap = False
        for l in range(ncols):
            if sv[r, l] > wv[r, l]:
                gap = True
                break
        if not gap:
            continue
        lo = log(_ETA_LO)
        hi = log(_ETA_HI)
        for step in range(max_steps):
            tot = 0.0
            for l in range(ncols):
                tot += _power_one(exp(lo), sv[r, l], wv[r, l])
            if tot >= budget:
                break
            lo -= _BRACKET_STEP
            if lo < -_BRACKET_LIMIT:
                lo = -_BRACKET_LIMIT
        tot = 0.0
        for l in range(ncols):
            tot += _power_one(exp(lo), sv[r, l], wv[r, l])
        if tot < budget:
            fail = 1
            break
        for step in range(max_steps):
            tot = 0.0
            for l in range(ncols):
                tot += _power_one(exp(hi), sv[r, l], wv[r, l])
            if tot <= budget:
                break
            hi += _BRACKET_STEP
            if hi > _BRACKET_LIMIT:
                hi = _BRACKET_LIMIT
        tot = 0.0
        for l in range(ncols):
            tot += _power_one(exp(hi), sv[r, l], wv[r, l])
        if tot > budget:
            fail = 2
            break
        for it in range(_BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            e = exp(mid)
            tot = 0.0
            for l in range(ncols):
                tot += _power_one(e, sv[r, l], wv[r, l])
            if tot > budget:
                lo = mid
            else:
                hi = mid
        e = exp(0.5 * (lo + hi))
        ev[r] = e
        for l in range(ncols):
            pv[r, l] = _power_one(e, sv[r, l], wv[r, l])
    if fail == 1:
        raise AllocationError(
            f"cannot spend budget {budget:g} within the multiplier range"
        )
    if fail == 2:
        raise AllocationError(f"budget {budget:g} is below any reachable spend")
    return powers, eta
