"""Pure numpy kernels: one-sided complex Jacobi and water-filling bisection.

This is the fallback backend; `_kernels_cy` implements the same algorithms
(same operation order, fixed iteration schedules) in Cython. Results agree
to rounding; within one backend they are bit-reproducible.
"""

import math

import numpy as np

from .errors import AllocationError

ETA_LO = 1e-12
ETA_HI = 1e12
BISECT_ITERS = 200
# near-tied pairs at huge budgets push the multiplier below ETA_LO; the
# starting bracket is widened by this log step until it pins the budget
BRACKET_STEP = math.log(1e4)
BRACKET_LIMIT = math.log(1e300)


def jacobi_sweeps(b, v, tol, max_sweeps):
    """Orthogonalize the columns of ``b`` in place by Jacobi rotations.

    Parameters
    ----------
    b : ndarray, shape (p, q), complex128, p >= q
        Overwritten with ``b @ J`` where J is the product of all applied
        rotations; its columns end up mutually orthogonal.
    v : ndarray, shape (q, q), complex128, or None
        If given, accumulates the same rotations (``v @ J``).
    tol : float
        Relative threshold: a column pair is rotated while
        ``|x^H y| > tol * ||x|| * ||y||``.
    max_sweeps : int
        Sweep cap.

    Returns
    -------
    int
        Number of sweeps performed, or -1 if the cap was hit while
        rotations were still being applied.
    """
    p, q = b.shape
    for sweep in range(1, max_sweeps + 1):
        rotated = False
        for i in range(q - 1):
            for j in range(i + 1, q):
                x = b[:, i]
                y = b[:, j]
                alpha = np.vdot(x, x).real
                beta = np.vdot(y, y).real
                if alpha == 0.0 or beta == 0.0:
                    continue
                g = np.vdot(x, y)
                mag = abs(g)
                if mag <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                omega = g / mag
                tau = (beta - alpha) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                xi = c * x - (s * omega.conjugate()) * y
                b[:, j] = (s * omega) * x + c * y
                b[:, i] = xi
                if v is not None:
                    vx = v[:, i].copy()
                    vy = v[:, j].copy()
                    v[:, i] = c * vx - (s * omega.conjugate()) * vy
                    v[:, j] = (s * omega) * vx + c * vy
        if not rotated:
            return sweep
    return -1


def pair_powers(eta, strong2, weak2):
    """Optimal per-pair power at multiplier ``eta`` (elementwise).

    ``strong2``/``weak2`` are squared gains with strong2 >= weak2 >= 0.
    Pairs with equal gains (including both zero) get zero power; pairs with
    a zero weak gain follow plain water-filling.
    """
    s2, w2, et = np.broadcast_arrays(
        np.asarray(strong2, dtype=np.float64),
        np.asarray(weak2, dtype=np.float64),
        np.asarray(eta, dtype=np.float64),
    )
    out = np.zeros(s2.shape)
    wf = (s2 > 0.0) & (w2 == 0.0)
    if wf.any():
        out[wf] = np.maximum(0.0, 1.0 / et[wf] - 1.0 / s2[wf])
    wt = (w2 > 0.0) & (s2 > w2)
    if wt.any():
        d = 1.0 / w2[wt] - 1.0 / s2[wt]
        f = 0.25 * d * (d + 4.0 / et[wt])
        out[wt] = np.maximum(
            0.0, np.sqrt(f) - 0.5 * (1.0 / s2[wt] + 1.0 / w2[wt])
        )
    return out


def waterfill(strong2, weak2, budget):
    """Per-row multiplier search so each row's powers sum to ``budget``.

    Parameters
    ----------
    strong2, weak2 : ndarray, shape (T, N)
        Squared pair gains, strong2 >= weak2 elementwise.
    budget : float
        Power to spend per row.

    Returns
    -------
    (powers, eta) : ndarray (T, N), ndarray (T,)
        ``eta`` is NaN for rows with no strict gain gap anywhere (those
        rows get zero power: spending the budget there buys no rate).

    Raises
    ------
    AllocationError
        If the bracket [ETA_LO, ETA_HI] cannot pin the budget for some row.
    """
    s2 = np.atleast_2d(np.asarray(strong2, dtype=np.float64))
    w2 = np.atleast_2d(np.asarray(weak2, dtype=np.float64))
    nrows = s2.shape[0]
    powers = np.zeros(s2.shape)
    eta = np.full(nrows, np.nan)
    active = (s2 > w2).any(axis=1)
    if not active.any():
        return powers, eta
    rows = np.where(active)[0]
    sa = s2[rows]
    wa = w2[rows]

    lo = np.full(len(rows), math.log(ETA_LO))
    hi = np.full(len(rows), math.log(ETA_HI))
    max_steps = int(BRACKET_LIMIT / BRACKET_STEP) + 2
    for _ in range(max_steps):
        short = pair_powers(np.exp(lo)[:, None], sa, wa).sum(axis=1) < budget
        if not short.any():
            break
        lo = np.maximum(np.where(short, lo - BRACKET_STEP, lo), -BRACKET_LIMIT)
    if (pair_powers(np.exp(lo)[:, None], sa, wa).sum(axis=1) < budget).any():
        raise AllocationError(
            f"cannot spend budget {budget:g} within the multiplier range"
        )
    for _ in range(max_steps):
        over = pair_powers(np.exp(hi)[:, None], sa, wa).sum(axis=1) > budget
        if not over.any():
            break
        hi = np.minimum(np.where(over, hi + BRACKET_STEP, hi), BRACKET_LIMIT)
    if (pair_powers(np.exp(hi)[:, None], sa, wa).sum(axis=1) > budget).any():
        raise AllocationError(
            f"budget {budget:g} is below any reachable spend"
        )
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        over = pair_powers(np.exp(mid)[:, None], sa, wa).sum(axis=1) > budget
        lo = np.where(over, mid, lo)
        hi = np.where(over, hi, mid)
    et = np.exp(0.5 * (lo + hi))
    powers[rows] = pair_powers(et[:, None], sa, wa)
    eta[rows] = et
    return powers, eta
