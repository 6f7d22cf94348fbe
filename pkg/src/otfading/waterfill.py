"""Optimal power allocation across (strong, weak) subchannel pairs.

Per-block closed form: for a pair with squared gains (s2, w2), s2 > w2 > 0,
the rate-maximizing power at multiplier eta is

    P = ( sqrt(f) - (1/s2 + 1/w2)/2 )+          with
    f = (1/w2 - 1/s2) * ((1/w2 - 1/s2) + 4/eta) / 4

and plain water-filling (1/eta - 1/s2)+ when the weak gain is zero. The
multiplier is found by fixed-schedule bisection so the powers spend the
block budget exactly. The ergodic variant calibrates one global eta so the
*expected* spend hits a long-term budget. eta is in natural-log units (the
marginal rate in nats per unit power of every active pair equals eta).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .errors import AllocationError
from .rates import LN2

ERGODIC_BISECT_ITERS = 200


@dataclass(frozen=True)
class PowerAllocation:
    """Per-pair powers, the multiplier that produced them, and the rate.

    ``achieved_rate`` is in bits per channel use with no back-off applied.
    ``eta`` is None when no pair has a strict gain gap (all powers zero).
    """

    per_pair: tuple
    eta: Optional[float]
    budget: float
    achieved_rate: float


def _split_gains(pair_gains):
    s2 = np.array([float(s) ** 2 for s, _ in pair_gains])
    w2 = np.array([float(w) ** 2 for _, w in pair_gains])
    if (s2 < 0).any() or (w2 < 0).any():
        raise ValueError("gains must be non-negative")
    if (w2 > s2).any():
        raise ValueError("each pair must be ordered (strong, weak)")
    return s2, w2


def rate_bits(powers, s2, w2):
    """Sum-rate in bits of pairs at the given per-pair powers."""
    p = np.asarray(powers, dtype=np.float64)
    return float(
        (np.log1p(p * s2) - np.log1p(p * w2)).sum() / LN2
    )


def allocate_block(pair_gains, budget: float) -> PowerAllocation:
    """Spend ``budget`` across pairs to maximize the block sum-rate.

    ``pair_gains`` is a sequence of (strong, weak) amplitude gains with
    strong >= weak within each pair. Pairs with equal gains get exactly
    zero power. When at least one pair has a strict gap, the powers sum to
    the budget (to bisection precision).
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    s2, w2 = _split_gains(pair_gains)
    powers, eta = _backend.waterfill(s2[None, :], w2[None, :], budget)
    p = powers[0]
    e = float(eta[0])
    return PowerAllocation(
        per_pair=tuple(float(x) for x in p),
        eta=None if math.isnan(e) else e,
        budget=float(budget),
        achieved_rate=rate_bits(p, s2, w2),
    )


def pair_powers_at(eta: float, pair_gains) -> np.ndarray:
    """Per-pair powers at a fixed multiplier (used by the ergodic mode)."""
    s2, w2 = _split_gains(pair_gains)
    return _backend.pair_powers(eta, s2, w2)


def allocate_ergodic(gain_sampler, budget: float, trials: int, rng):
    """Calibrate a single cross-block multiplier against a long-term budget.

    Parameters
    ----------
    gain_sampler : callable(rng) -> sequence of (strong, weak) pairs
        Draws one block's pair gains.
    budget : float
        Target expected total power per block.
    trials : int
        Sample-batch size; the same batch is reused for every eta candidate
        (common random numbers), so the result is deterministic given rng.
    rng : numpy Generator

    Returns
    -------
    (eta, rate) : float, float
        The calibrated multiplier and the estimated mean rate in bits.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    batch = [gain_sampler(rng) for _ in range(trials)]
    s2 = np.array([[float(s) ** 2 for s, _ in pairs] for pairs in batch])
    w2 = np.array([[float(w) ** 2 for _, w in pairs] for pairs in batch])
    if (w2 > s2).any():
        raise ValueError("each pair must be ordered (strong, weak)")

    def mean_spend(eta):
        return float(_backend.pair_powers(eta, s2, w2).sum(axis=1).mean())

    if mean_spend(_backend.ETA_LO) < budget or mean_spend(_backend.ETA_HI) > budget:
        raise AllocationError(
            f"eta bracket [{_backend.ETA_LO:g}, {_backend.ETA_HI:g}] cannot "
            f"meet expected budget {budget:g}"
        )
    lo = math.log(_backend.ETA_LO)
    hi = math.log(_backend.ETA_HI)
    for _ in range(ERGODIC_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if mean_spend(math.exp(mid)) > budget:
            lo = mid
        else:
            hi = mid
    eta = math.exp(0.5 * (lo + hi))
    powers = _backend.pair_powers(eta, s2, w2)
    rate = float(
        ((np.log1p(powers * s2) - np.log1p(powers * w2)).sum(axis=1) / LN2).mean()
    )
    return eta, rate
