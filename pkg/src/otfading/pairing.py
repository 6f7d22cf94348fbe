"""Grouping 2N subchannels into (strong, weak) pairs.

The rate-optimal grouping pairs the best channel with the worst, the
second best with the second worst, and so on; it does not depend on the
power budget. A brute-force oracle over all perfect matchings (with
closed-form and grid power search per matching) is provided for tests.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .waterfill import PowerAllocation, allocate_block, rate_bits

BRUTE_FORCE_MAX_CHANNELS = 8


@dataclass(frozen=True)
class Pairing:
    """N ordered pairs: ``strong[l]`` and ``weak[l]`` are subchannel indices."""

    strong: tuple
    weak: tuple

    def pairs(self):
        return tuple(zip(self.strong, self.weak))

    def pair_gains(self, gains):
        g = np.asarray(gains, dtype=np.float64)
        return tuple(
            (float(g[s]), float(g[w])) for s, w in zip(self.strong, self.weak)
        )


@dataclass(frozen=True)
class ChoiceAssignment:
    """Which subchannel carries which file: pair l sends file j on
    ``pairs[l][j]``."""

    pairs: tuple


def _validated_gains(gains):
    g = np.asarray(gains, dtype=np.float64)
    if g.ndim != 1 or g.size == 0 or g.size % 2 != 0:
        raise ValueError(f"need an even number of gains, got shape {g.shape}")
    if (g < 0).any():
        raise ValueError("gains must be non-negative")
    return g


def optimal_pairing(gains) -> Pairing:
    """Best-with-worst pairing of an even-length gain vector.

    With sigma sorting gains non-increasing (stable, so ties keep original
    index order), pair l couples sigma[l] with sigma[2N-1-l].
    """
    g = _validated_gains(gains)
    order = np.argsort(-g, kind="stable")
    half = g.size // 2
    strong = tuple(int(i) for i in order[:half])
    weak = tuple(int(i) for i in order[: half - 1 : -1])
    return Pairing(strong=strong, weak=weak)


def assign_subchannels(pairing: Pairing, choice: int) -> ChoiceAssignment:
    """Route file ``choice`` onto the strong subchannel of every pair.

    choice=0 reveals (strong, weak) pairs; choice=1 reveals each pair
    transposed, so slot ``choice`` is always the strong subchannel.
    """
    if choice not in (0, 1):
        raise ValueError("choice must be 0 or 1")
    if choice == 0:
        return ChoiceAssignment(pairs=pairing.pairs())
    return ChoiceAssignment(
        pairs=tuple((w, s) for s, w in zip(pairing.strong, pairing.weak))
    )


def swap_within_pairs(assignment: ChoiceAssignment) -> ChoiceAssignment:
    """Transpose every revealed pair (the choice-bit flip relation)."""
    return ChoiceAssignment(pairs=tuple((b, a) for a, b in assignment.pairs))


def _matchings(indices):
    """All perfect matchings of an even index set, as pair tuples."""
    if not indices:
        yield ()
        return
    first = indices[0]
    for k in range(1, len(indices)):
        rest = indices[1:k] + indices[k + 1 :]
        for tail in _matchings(rest):
            yield ((first, indices[k]),) + tail


def _grid_best_rate(s2, w2, budget, divisions):
    """Max rate over budget splits on a simplex grid (guard for the
    closed form; never better than it, up to grid resolution)."""
    n = len(s2)
    if n == 1:
        return rate_bits(np.array([budget]), s2, w2)
    best = -math.inf
    step = budget / divisions
    for combo in itertools.combinations(range(divisions + n - 1), n - 1):
        parts = []
        prev = -1
        for c in combo:
            parts.append(c - prev - 1)
            prev = c
        parts.append(divisions + n - 2 - prev)
        p = np.array(parts, dtype=np.float64) * step
        best = max(best, rate_bits(p, s2, w2))
    return best


def brute_force_best_pairing(gains, budget: float, power_step: float = 0.05):
    """Exhaustive pairing search: oracle for :func:`optimal_pairing`.

    Enumerates every perfect matching of the subchannels (at most 105 for
    8 channels), scores each with the closed-form allocation refined
    against a simplex grid of budget splits with resolution
    ``power_step * budget``, and returns the maximizer.

    Returns
    -------
    (Pairing, PowerAllocation, float)
        Best pairing, its closed-form allocation, and the best rate found.
    """
    g = _validated_gains(gains)
    if g.size > BRUTE_FORCE_MAX_CHANNELS:
        raise ValueError(
            f"brute force capped at {BRUTE_FORCE_MAX_CHANNELS} channels, "
            f"got {g.size}"
        )
    if budget <= 0:
        raise ValueError("budget must be positive")
    divisions = max(1, round(1.0 / power_step))
    best = None
    for matching in _matchings(tuple(range(g.size))):
        oriented = []
        for a, b in matching:
            if (g[b], -b) > (g[a], -a):
                a, b = b, a
            oriented.append((a, b))
        oriented.sort(key=lambda ab: (-g[ab[0]], ab[0]))
        pairing = Pairing(
            strong=tuple(a for a, _ in oriented),
            weak=tuple(b for _, b in oriented),
        )
        s2 = g[list(pairing.strong)] ** 2
        w2 = g[list(pairing.weak)] ** 2
        alloc = allocate_block(pairing.pair_gains(g), budget)
        rate = max(
            alloc.achieved_rate, _grid_best_rate(s2, w2, budget, divisions)
        )
        key = (-rate, pairing.pairs())
        if best is None or key < best[0]:
            best = (key, pairing, alloc, rate)
    _, pairing, alloc, rate = best
    return pairing, alloc, rate
