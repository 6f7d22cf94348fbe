"""Power-allocation tests: closed form vs. grid oracle, KKT, asymptotics."""

import math

import numpy as np
import pytest

from otfading import (
    AllocationError,
    allocate_block,
    allocate_ergodic,
    pair_powers_at,
    sample_ofdm,
)
from otfading.waterfill import rate_bits


def grid_oracle_two_pairs(pair_gains, budget, step=1e-4):
    """Exhaustive 1-D search over the split between two pairs."""
    (s0, w0), (s1, w1) = pair_gains
    p1 = np.arange(0.0, budget + 1e-12, step)
    p2 = budget - p1
    r = (
        np.log2(1 + p1 * s0**2)
        - np.log2(1 + p1 * w0**2)
        + np.log2(1 + p2 * s1**2)
        - np.log2(1 + p2 * w1**2)
    )
    i = int(np.argmax(r))
    return float(r[i]), float(p1[i])


def random_instance(rng, n_pairs):
    gains = np.sort(rng.uniform(0.05, 3.0, size=2 * n_pairs))[::-1]
    pair_gains = [
        (gains[l], gains[2 * n_pairs - 1 - l]) for l in range(n_pairs)
    ]
    budget = float(rng.uniform(0.1, 100.0))
    return pair_gains, budget


class TestAllocateBlock:
    def test_single_waterfilling_pair(self):
        alloc = allocate_block([(1.0, 0.0)], 2.0)
        assert abs(alloc.per_pair[0] - 2.0) < 1e-9
        assert abs(alloc.eta - 1.0 / 3.0) < 1e-9

    def test_equal_gain_pair_gets_nothing(self):
        alloc = allocate_block([(2.0, 2.0)], 5.0)
        assert alloc.per_pair == (0.0,)
        assert alloc.achieved_rate == 0.0
        assert alloc.eta is None

    def test_two_pairs_against_grid_oracle(self):
        alloc = allocate_block([(2.0, 0.5), (1.5, 1.0)], 4.0)
        oracle_rate, oracle_p1 = grid_oracle_two_pairs(
            [(2.0, 0.5), (1.5, 1.0)], 4.0
        )
        # frozen from the oracle: rate 3.595383192 at P1 ~ 2.9045
        assert abs(oracle_rate - 3.595383192) < 1e-6
        assert abs(alloc.achieved_rate - oracle_rate) < 1e-6
        assert abs(alloc.per_pair[0] - oracle_p1) < 1e-3
        assert abs(sum(alloc.per_pair) - 4.0) < 1e-9 * 4.0

    def test_budget_spent_when_any_gap(self):
        rng = np.random.default_rng(21)
        for n_pairs in (1, 2, 3):
            for _ in range(20):
                pair_gains, budget = random_instance(rng, n_pairs)
                alloc = allocate_block(pair_gains, budget)
                assert abs(sum(alloc.per_pair) - budget) <= 1e-9 * budget

    def test_kkt_stationarity(self):
        # marginal rate (nats) per unit power of every funded pair equals
        # the multiplier
        rng = np.random.default_rng(22)
        for _ in range(50):
            pair_gains, budget = random_instance(rng, 3)
            alloc = allocate_block(pair_gains, budget)
            for (s, w), p in zip(pair_gains, alloc.per_pair):
                if p > 1e-12:
                    marg = s**2 / (1 + p * s**2) - w**2 / (1 + p * w**2)
                    assert abs(marg - alloc.eta) <= 1e-6 * alloc.eta

    def test_no_improving_transfer(self):
        rng = np.random.default_rng(23)
        delta = 1e-4
        for _ in range(30):
            pair_gains, budget = random_instance(rng, 3)
            alloc = allocate_block(pair_gains, budget)
            s2 = np.array([s**2 for s, _ in pair_gains])
            w2 = np.array([w**2 for _, w in pair_gains])
            base = rate_bits(np.array(alloc.per_pair), s2, w2)
            for i in range(3):
                for j in range(3):
                    if i == j or alloc.per_pair[i] < delta:
                        continue
                    p = np.array(alloc.per_pair)
                    p[i] -= delta
                    p[j] += delta
                    assert rate_bits(p, s2, w2) <= base + 1e-8

    def test_monotone_in_budget(self):
        pair_gains = [(2.0, 0.3), (1.2, 0.9)]
        rates = [
            allocate_block(pair_gains, b).achieved_rate
            for b in (0.1, 1.0, 10.0, 100.0)
        ]
        assert all(b >= a for a, b in zip(rates, rates[1:]))

    def test_high_snr_limits(self):
        # mixed instance shaped like a 4-antenna sender with 3 receive
        # antennas: one zero-weak pair and one wiretap pair
        gains = [(2.0, 0.0), (1.3, 0.7)]
        total_power = 1e8
        alloc = allocate_block(gains, total_power / 2.0)
        eta = alloc.eta
        # water-filling pair: eta * P_l -> 1
        assert abs(eta * alloc.per_pair[0] - 1.0) < 0.01
        # wiretap pair: sqrt(eta) * P_l -> sqrt(1/w^2 - 1/s^2)
        lim = math.sqrt(1 / 0.7**2 - 1 / 1.3**2)
        assert abs(math.sqrt(eta) * alloc.per_pair[1] / lim - 1.0) < 0.01
        # power constraint: eta * P -> 2 * (number of zero-weak pairs)
        assert abs(eta * total_power / 2.0 - 1.0) < 0.01

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            allocate_block([(1.0, 0.5)], 0.0)
        with pytest.raises(ValueError):
            allocate_block([(0.5, 1.0)], 1.0)

    def test_near_tied_pair_at_huge_budget(self):
        # the multiplier drops below the nominal bracket here; the search
        # must widen it and still spend the whole budget
        alloc = allocate_block([(1.0, 0.999999999)], 1e11)
        assert abs(sum(alloc.per_pair) - 1e11) < 1e-9 * 1e11
        assert alloc.eta < 1e-12


class TestAllocateErgodic:
    def test_degenerate_sampler_reduces_to_block(self):
        eta, rate = allocate_ergodic(
            lambda rng: [(1.0, 0.0)], 2.0, 100, np.random.default_rng(0)
        )
        assert abs(eta - 1.0 / 3.0) < 1e-9
        assert abs(rate - math.log2(3.0)) < 1e-9

    def test_ergodic_beats_per_block_at_high_snr(self):
        total_power = 1e6
        budget = total_power / 2.0

        def sampler(rng):
            g = np.sort(sample_ofdm(2, rng).gains)[::-1]
            return [(g[0], g[1])]

        rng = np.random.default_rng(31)
        trials = 20_000
        eta, ergodic_rate = allocate_ergodic(sampler, budget, trials, rng)

        block_rng = np.random.default_rng(32)
        block_rates = np.empty(trials)
        for i in range(trials):
            pair = sampler(block_rng)
            block_rates[i] = allocate_block(pair, budget).achieved_rate
        block_mean = block_rates.mean()
        se = block_rates.std(ddof=1) / math.sqrt(trials)
        assert ergodic_rate >= block_mean - 2 * se
        assert abs(ergodic_rate - 2.0) < 0.1

    def test_expected_spend_matches_budget(self):
        def sampler(rng):
            g = np.sort(sample_ofdm(2, rng).gains)[::-1]
            return [(g[0], g[1])]

        rng = np.random.default_rng(33)
        eta, _ = allocate_ergodic(sampler, 5.0, 20_000, rng)
        check_rng = np.random.default_rng(34)
        spends = np.array(
            [pair_powers_at(eta, sampler(check_rng)).sum() for _ in range(20_000)]
        )
        se = spends.std(ddof=1) / math.sqrt(len(spends))
        assert abs(spends.mean() - 5.0) < 2 * se

    def test_bracket_failure(self):
        with pytest.raises(AllocationError):
            allocate_ergodic(
                lambda rng: [(1.0, 0.99999999)], 1e11, 10, np.random.default_rng(0)
            )
