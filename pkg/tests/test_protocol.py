"""Session-level tests: correctness, transcript symmetry, audits."""

import json
import math
from dataclasses import replace

import numpy as np
import pytest

from otfading import (
    MimoModel,
    OfdmModel,
    SessionConfig,
    allocate_block,
    audit_alice_privacy,
    audit_bob_secrecy,
    leaky_assignment,
    optimal_pairing,
    pair_rates,
    run_session,
    sample_ofdm,
)


def ofdm_rate_oracle(snr_db, trials, rng, epsilon=0.0):
    """Closed-form Monte Carlo of the two-channel mean rate (no sessions)."""
    power = 10.0 ** (snr_db / 10.0)
    g = np.abs(
        (rng.standard_normal((trials, 2)) + 1j * rng.standard_normal((trials, 2)))
        * np.sqrt(0.5)
    )
    s2 = (power / 2.0) * g.max(axis=1) ** 2
    w2 = (power / 2.0) * g.min(axis=1) ** 2
    r = np.log2(1 + s2) - np.log2(1 + w2) - epsilon
    return np.maximum(r, 0.0)


class TestRunSession:
    def test_paired_choices_decode_and_transpose(self):
        cfg = SessionConfig(model=OfdmModel(2), snr_db=20.0, seed=42, block_length=64)
        r0 = run_session(cfg, None, None, 0)
        r1 = run_session(cfg, None, None, 1)
        assert r0.decode_success and r1.decode_success
        assert r0.transcript.gain_pairs == r1.transcript.gain_pairs
        assert r0.transcript.lengths == r1.transcript.lengths
        assert r1.transcript.assignment == tuple(
            (b, a) for a, b in r0.transcript.assignment
        )
        assert r0.decoded != r1.decoded or r0.decoded == ""

    def test_mimo_2x1_nullspace_leaks_nothing(self):
        for seed in range(5):
            cfg = SessionConfig(
                model=MimoModel(2, 1), snr_db=30.0, seed=seed, block_length=64
            )
            res = run_session(cfg, None, None, 1)
            assert res.decode_success
            assert res.transcript.gain_pairs[0][1] == 0.0
            assert res.leakage_bits_other_file == 0.0

    def test_session_mean_rate_matches_closed_form_oracle(self):
        trials = 10_000
        cfg0 = SessionConfig(model=OfdmModel(2), snr_db=30.0, block_length=32)
        rates = np.empty(trials)
        for t in range(trials):
            res = run_session(replace(cfg0, seed=t), None, None, t % 2)
            rates[t] = res.rate_bits_per_use
        oracle = ofdm_rate_oracle(30.0, 100_000, np.random.default_rng(777))
        se = math.hypot(
            rates.std(ddof=1) / math.sqrt(trials),
            oracle.std(ddof=1) / math.sqrt(oracle.size),
        )
        assert abs(rates.mean() - oracle.mean()) < 3 * se

    def test_rate_equals_rates_module_exactly(self):
        cfg = SessionConfig(
            model=MimoModel(4, 2), snr_db=25.0, seed=11, block_length=64, epsilon=0.05
        )
        res = run_session(cfg, None, None, 0)
        budget = 10.0 ** (25.0 / 10.0) / 2.0
        alloc = allocate_block(res.transcript.gain_pairs, budget)
        report = pair_rates(res.transcript.gain_pairs, alloc, 0.05)
        assert res.rate_bits_per_use == report.total_bits
        assert res.pair_rates_bits == report.per_pair_bits

    def test_two_channel_specialization_is_xor_rule(self):
        # with two subchannels, the first slot of the revealed pair equals
        # (index of the better channel) XOR choice, and the requested file
        # rides the better channel
        for seed in range(30):
            cfg = SessionConfig(
                model=OfdmModel(2), snr_db=15.0, seed=seed, block_length=32
            )
            gains = sample_ofdm(2, np.random.default_rng(
                np.random.SeedSequence([seed, 0]))).gains
            better = int(np.argmax(gains))
            for choice in (0, 1):
                res = run_session(cfg, None, None, choice)
                slot0 = res.transcript.assignment[0][0]
                assert slot0 == better ^ choice
                carried = [
                    r for r in res.transcript.transmissions if r.subchannel == better
                ]
                assert carried[0].payload == res.decoded

    def test_provided_files_decode_bit_exact(self):
        cfg = SessionConfig(model=OfdmModel(4), snr_db=18.0, seed=2, block_length=48)
        probe = run_session(cfg, None, None, 0)
        total = len(probe.decoded)
        rng = np.random.default_rng(500)
        k0 = "".join(str(b) for b in rng.integers(0, 2, size=total + 7))
        k1 = "".join(str(b) for b in rng.integers(0, 2, size=total + 7))
        res = run_session(cfg, k0, k1, 1)
        assert res.decode_success
        assert res.decoded == k1[:total]

    def test_file_too_short_rejected(self):
        cfg = SessionConfig(model=OfdmModel(2), snr_db=30.0, seed=1, block_length=256)
        with pytest.raises(ValueError):
            run_session(cfg, "01", "10", 0)

    def test_bad_choice_rejected(self):
        cfg = SessionConfig(model=OfdmModel(2), snr_db=10.0, seed=0)
        with pytest.raises(ValueError):
            run_session(cfg, None, None, 2)

    def test_transcript_json_round_trip(self):
        cfg = SessionConfig(model=MimoModel(2, 2), snr_db=12.0, seed=8, block_length=32)
        res = run_session(cfg, None, None, 0)
        doc = json.loads(res.transcript.to_json())
        assert doc["noise_free_round_count"] == 2
        assert len(doc["bob_to_alice"]["assignment"]) == 1
        gp = doc["bob_to_alice"]["gain_pairs"][0]
        assert isinstance(gp[0], str)
        assert abs(float(gp[0]) - res.transcript.gain_pairs[0][0]) < 1e-9
        assert len(doc["alice_to_bob"]) == 2

    def test_ofdm_transcript_has_single_round(self):
        cfg = SessionConfig(model=OfdmModel(2), snr_db=12.0, seed=8, block_length=32)
        res = run_session(cfg, None, None, 0)
        assert res.transcript.noise_free_rounds == 1
        assert res.transcript.precoder is None


class TestBobSecrecyAudit:
    def test_compliant_sessions_leak_zero(self):
        for seed in range(10):
            cfg = SessionConfig(
                model=OfdmModel(4), snr_db=20.0, seed=seed, block_length=32
            )
            res = run_session(cfg, None, None, seed % 2)
            assert audit_bob_secrecy(res) == 0.0

    def test_inflated_rate_measured(self):
        cfg = SessionConfig(model=OfdmModel(4), snr_db=20.0, seed=3, block_length=32)
        res = run_session(cfg, None, None, 0)
        rates = list(res.pair_rates_bits)
        rates[0] += 0.5
        tampered = replace(res, pair_rates_bits=tuple(rates))
        assert abs(audit_bob_secrecy(tampered) - 0.5) < 1e-9

    def test_2x1_weak_capacity_zero(self):
        cfg = SessionConfig(model=MimoModel(2, 1), snr_db=35.0, seed=4, block_length=32)
        res = run_session(cfg, None, None, 0)
        assert res.pair_weak_snr[0] == 0.0
        assert audit_bob_secrecy(res) == 0.0


class TestAlicePrivacyAudit:
    def test_ofdm_compliant(self):
        cfg = SessionConfig(model=OfdmModel(2), snr_db=20.0, seed=0, block_length=16)
        rep = audit_alice_privacy(cfg, 20_000, structural_trials=64)
        assert rep.min_p > 0.001
        sigma = math.sqrt(0.25 / (rep.trials / 2))
        assert abs(rep.first_slot_zero_given_c0 - 0.5) < 3 * sigma
        assert rep.structural_ok
        assert not rep.violation_detected

    def test_mimo_compliant(self):
        cfg = SessionConfig(model=MimoModel(2, 2), snr_db=20.0, seed=1, block_length=16)
        rep = audit_alice_privacy(cfg, 10_000, structural_trials=32)
        assert rep.min_p > 0.001
        assert rep.structural_ok

    def test_planted_violation_detected(self):
        cfg = SessionConfig(model=OfdmModel(2), snr_db=20.0, seed=2, block_length=16)
        rep = audit_alice_privacy(
            cfg, 20_000, assignment_builder=leaky_assignment, structural_trials=8
        )
        assert rep.p_values["pair_index_order"] < 1e-6
        assert rep.violation_detected
