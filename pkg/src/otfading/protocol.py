"""Message-level one-out-of-two OT sessions over a fading block.

One session: the receiver (Bob) learns the channel state, reduces it to
parallel subchannels (MIMO), pairs them best-with-worst, and reveals to the
sender (Alice) the per-pair gain values plus a file-to-subchannel
assignment whose within-pair order encodes nothing about his choice bit.
Alice recomputes the power allocation and per-pair rates from the revealed
gain values alone and ships each file piece through an idealized wiretap
codec record; Bob decodes the requested file from the strong subchannels.

The codec is rate-based: a record carries (payload, message rate,
randomization rate); a channel of capacity c decodes it iff
message + randomization <= c, and leaks min(message, max(0, c - rand))
bits of payload otherwise - exactly the standard wiretap-code accounting,
with no symbol-level simulation.
"""

import json
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy import stats

from .channels import MimoModel, OfdmModel, reduce_mimo, sample_mimo, sample_ofdm
from .linalg import Permutation, singular_values
from .pairing import (
    ChoiceAssignment,
    assign_subchannels,
    optimal_pairing,
    swap_within_pairs,
)
from .rates import pair_rates, secrecy_capacity
from .waterfill import allocate_block

DECODE_SLACK = 1e-9

_STATE_TAG = 0
_RECEIVER_TAG = 1
_FILE_TAG = 2
_AUDIT_STATE_TAG = 100
_AUDIT_CHOICE_TAG = 101


def _substream(seed: int, *tags) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), *tags]))


@dataclass(frozen=True)
class SessionConfig:
    model: object  # OfdmModel | MimoModel
    snr_db: float
    epsilon: float = 0.0
    block_length: int = 1024
    seed: int = 0

    def __post_init__(self):
        if self.block_length < 1:
            raise ValueError("block_length must be >= 1")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")


@dataclass(frozen=True)
class CodewordRecord:
    """Idealized wiretap codeword riding one subchannel."""

    subchannel: int
    power: float
    message_rate: float
    randomization_rate: float
    payload: str


@dataclass(frozen=True)
class Transcript:
    """Everything that crosses the noise-free and noisy channels."""

    precoder: Optional[np.ndarray]
    assignment: tuple
    gain_pairs: tuple
    lengths: tuple
    transmissions: tuple
    noise_free_rounds: int

    def to_json(self) -> str:
        def g(x):
            return f"{x:.12g}"

        doc = {
            "bob_to_alice": {
                "precoder": None
                if self.precoder is None
                else [
                    [[float(z.real), float(z.imag)] for z in row]
                    for row in self.precoder
                ],
                "assignment": [list(p) for p in self.assignment],
                "gain_pairs": [[g(a), g(b)] for a, b in self.gain_pairs],
                "lengths": list(self.lengths),
            },
            "alice_to_bob": [
                {
                    "subchannel": r.subchannel,
                    "power": g(r.power),
                    "message_rate": g(r.message_rate),
                    "randomization_rate": g(r.randomization_rate),
                    "payload": r.payload,
                }
                for r in self.transmissions
            ],
            "noise_free_round_count": self.noise_free_rounds,
        }
        return json.dumps(doc, indent=2)


@dataclass(frozen=True)
class SessionResult:
    decoded: str
    decode_success: bool
    leakage_bits_other_file: float
    transcript: Transcript
    rate_bits_per_use: float
    pair_rates_bits: tuple
    pair_strong_snr: tuple
    pair_weak_snr: tuple


def _random_bits(rng: np.random.Generator, length: int) -> str:
    if length == 0:
        return ""
    return "".join("1" if b else "0" for b in rng.integers(0, 2, size=length))


def _check_file(name, value, total):
    if set(value) - {"0", "1"}:
        raise ValueError(f"{name} must be a string of 0/1 bits")
    if len(value) < total:
        raise ValueError(
            f"{name} has {len(value)} bits, session needs {total}"
        )


def run_session(cfg: SessionConfig, k0, k1, choice, rng=None) -> SessionResult:
    """Run one OT session; returns the receiver's output and the transcript.

    ``k0``/``k1`` are bit-strings at least as long as the realized total
    length (extra bits are ignored); pass None to draw files of exactly the
    required length from the session's file substream. ``rng`` optionally
    overrides the channel-state substream; receiver and file randomness
    stay tied to cfg.seed so paired choice=0/1 runs share everything else.
    """
    if choice not in (0, 1):
        raise ValueError("choice must be 0 or 1")
    state_rng = rng if rng is not None else _substream(cfg.seed, _STATE_TAG)
    power = 10.0 ** (cfg.snr_db / 10.0)
    budget = power / 2.0

    if isinstance(cfg.model, OfdmModel):
        gains = sample_ofdm(cfg.model.n_channels, state_rng).gains
        precoder = None
        rounds = 1
    elif isinstance(cfg.model, MimoModel):
        ch = sample_mimo(cfg.model.n_a, cfg.model.n_b, state_rng)
        reduced = reduce_mimo(ch, _substream(cfg.seed, _RECEIVER_TAG))
        gains = reduced.parallel_gains
        precoder = reduced.precoder
        rounds = 2
    else:
        raise ValueError(f"unsupported model {cfg.model!r}")

    pairing = optimal_pairing(gains)
    pair_gains = pairing.pair_gains(gains)
    alloc = allocate_block(pair_gains, budget)
    report = pair_rates(pair_gains, alloc, cfg.epsilon)
    lengths = tuple(
        int(math.floor(cfg.block_length * r)) for r in report.per_pair_bits
    )
    total = sum(lengths)

    if k0 is None and k1 is None:
        file_rng = _substream(cfg.seed, _FILE_TAG)
        k0 = _random_bits(file_rng, total)
        k1 = _random_bits(file_rng, total)
    if len(k0) != len(k1):
        raise ValueError("the two files must have equal length")
    _check_file("k0", k0, total)
    _check_file("k1", k1, total)

    assignment = assign_subchannels(pairing, choice)
    records = []
    offset = 0
    for l, slots in enumerate(assignment.pairs):
        piece0 = k0[offset : offset + lengths[l]]
        piece1 = k1[offset : offset + lengths[l]]
        offset += lengths[l]
        # same association as pair_rates so the leakage audit is exact
        weak_snr = alloc.per_pair[l] * pair_gains[l][1] * pair_gains[l][1]
        rand_rate = math.log1p(weak_snr) / math.log(2.0)
        for j, payload in ((0, piece0), (1, piece1)):
            records.append(
                CodewordRecord(
                    subchannel=int(slots[j]),
                    power=alloc.per_pair[l],
                    message_rate=report.per_pair_bits[l],
                    randomization_rate=rand_rate,
                    payload=payload,
                )
            )

    transcript = Transcript(
        precoder=precoder,
        assignment=assignment.pairs,
        gain_pairs=pair_gains,
        lengths=lengths,
        transmissions=tuple(records),
        noise_free_rounds=rounds,
    )

    by_subchannel = {r.subchannel: r for r in records}
    decoded_pieces = []
    all_decodable = True
    strong_snr = []
    weak_snr_list = []
    for l, (s_idx, _) in enumerate(pairing.pairs()):
        rec = by_subchannel[s_idx]
        sb = alloc.per_pair[l] * pair_gains[l][0] * pair_gains[l][0]
        se = alloc.per_pair[l] * pair_gains[l][1] * pair_gains[l][1]
        strong_snr.append(sb)
        weak_snr_list.append(se)
        capacity = math.log1p(sb) / math.log(2.0)
        if rec.message_rate + rec.randomization_rate <= capacity + DECODE_SLACK:
            decoded_pieces.append(rec.payload)
        else:
            all_decodable = False
    decoded = "".join(decoded_pieces)
    requested = (k0 if choice == 0 else k1)[:total]
    leakage = sum(
        max(0.0, r - secrecy_capacity(sb, se))
        for r, sb, se in zip(report.per_pair_bits, strong_snr, weak_snr_list)
    )
    return SessionResult(
        decoded=decoded,
        decode_success=all_decodable and decoded == requested,
        leakage_bits_other_file=leakage,
        transcript=transcript,
        rate_bits_per_use=report.total_bits,
        pair_rates_bits=report.per_pair_bits,
        pair_strong_snr=tuple(strong_snr),
        pair_weak_snr=tuple(weak_snr_list),
    )


def audit_bob_secrecy(result: SessionResult) -> float:
    """Leakage bound (bits) on the unchosen file for a finished session.

    Sums, over pairs, the excess of the carried rate above the pair's
    secrecy capacity; zero for any compliant session.
    """
    return sum(
        max(0.0, r - secrecy_capacity(sb, se))
        for r, sb, se in zip(
            result.pair_rates_bits, result.pair_strong_snr, result.pair_weak_snr
        )
    )


def leaky_assignment(pairing, choice) -> ChoiceAssignment:
    """Planted privacy violation: within-pair order encodes the choice bit.

    Reveals each pair index-sorted when choice=0 and reversed when
    choice=1, so the sender can read the choice from the index order. Used
    to verify the auditor's sensitivity.
    """
    ordered = []
    for s, w in pairing.pairs():
        lo, hi = (s, w) if s < w else (w, s)
        ordered.append((lo, hi) if choice == 0 else (hi, lo))
    return ChoiceAssignment(pairs=tuple(ordered))


@dataclass(frozen=True)
class PrivacyAuditReport:
    trials: int
    p_values: dict
    min_p: float
    first_slot_zero_given_c0: float
    structural_trials: int
    structural_ok: bool
    violation_detected: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "trials": self.trials,
                "p_values": {k: float(v) for k, v in self.p_values.items()},
                "min_p": float(self.min_p),
                "first_slot_zero_given_c0": float(self.first_slot_zero_given_c0),
                "structural_trials": self.structural_trials,
                "structural_ok": self.structural_ok,
                "violation_detected": self.violation_detected,
            },
            indent=2,
        )


def _lean_gains(cfg: SessionConfig, rng: np.random.Generator) -> np.ndarray:
    """State -> subchannel gains without accumulating the unused bases."""
    if isinstance(cfg.model, OfdmModel):
        return sample_ofdm(cfg.model.n_channels, rng).gains
    ch = sample_mimo(cfg.model.n_a, cfg.model.n_b, rng)
    vals = singular_values(ch.mimo_matrix)
    padded = np.zeros(cfg.model.n_a)
    padded[: vals.size] = vals
    return padded[rng.permutation(cfg.model.n_a)]


def _chi2_p(table) -> float:
    t = np.asarray(table, dtype=np.float64)
    if (t.sum(axis=0) == 0).any() or (t.sum(axis=1) == 0).any():
        return 1.0
    return float(stats.chi2_contingency(t, correction=False).pvalue)


GAIN_RATIO_THRESHOLD = 2.0


def audit_alice_privacy(
    cfg: SessionConfig,
    trials: int,
    rng=None,
    assignment_builder=assign_subchannels,
    structural_trials: int = 128,
) -> PrivacyAuditReport:
    """Test that the sender's view is independent of the choice bit.

    Runs ``trials`` sessions with a uniform choice bit and chi-square-tests
    sender-visible features against it: the within-pair index order of the
    first revealed pair, and a fixed binarization of the top pair's gain
    ratio. Also replays ``structural_trials`` paired sessions (same seed,
    both choices) and checks the two transcripts differ exactly by the
    within-pair transposition. ``assignment_builder`` can be swapped for a
    planted-violation variant to check auditor sensitivity.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if rng is None:
        choice_rng = _substream(cfg.seed, _AUDIT_CHOICE_TAG)
        state_seed = cfg.seed
    else:
        choice_rng = rng
        state_seed = int(rng.integers(0, 2**63))
    choices = choice_rng.integers(0, 2, size=trials)

    order_counts = np.zeros((2, 2))
    ratio_counts = np.zeros((2, 2))
    first_zero_c0 = 0
    c0_total = 0
    for t in range(trials):
        g = _lean_gains(cfg, _substream(state_seed, _AUDIT_STATE_TAG, t))
        pairing = optimal_pairing(g)
        c = int(choices[t])
        assignment = assignment_builder(pairing, c)
        a0, a1 = assignment.pairs[0]
        order_counts[1 if a0 < a1 else 0, c] += 1
        ratio = g[pairing.strong[0]] / max(g[pairing.weak[0]], 1e-300)
        ratio_counts[1 if ratio > GAIN_RATIO_THRESHOLD else 0, c] += 1
        if c == 0:
            c0_total += 1
            if a0 == 0:
                first_zero_c0 += 1

    p_values = {
        "pair_index_order": _chi2_p(order_counts),
        "gain_ratio": _chi2_p(ratio_counts),
    }

    structural_ok = True
    for t in range(structural_trials):
        sub = replace(cfg, seed=int(_substream(state_seed, 102, t).integers(2**62)))
        r0 = run_session(sub, None, None, 0)
        r1 = run_session(sub, None, None, 1)
        t0, t1 = r0.transcript, r1.transcript
        same_precoder = (
            (t0.precoder is None and t1.precoder is None)
            or np.array_equal(t0.precoder, t1.precoder)
        )
        if not (
            same_precoder
            and t0.gain_pairs == t1.gain_pairs
            and t0.lengths == t1.lengths
            and swap_within_pairs(ChoiceAssignment(t0.assignment)).pairs
            == t1.assignment
        ):
            structural_ok = False
            break

    min_p = min(p_values.values())
    return PrivacyAuditReport(
        trials=trials,
        p_values=p_values,
        min_p=min_p,
        first_slot_zero_given_c0=first_zero_c0 / max(c0_total, 1),
        structural_trials=structural_trials,
        structural_ok=structural_ok,
        violation_detected=(min_p < 1e-6) or not structural_ok,
    )
