"""Monte Carlo experiment driver: SNR sweeps and capacity baselines.

Per-trial randomness comes from a substream keyed by (master seed, SNR
point index, trial index), so results do not depend on execution order or
worker count; aggregation uses numpy's fixed-shape pairwise reduction. The
worker count is taken from OTFADING_WORKERS (default: CPU count).
"""

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channels import MimoModel, OfdmModel, sample_mimo, sample_ofdm
from .linalg import singular_values
from .rates import LN2
from .waterfill import allocate_ergodic
from . import _backend

CHUNK_TRIALS = 8192


@dataclass(frozen=True)
class SweepConfig:
    model: object
    snr_db_points: tuple
    trials: int
    allocation: str = "per_block"
    seed: int = 0
    epsilon: float = 0.0
    output_path: Optional[str] = None

    def __post_init__(self):
        pts = tuple(float(s) for s in self.snr_db_points)
        object.__setattr__(self, "snr_db_points", pts)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("snr_db_points must be strictly increasing")
        if self.allocation not in ("per_block", "ergodic"):
            raise ValueError("allocation must be per_block or ergodic")


@dataclass(frozen=True)
class RatePoint:
    snr_db: float
    mean_rate_bits: float
    std_error: float
    trials: int


@dataclass(frozen=True)
class RateCurve:
    points: tuple


def _trial_rng(seed, point_idx, trial_idx):
    return np.random.default_rng(
        np.random.SeedSequence([int(seed), int(point_idx), int(trial_idx)])
    )


def _state_gains(model, rng):
    """One block's subchannel amplitude gains, sorted non-increasing."""
    if isinstance(model, OfdmModel):
        g = sample_ofdm(model.n_channels, rng).gains
        return np.sort(g)[::-1]
    vals = singular_values(sample_mimo(model.n_a, model.n_b, rng).mimo_matrix)
    if vals.size < model.n_a:
        vals = np.concatenate([vals, np.zeros(model.n_a - vals.size)])
    return vals


def _pair_sampler(model):
    def sampler(rng):
        g = _state_gains(model, rng)
        half = g.size // 2
        return list(zip(g[:half], g[: half - 1 : -1]))

    return sampler


def _ot_chunk(model, seed, point_idx, start, stop, budget, eta_global):
    n = model.n_subchannels
    half = n // 2
    gains = np.empty((stop - start, n))
    for i, t in enumerate(range(start, stop)):
        gains[i] = _state_gains(model, _trial_rng(seed, point_idx, t))
    s2 = gains[:, :half] ** 2
    w2 = gains[:, : half - 1 : -1] ** 2
    if eta_global is None:
        powers, _ = _backend.waterfill(s2, w2, budget)
    else:
        powers = _backend.pair_powers(eta_global, s2, w2)
    return (np.log1p(powers * s2) - np.log1p(powers * w2)).sum(axis=1) / LN2


def _baseline_chunk(model, seed, point_idx, start, stop, budget, _eta):
    if isinstance(model, OfdmModel):
        width = model.n_channels
    else:
        width = min(model.n_a, model.n_b)
    g2 = np.empty((stop - start, width))
    for i, t in enumerate(range(start, stop)):
        rng = _trial_rng(seed, point_idx, t)
        if isinstance(model, OfdmModel):
            g2[i] = sample_ofdm(model.n_channels, rng).gains ** 2
        else:
            g2[i] = (
                singular_values(sample_mimo(model.n_a, model.n_b, rng).mimo_matrix)
                ** 2
            )
    powers, _ = _backend.waterfill(g2, np.zeros_like(g2), budget)
    return np.log1p(powers * g2).sum(axis=1) / LN2


def _worker_count():
    env = os.environ.get("OTFADING_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _point_rates(chunk_fn, model, seed, point_idx, trials, budget, eta_global):
    starts = list(range(0, trials, CHUNK_TRIALS))
    jobs = [
        (model, seed, point_idx, a, min(a + CHUNK_TRIALS, trials), budget, eta_global)
        for a in starts
    ]
    rates = np.empty(trials)
    workers = min(_worker_count(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for job, out in zip(jobs, pool.map(chunk_fn, *zip(*jobs))):
                rates[job[3] : job[4]] = out
    else:
        for job in jobs:
            rates[job[3] : job[4]] = chunk_fn(*job)
    return rates


def _run_curve(cfg: SweepConfig, chunk_fn, budget_of, ergodic, on_point=None):
    points = []
    for idx, snr_db in enumerate(cfg.snr_db_points):
        budget = budget_of(snr_db)
        eta_global = None
        if ergodic:
            sampler = _pair_sampler(cfg.model)
            cal_rng = np.random.default_rng(
                np.random.SeedSequence([cfg.seed, idx, 2**40])
            )
            eta_global, _ = allocate_ergodic(sampler, budget, cfg.trials, cal_rng)
        rates = _point_rates(
            chunk_fn, cfg.model, cfg.seed, idx, cfg.trials, budget, eta_global
        )
        mean = float(np.add.reduce(rates) / cfg.trials)
        if cfg.trials > 1:
            std = float(np.std(rates, ddof=1))
        else:
            std = 0.0
        point = RatePoint(
            snr_db=float(snr_db),
            mean_rate_bits=mean,
            std_error=std / math.sqrt(cfg.trials),
            trials=cfg.trials,
        )
        points.append(point)
        if on_point is not None:
            on_point(point)
    return RateCurve(points=tuple(points))


def run_sweep(cfg: SweepConfig, on_point=None) -> RateCurve:
    """Mean OT rate (ideal back-off: epsilon=0) per SNR point.

    Each trial samples a block state, pairs the subchannels
    best-with-worst and allocates the block budget P/2 (or applies the
    point's ergodic multiplier when ``allocation="ergodic"``).
    """
    return _run_curve(
        cfg,
        _ot_chunk,
        lambda snr: 10.0 ** (snr / 10.0) / 2.0,
        ergodic=(cfg.allocation == "ergodic"),
        on_point=on_point,
    )


def run_capacity_baseline(cfg: SweepConfig, on_point=None) -> RateCurve:
    """Ordinary water-filled capacity with full transmitter knowledge.

    Spends the whole power P across the state's subchannels (OFDM) or
    eigenchannels (MIMO); the comparison curves for the OT rates.
    """
    return _run_curve(
        cfg,
        _baseline_chunk,
        lambda snr: 10.0 ** (snr / 10.0),
        ergodic=False,
        on_point=on_point,
    )


CSV_HEADER = "snr_db,mean_rate_bits,std_error,trials"


def curve_to_csv(curve: RateCurve) -> str:
    lines = [CSV_HEADER]
    for p in curve.points:
        lines.append(
            f"{p.snr_db:.9g},{p.mean_rate_bits:.9g},{p.std_error:.9g},{p.trials}"
        )
    return "\n".join(lines) + "\n"


def curve_to_json(curve: RateCurve) -> str:
    return json.dumps(
        {
            "points": [
                {
                    "snr_db": p.snr_db,
                    "mean_rate_bits": p.mean_rate_bits,
                    "std_error": p.std_error,
                    "trials": p.trials,
                }
                for p in curve.points
            ]
        },
        indent=2,
    )


def write_curve(curve: RateCurve, path: str, fmt: str = "csv"):
    text = curve_to_csv(curve) if fmt == "csv" else curve_to_json(curve)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
