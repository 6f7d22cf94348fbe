"""Quasi-static fading channel models and the MIMO-to-parallel reduction.

Two state models: i.i.d. Rayleigh parallel subchannels (the OFDM
abstraction; real OFDM subchannels are correlated, the i.i.d. assumption is
deliberate) and an i.i.d. complex Gaussian MIMO matrix. The reduction turns
MIMO into parallel channels via the right-singular basis and a uniformly
random permutation of the transmit dimensions, so the sender cannot
associate gains with subchannels.

Conventions: complex noise has unit total variance (1/2 per real part), so
the SNR of a subchannel with per-symbol power P and amplitude gain g is
P * g**2. Fading entries have E[|H|^2] = 1.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import Permutation, sample_permutation, svd


@dataclass(frozen=True)
class OfdmModel:
    """Parallel-subchannel model; ``n_channels`` must be even."""

    n_channels: int

    def __post_init__(self):
        if self.n_channels < 2 or self.n_channels % 2 != 0:
            raise ValueError("n_channels must be an even integer >= 2")

    @property
    def n_subchannels(self):
        return self.n_channels

    def label(self):
        return f"ofdm{self.n_channels}"


@dataclass(frozen=True)
class MimoModel:
    """MIMO model with ``n_a`` transmit (even) and ``n_b`` receive antennas."""

    n_a: int
    n_b: int

    def __post_init__(self):
        if self.n_a < 2 or self.n_a % 2 != 0:
            raise ValueError("n_a must be an even integer >= 2")
        if self.n_b < 1:
            raise ValueError("n_b must be >= 1")

    @property
    def n_subchannels(self):
        return self.n_a

    def label(self):
        return f"mimo{self.n_a}x{self.n_b}"


@dataclass(frozen=True)
class ChannelRealization:
    """One coherence block's fading state.

    For ``kind == "ofdm"`` the amplitude gains are set at sampling time; a
    MIMO realization carries the fading matrix and acquires its parallel
    gains only through :func:`reduce_mimo`.
    """

    kind: str
    n_a: int
    gains: Optional[np.ndarray] = None
    mimo_matrix: Optional[np.ndarray] = None
    n_b: Optional[int] = None


@dataclass(frozen=True)
class ReducedChannel:
    """MIMO state reduced to parallel subchannels.

    ``precoder`` is the unitary the receiver reveals to the sender;
    ``bob_postprocessor`` is applied to the raw receive vector. Subchannels
    listed in ``dead_subchannels`` have zero gain *and* zero post-processed
    noise; the receiver injects unit noise there to restore the uniform
    parallel-channel abstraction.
    """

    precoder: np.ndarray
    permutation: Permutation
    parallel_gains: np.ndarray
    bob_postprocessor: np.ndarray
    dead_subchannels: tuple


def sample_ofdm(n_channels: int, rng: np.random.Generator) -> ChannelRealization:
    """I.i.d. Rayleigh amplitude gains with E[gain^2] = 1."""
    model = OfdmModel(n_channels)
    h = rng.standard_normal(n_channels) + 1j * rng.standard_normal(n_channels)
    gains = np.abs(h) * np.sqrt(0.5)
    return ChannelRealization(kind="ofdm", n_a=model.n_channels, gains=gains)


def sample_mimo(n_a: int, n_b: int, rng: np.random.Generator) -> ChannelRealization:
    """I.i.d. complex Gaussian fading matrix, E[|entry|^2] = 1."""
    model = MimoModel(n_a, n_b)
    h = rng.standard_normal((n_b, n_a)) + 1j * rng.standard_normal((n_b, n_a))
    h *= np.sqrt(0.5)
    return ChannelRealization(kind="mimo", n_a=model.n_a, n_b=model.n_b, mimo_matrix=h)


def reduce_mimo(
    ch: ChannelRealization,
    rng: np.random.Generator,
    permutation: Optional[Permutation] = None,
) -> ReducedChannel:
    """Reduce a MIMO realization to permuted parallel subchannels.

    The receiver computes the SVD, pads the singular values with zeros up
    to n_a when n_b < n_a (or keeps the top n_a rows of the left basis when
    n_b > n_a), draws a uniform permutation and hands the sender the
    permuted right basis as precoder. ``permutation`` can be forced for
    tests.
    """
    if ch.kind != "mimo":
        raise ValueError("reduce_mimo needs a MIMO realization")
    n_a, n_b = ch.n_a, ch.n_b
    dec = svd(ch.mimo_matrix)
    u_h = dec.u.conj().T
    if n_b <= n_a:
        post_base = np.vstack([u_h, np.zeros((n_a - n_b, n_b), dtype=np.complex128)])
        padded = np.concatenate([dec.singular_values, np.zeros(n_a - n_b)])
    else:
        post_base = u_h[:n_a, :]
        padded = dec.singular_values
    perm = permutation if permutation is not None else sample_permutation(n_a, rng)
    pmat = perm.matrix()
    mapping = np.asarray(perm.mapping)
    dead = tuple(int(l) for l in np.where(mapping >= n_b)[0]) if n_b < n_a else ()
    return ReducedChannel(
        precoder=dec.v @ pmat,
        permutation=perm,
        parallel_gains=padded[mapping],
        bob_postprocessor=pmat.T @ post_base,
        dead_subchannels=dead,
    )


def apply_parallel(x, gains, rng: np.random.Generator):
    """Push per-subchannel symbol vectors through y = g*x + noise.

    ``x`` is one equal-length complex vector per subchannel; the additive
    noise is complex Gaussian with unit total variance.
    """
    gains = np.asarray(gains, dtype=np.float64)
    if len(x) != len(gains):
        raise ValueError(
            f"{len(x)} symbol vectors for {len(gains)} subchannel gains"
        )
    lengths = {len(np.atleast_1d(xi)) for xi in x}
    if len(lengths) > 1:
        raise ValueError("symbol vectors must have equal lengths")
    out = []
    for g, xi in zip(gains, x):
        xi = np.asarray(xi, dtype=np.complex128)
        z = (rng.standard_normal(xi.shape) + 1j * rng.standard_normal(xi.shape))
        z *= np.sqrt(0.5)
        out.append(g * xi + z)
    return out
