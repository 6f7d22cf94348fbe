"""Complex dense linear algebra for the channel reduction.

Small-matrix SVD via one-sided complex Jacobi (full left/right bases, so
null-space directions are available), Haar-distributed unitary sampling,
and permutation matrices. Everything here is pure given its inputs; rng
state is always an explicit argument.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import SvdConvergenceError

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

# Columns whose norm falls below RANK_CUTOFF * s_max are treated as null
# directions and replaced by completed basis vectors.
RANK_CUTOFF = 1e-13


@dataclass(frozen=True)
class SvdResult:
    """Full decomposition a = u @ diag(singular_values) @ v.conj().T.

    ``u`` is (m, m) unitary, ``v`` is (n, n) unitary and
    ``singular_values`` has length min(m, n), sorted non-increasing.
    """

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray
    sweeps: int


@dataclass(frozen=True)
class Permutation:
    """Permutation of {0, ..., n-1} with its matrix realization.

    ``matrix()`` returns P with P[mapping[l], l] = 1, so P maps basis
    vector l to basis vector mapping[l], and pre-multiplying a vector by
    P.T picks entries: (P.T x)[l] = x[mapping[l]].
    """

    mapping: tuple

    @property
    def size(self):
        return len(self.mapping)

    def matrix(self) -> np.ndarray:
        n = self.size
        m = np.zeros((n, n))
        m[np.asarray(self.mapping), np.arange(n)] = 1.0
        return m

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for l, target in enumerate(self.mapping):
            inv[target] = l
        return Permutation(tuple(inv))


def _as_complex_matrix(a) -> np.ndarray:
    m = np.ascontiguousarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def _complete_basis(cols, dim):
    """Extend orthonormal columns to a full (dim, dim) unitary.

    Candidates are the standard basis vectors, orthogonalized twice against
    the running basis; near-dependent candidates are skipped. Deterministic.
    """
    basis = list(cols)
    for k in range(dim):
        if len(basis) == dim:
            break
        w = np.zeros(dim, dtype=np.complex128)
        w[k] = 1.0
        for _ in range(2):
            for b in basis:
                w = w - np.vdot(b, w) * b
        norm = np.linalg.norm(w)
        if norm > 1e-6:
            basis.append(w / norm)
    if len(basis) != dim:  # cannot happen for dim candidates spanning C^dim
        raise SvdConvergenceError("basis completion failed")
    return np.column_stack(basis)


def svd(a) -> SvdResult:
    """Full SVD of a complex matrix by one-sided Jacobi.

    Singular values are sorted non-increasing, ties broken by original
    column index (stable). Left/right bases are full squares, including
    null-space columns.

    Raises
    ------
    SvdConvergenceError
        If the sweep cap is reached; the message names the matrix
        dimensions and the remaining residual.
    """
    mat = _as_complex_matrix(a)
    m, n = mat.shape
    transposed = m < n
    b = mat.conj().T.copy() if transposed else mat.copy()
    p, q = b.shape
    v = np.eye(q, dtype=np.complex128)
    sweeps = _backend.jacobi_sweeps(b, v, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        gram = b.conj().T @ b
        resid = np.linalg.norm(gram - np.diag(np.diagonal(gram)))
        raise SvdConvergenceError(
            f"Jacobi SVD of a {m}x{n} matrix did not converge in "
            f"{JACOBI_MAX_SWEEPS} sweeps (off-diagonal residual {resid:.3e})"
        )
    norms = np.sqrt((b.real**2 + b.imag**2).sum(axis=0))
    order = np.argsort(-norms, kind="stable")
    s = norms[order]
    b = b[:, order]
    v = v[:, order]
    cutoff = s[0] * RANK_CUTOFF
    kept = [b[:, k] / s[k] for k in range(q) if s[k] > cutoff]
    left = _complete_basis(kept, p)
    if transposed:
        return SvdResult(u=v, singular_values=s, v=left, sweeps=sweeps)
    return SvdResult(u=left, singular_values=s, v=v, sweeps=sweeps)


def singular_values(a) -> np.ndarray:
    """Singular values only (non-increasing); skips basis accumulation."""
    mat = _as_complex_matrix(a)
    b = mat.conj().T.copy() if mat.shape[0] < mat.shape[1] else mat.copy()
    sweeps = _backend.jacobi_sweeps(b, None, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise SvdConvergenceError(
            f"Jacobi SVD of a {mat.shape[0]}x{mat.shape[1]} matrix did not "
            f"converge in {JACOBI_MAX_SWEEPS} sweeps"
        )
    norms = np.sqrt((b.real**2 + b.imag**2).sum(axis=0))
    return np.sort(norms)[::-1]


def sample_haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an (n, n) unitary from the Haar measure.

    Gaussian matrix, QR, then the Q columns are rephased by the signs of
    R's diagonal so the distribution is exactly uniform.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    z *= np.sqrt(0.5)
    qm, r = np.linalg.qr(z)
    d = np.diagonal(r)
    phase = np.where(np.abs(d) > 0, d / np.abs(np.where(d == 0, 1, d)), 1.0)
    return qm * phase


def sample_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """Uniformly random permutation of {0, ..., n-1} (Fisher-Yates)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Permutation(tuple(int(i) for i in rng.permutation(n)))
