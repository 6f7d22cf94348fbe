"""Agreement between the compiled and pure-numpy kernel backends."""

import importlib.util

import numpy as np
import pytest

from otfading import _kernels_py

compiled = pytest.importorskip(
    "otfading._kernels_cy", reason="compiled kernels not built"
)


def random_complex(rng, shape):
    return (
        (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
        * np.sqrt(0.5)
    ).astype(np.complex128)


@pytest.mark.parametrize("shape", [(2, 2), (4, 2), (4, 4), (6, 3), (8, 8)])
def test_jacobi_agrees(shape):
    rng = np.random.default_rng(shape[0] * 100 + shape[1])
    for _ in range(10):
        a = random_complex(rng, shape)
        b1 = a.copy()
        v1 = np.eye(shape[1], dtype=np.complex128)
        b2 = a.copy()
        v2 = np.eye(shape[1], dtype=np.complex128)
        s1 = _kernels_py.jacobi_sweeps(b1, v1, 1e-14, 100)
        s2 = compiled.jacobi_sweeps(b2, v2, 1e-14, 100)
        assert s1 > 0 and s2 > 0
        n1 = np.sort(np.linalg.norm(b1, axis=0))
        n2 = np.sort(np.linalg.norm(b2, axis=0))
        np.testing.assert_allclose(n1, n2, atol=1e-12, rtol=1e-12)
        # both must orthogonalize the columns and preserve a = b v^H
        for b, v in ((b1, v1), (b2, v2)):
            gram = b.conj().T @ b
            off = gram - np.diag(np.diagonal(gram))
            assert np.abs(off).max() < 1e-10
            np.testing.assert_allclose(b @ v.conj().T, a, atol=1e-12)


def test_pair_powers_agree():
    rng = np.random.default_rng(42)
    s2 = rng.uniform(0.0, 9.0, size=(100, 3))
    w2 = np.minimum(s2, rng.uniform(0.0, 9.0, size=(100, 3)))
    w2[:, 0] = 0.0
    for eta in (1e-6, 0.1, 3.0, 1e6):
        np.testing.assert_allclose(
            _kernels_py.pair_powers(eta, s2, w2),
            compiled.pair_powers(eta, s2, w2),
            atol=0,
            rtol=0,
        )


def test_waterfill_agrees():
    rng = np.random.default_rng(43)
    gains = np.sort(rng.uniform(0.05, 3.0, size=(200, 6)), axis=1)[:, ::-1]
    s2 = gains[:, :3] ** 2
    w2 = gains[:, :2:-1] ** 2
    for budget in (0.1, 4.0, 1e4):
        p1, e1 = _kernels_py.waterfill(s2, w2, budget)
        p2, e2 = compiled.waterfill(s2, w2, budget)
        np.testing.assert_allclose(p1, p2, atol=1e-12, rtol=1e-9)
        np.testing.assert_allclose(e1, e2, rtol=1e-9)
        np.testing.assert_allclose(p1.sum(axis=1), budget, rtol=1e-9)


def test_waterfill_no_gap_rows_match():
    s2 = np.array([[1.0, 4.0], [2.25, 2.25]])
    w2 = np.array([[0.25, 1.0], [2.25, 2.25]])
    p1, e1 = _kernels_py.waterfill(s2, w2, 3.0)
    p2, e2 = compiled.waterfill(s2, w2, 3.0)
    np.testing.assert_allclose(p1, p2, rtol=1e-9)
    assert np.isnan(e1[1]) and np.isnan(e2[1])
    assert p1[1].sum() == 0.0
