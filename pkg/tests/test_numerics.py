import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from projpair.errors import NotHermitianError, NotPSDError
from projpair.numerics import (
    adjoint,
    hermitian_eig,
    operator_norm,
    psd_sqrt,
    unitarity_defect,
)

from conftest import ROT_Q, pair_c


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a + adjoint(a)


def test_eig_diagonal():
    w, v = hermitian_eig(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(w, [1.0, 3.0])
    np.testing.assert_allclose(np.abs(v), [[0, 1], [1, 0]], atol=1e-15)


def test_eig_swap():
    w, _ = hermitian_eig([[0, 1], [1, 0]])
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-15)


def test_eig_rank_one_projection_matches_characteristic_polynomial():
    # oracle: roots of λ² − tr·λ + det
    tr, det = np.trace(ROT_Q), np.linalg.det(ROT_Q)
    expected = np.sort(np.roots([1.0, -tr, det]).real)
    w, _ = hermitian_eig(ROT_Q)
    np.testing.assert_allclose(w, expected, atol=1e-12)
    np.testing.assert_allclose(w, [0.0, 1.0], atol=1e-12)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eig([[1, 1], [0, 1]])


def test_eig_empty():
    w, v = hermitian_eig(np.zeros((0, 0)))
    assert w.shape == (0,) and v.shape == (0, 0)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 32), seed=st.integers(0, 2**32 - 1))
def test_eig_reconstruction_property(n, seed):
    h = random_hermitian(n, seed)
    w, v = hermitian_eig(h)
    assert np.all(np.diff(w) >= 0)
    assert operator_norm(h - (v * w) @ adjoint(v)) <= 1e-11 * n * operator_norm(h)
    assert unitarity_defect(v) <= 1e-11 * n


def test_operator_norm_examples():
    assert operator_norm(np.zeros((3, 3))) == 0.0
    assert operator_norm(np.eye(5)) == pytest.approx(1.0, abs=1e-15)
    pair = pair_c()
    diff = pair.P - pair.Q
    # characteristic polynomial of the traceless 2×2 difference: λ² + det = 0
    oracle = np.sqrt(-np.linalg.det(diff).real)
    assert oracle == pytest.approx(np.sqrt(3) / 2, abs=1e-15)
    assert operator_norm(diff) == pytest.approx(oracle, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(rows=st.integers(1, 10), cols=st.integers(1, 10), seed=st.integers(0, 2**32 - 1))
def test_operator_norm_adjoint_invariant(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    assert abs(operator_norm(m) - operator_norm(adjoint(m))) <= 1e-12 * max(1, operator_norm(m))


def test_psd_sqrt_examples():
    np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)
    np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-14)
    # an orthogonal projection is its own square root
    np.testing.assert_allclose(psd_sqrt(ROT_Q), ROT_Q, atol=1e-12)


def test_psd_sqrt_diagonal_exact():
    lam = np.array([0.0, 1e-3, 0.25, 2.0, 7.5])
    np.testing.assert_allclose(psd_sqrt(np.diag(lam)), np.diag(np.sqrt(lam)), atol=1e-14)


def test_psd_sqrt_clamps_roundoff_and_rejects_negative():
    r = psd_sqrt(np.diag([1.0, -1e-14]))
    np.testing.assert_allclose(r, np.diag([1.0, 0.0]), atol=1e-14)
    with pytest.raises(NotPSDError):
        psd_sqrt(np.diag([1.0, -0.1]))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 16), seed=st.integers(0, 2**32 - 1))
def test_psd_sqrt_property(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = a @ adjoint(a)
    r = psd_sqrt(h)
    assert hermitian_eig(r).eigenvalues[0] >= -1e-12 * operator_norm(r)
    assert operator_norm(r @ r - h) <= 1e-10 * n * operator_norm(h)


def test_unitarity_defect_examples():
    assert unitarity_defect(np.eye(4)) == 0.0
    assert unitarity_defect(2 * np.eye(3)) == pytest.approx(3.0)
    w0 = np.array([[0.5, np.sqrt(3) / 2], [np.sqrt(3) / 2, -0.5]])
    # explicit 2×2 product: W0ᵀW0 = I
    assert unitarity_defect(w0) <= 1e-12


def test_unitarity_defect_rectangular():
    iso = np.eye(4)[:, :2]
    assert unitarity_defect(iso) == 0.0
    assert unitarity_defect(iso.T) == 0.0
    assert unitarity_defect(2 * iso) == pytest.approx(3.0)
