import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from passive_spectra import (
    DimensionError,
    ImaginaryAxisError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    SingularMatrixError,
    cholesky,
    general_eig,
    is_spd,
    simultaneous_diagonalize,
    sqrt_spd,
    square_root_factors,
    stable_invariant_subspace,
    sym_eig,
)

small = arrays(np.float64, (4, 4), elements=st.floats(-5, 5))


def _spd(G):
    return G @ G.T + 0.5 * np.eye(G.shape[0])


class TestSymEig:
    def test_diagonal_example(self):
        e = sym_eig([[2.0, 0.0], [0.0, 1.0]])
        np.testing.assert_array_equal(e.eigenvalues, [1.0, 2.0])
        np.testing.assert_array_equal(np.abs(e.eigenvectors), [[0, 1], [1, 0]])

    def test_offdiagonal_example(self):
        e = sym_eig([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(e.eigenvalues, [-1.0, 1.0])

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetricError):
            sym_eig([[1.0, 2.0], [0.0, 1.0]])

    def test_rejects_rectangular(self):
        with pytest.raises(DimensionError):
            sym_eig(np.ones((2, 3)))

    def test_signs_deterministic(self):
        M = np.array([[2.0, 1.0], [1.0, 3.0]])
        a, b = sym_eig(M).eigenvectors, sym_eig(M.copy()).eigenvectors
        np.testing.assert_array_equal(a, b)
        idx = np.argmax(np.abs(a), axis=0)
        assert np.all(a[idx, [0, 1]] > 0)

    @given(small)
    def test_reconstruction(self, G):
        M = G + G.T
        e = sym_eig(M)
        Q = e.eigenvectors
        np.testing.assert_allclose(Q.T @ Q, np.eye(4), atol=1e-10)
        np.testing.assert_allclose((Q * e.eigenvalues) @ Q.T, M, atol=1e-9 * (1 + np.abs(M).max()))
        assert np.all(np.diff(e.eigenvalues) >= 0)


class TestCholesky:
    def test_example(self):
        Rc = cholesky([[4.0, 2.0], [2.0, 2.0]])
        np.testing.assert_allclose(Rc, [[2.0, 1.0], [0.0, 1.0]])

    def test_indefinite(self):
        with pytest.raises(NotPositiveDefiniteError):
            cholesky([[1.0, 2.0], [2.0, 1.0]])
        assert not is_spd([[1.0, 2.0], [2.0, 1.0]])
        assert is_spd(np.eye(3))

    @given(small)
    def test_roundtrip(self, G):
        M = _spd(G)
        Rc = cholesky(M)
        np.testing.assert_allclose(Rc.T @ Rc, M, rtol=1e-10, atol=1e-10)
        np.testing.assert_array_equal(np.tril(Rc, -1), 0)

    @given(small)
    def test_sqrt(self, G):
        M = _spd(G)
        S = sqrt_spd(M)
        np.testing.assert_allclose(S @ S, M, rtol=1e-8, atol=1e-8)
        assert is_spd(S)


class TestGeneralEig:
    def test_rotation(self):
        s = general_eig([[0.0, -1.0], [1.0, 0.0]])
        np.testing.assert_allclose(s.as_array(), [-1j, 1j], atol=1e-15)

    def test_nonfinite(self):
        from passive_spectra import NumericalError
        with pytest.raises(NumericalError):
            general_eig([[np.nan, 0.0], [0.0, 1.0]])


class TestInvariantSubspace:
    def test_diagonal_example(self):
        H = np.diag([-1.0, -2.0, 1.0, 2.0])
        sub = stable_invariant_subspace(H)
        np.testing.assert_allclose(np.sort(sub.eigenvalues.real), [-2.0, -1.0])
        np.testing.assert_allclose(H @ sub.basis, sub.basis @ sub.restriction, atol=1e-14)
        np.testing.assert_allclose(np.abs(sub.X), np.eye(2))
        with pytest.raises(SingularMatrixError):
            stable_invariant_subspace(H, "antistable")

    def test_antistable(self):
        H = np.array([[-1.0, 1.0, 0.0, 0.0], [0.0, -2.0, 0.0, 1.0],
                      [1.0, 0.0, 1.0, 0.0], [0.0, 1.0, -1.0, 2.0]])
        anti = stable_invariant_subspace(H, "antistable")
        assert np.all(anti.eigenvalues.real > 0)
        np.testing.assert_allclose(H @ anti.basis, anti.basis @ anti.restriction, atol=1e-12)

    def test_imaginary_axis(self):
        H = np.diag([-1.0, 0.0, 1.0, 0.0])
        with pytest.raises(ImaginaryAxisError):
            stable_invariant_subspace(H)

    def test_wrong_count(self):
        with pytest.raises(ImaginaryAxisError):
            stable_invariant_subspace(np.diag([-1.0, -2.0, -3.0, 4.0]))

    def test_singular_graph(self):
        # stable subspace spanned by e3, e4 has X = 0
        H = np.diag([1.0, 2.0, -1.0, -2.0])
        with pytest.raises(SingularMatrixError):
            stable_invariant_subspace(H)

    def test_odd_dimension(self):
        with pytest.raises(DimensionError):
            stable_invariant_subspace(np.eye(3))

    def test_complex_pairs(self):
        blk = np.array([[-1.0, 3.0], [-3.0, -1.0]])
        H = np.block([[blk, np.eye(2)], [np.zeros((2, 2)), -blk.T]])
        sub = stable_invariant_subspace(H)
        assert np.all(sub.eigenvalues.real < 0)
        np.testing.assert_allclose(H @ sub.basis, sub.basis @ sub.restriction, atol=1e-12)


class TestCongruence:
    @settings(max_examples=50)
    @given(small, small)
    def test_simultaneous(self, G1, G2):
        Kmax, Kmin = _spd(G1), _spd(G2)
        T, lam = simultaneous_diagonalize(Kmax, Kmin)
        np.testing.assert_allclose(T.T @ Kmax @ T, np.eye(4), atol=1e-8)
        np.testing.assert_allclose(T.T @ Kmin @ T, np.diag(lam), atol=1e-7 * (1 + lam.max()))
        assert np.all(np.diff(lam) >= 0)

    @settings(max_examples=50)
    @given(small, small)
    def test_square_root_factors(self, G1, G2):
        Q, P = _spd(G1), _spd(G2)
        f = square_root_factors(Q, P)
        np.testing.assert_allclose(f.Lo @ f.Lo.T, Q, rtol=1e-10, atol=1e-10)
        np.testing.assert_allclose(f.U @ np.diag(f.s) @ f.V.T, f.Lo.T @ f.Lc, rtol=1e-9, atol=1e-9)
        ev = np.sort(np.linalg.eigvals(P @ Q).real)
        np.testing.assert_allclose(f.s ** 2, ev, rtol=1e-7)
