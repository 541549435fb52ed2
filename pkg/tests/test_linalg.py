"""Tests for the dense matrix primitives."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import specvar as sv


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def square_matrices(max_n=6):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.tuples(
            arrays(np.float64, (n, n), elements=finite),
            arrays(np.float64, (n, n), elements=finite),
        ).map(lambda parts: parts[0] + 1j * parts[1])
    )


class TestDelta:
    def test_scalar_matrix_is_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            n = int(rng.integers(1, 12))
            mu = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            assert sv.delta(mu * np.eye(n)) <= 1e-12 * (1 + abs(mu))

    def test_traceless_equals_frobenius(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert sv.delta(m) == pytest.approx(1.0, abs=1e-15)

    def test_hand_value_diag_1_3(self):
        # sqrt(10 - 16/2) = sqrt(2)
        assert sv.delta(np.diag([1.0, 3.0])) == pytest.approx(np.sqrt(2.0), rel=1e-14)

    def test_nonsquare_rejected(self):
        with pytest.raises(sv.DimensionError):
            sv.delta(np.ones((2, 3)))

    def test_nan_rejected(self):
        with pytest.raises(sv.NonFiniteError):
            sv.delta(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    @settings(max_examples=60, deadline=None)
    @given(square_matrices())
    def test_bounded_by_frobenius(self, m):
        assert sv.delta(m) <= sv.frobenius_norm(m)

    @settings(max_examples=60, deadline=None)
    @given(square_matrices())
    def test_triangular_parts_bounded(self, m):
        # strictly lower/upper mass never exceeds the trace-deflated norm
        parts = sv.split_dlu(m)
        lower2 = sv.frobenius_norm(parts.strictly_lower) ** 2
        upper2 = sv.frobenius_norm(parts.strictly_upper) ** 2
        assert lower2 + upper2 <= sv.delta(m) ** 2 + 1e-12 * sv.frobenius_norm(m) ** 2

    def test_unitary_similarity_invariance(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            n = int(rng.integers(2, 9))
            m = random_complex(rng, n)
            u = sv.random_unitary(n, rng)
            d0 = sv.delta(m)
            d1 = sv.delta(u.conj().T @ m @ u)
            assert abs(d1 - d0) <= 1e-10 * sv.frobenius_norm(m)

    def test_zero_iff_scalar_both_directions(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            n = int(rng.integers(1, 10))
            mu = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            m = mu * np.eye(n)
            scale = 1.0 + sv.frobenius_norm(m)
            assert sv.delta(m) < 1e-10 * scale
        for _ in range(50):
            n = int(rng.integers(2, 10))
            m = random_complex(rng, n)  # unit-scale entries, never scalar
            scale = 1.0 + sv.frobenius_norm(m)
            offscalar = np.max(np.abs(m - (np.trace(m) / n) * np.eye(n)))
            assert offscalar >= 1e-8 * scale
            assert sv.delta(m) >= 1e-10 * scale
            assert sv.delta(m) > 1e-6


class TestSplitDLU:
    def test_identity(self):
        parts = sv.split_dlu(np.eye(3))
        assert np.array_equal(parts.diagonal, np.eye(3))
        assert not parts.strictly_lower.any()
        assert not parts.strictly_upper.any()

    def test_two_by_two(self):
        parts = sv.split_dlu([[1.0, 2.0], [3.0, 4.0]])
        assert np.array_equal(parts.diagonal, np.diag([1.0, 4.0]))
        assert np.array_equal(parts.strictly_lower, [[0.0, 0.0], [3.0, 0.0]])
        assert np.array_equal(parts.strictly_upper, [[0.0, 2.0], [0.0, 0.0]])

    def test_strictly_upper_bidiagonal(self):
        om = np.diag([0.25, 0.25], k=1).astype(complex)
        parts = sv.split_dlu(om)
        assert not parts.diagonal.any()
        assert not parts.strictly_lower.any()
        assert np.array_equal(parts.strictly_upper, om)

    @settings(max_examples=60, deadline=None)
    @given(square_matrices())
    def test_reconstruction_is_bitwise(self, m):
        parts = sv.split_dlu(m)
        total = parts.diagonal + parts.strictly_lower + parts.strictly_upper
        assert np.array_equal(total, np.asarray(m, dtype=np.complex128))

    def test_nonsquare_rejected(self):
        with pytest.raises(sv.DimensionError):
            sv.split_dlu(np.ones((3, 2)))


class TestKappa2:
    def test_unitary_is_one(self):
        rng = np.random.default_rng(3)
        for n in (2, 5, 9):
            assert sv.kappa2(sv.random_unitary(n, rng)) == pytest.approx(1.0, abs=1e-12)

    def test_diagonal(self):
        assert sv.kappa2(np.diag([1.0, 10.0])) == pytest.approx(10.0, rel=1e-12)

    def test_cross_check_against_gram_eigenvalues(self):
        # independent oracle: singular values from the Hermitian eigensolver
        rng = np.random.default_rng(4)
        q = random_complex(rng, 5)
        ev = np.linalg.eigvalsh(q.conj().T @ q)
        expected = np.sqrt(ev[-1] / ev[0])
        assert sv.kappa2(q) == pytest.approx(expected, rel=1e-8)

    def test_singular_rejected(self):
        q = np.ones((3, 3))
        with pytest.raises(sv.SingularMatrixError):
            sv.kappa2(q)

    def test_at_least_one(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            q = random_complex(rng, 4)
            assert sv.kappa2(q) >= 1.0 - 1e-12


class TestPlumbing:
    def test_frobenius_identity(self):
        for n in (1, 4, 7):
            assert sv.frobenius_norm(np.eye(n)) == pytest.approx(np.sqrt(n))

    def test_trace(self):
        assert sv.trace(np.diag([1 + 2j, 3.0])) == pytest.approx(4 + 2j)

    def test_spectral_norm_nilpotent(self):
        assert sv.spectral_norm([[0.0, 2.0], [0.0, 0.0]]) == pytest.approx(2.0)

    def test_spectral_norm_matches_svd(self):
        rng = np.random.default_rng(6)
        m = random_complex(rng, 6)
        sigma = np.linalg.svd(m, compute_uv=False)
        assert sv.spectral_norm(m) == pytest.approx(sigma[0], rel=1e-10)

    def test_adjoint(self):
        m = np.array([[1 + 1j, 2.0], [0.0, 3j]])
        assert np.array_equal(sv.adjoint(m), m.conj().T)

    def test_matmul_dimension_error(self):
        with pytest.raises(sv.DimensionError):
            sv.matmul(np.ones((2, 3)), np.ones((2, 3)))

    def test_solve_and_roundtrip(self):
        rng = np.random.default_rng(7)
        q = random_complex(rng, 5)
        b = random_complex(rng, 5, 3)
        x = sv.solve(q, b)
        assert np.allclose(q @ x, b, atol=1e-10)

    def test_solve_singular(self):
        with pytest.raises(sv.SingularMatrixError):
            sv.solve(np.zeros((2, 2)), np.eye(2))

    def test_solve_shape_mismatch(self):
        with pytest.raises(sv.DimensionError):
            sv.solve(np.eye(3), np.ones((2, 2)))
