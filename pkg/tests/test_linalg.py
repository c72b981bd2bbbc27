import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algscope import (
    INFINITY,
    HomogeneousPoly,
    NonFinite,
    ProjectivePoint,
    ShapeError,
    SingularShift,
    Subspace,
    complement,
    det_poly,
    nullspace,
    pencil_eigen,
    projective_close,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from algscope.linalg import rank

TOL = 1e-10


def line(ambient, index):
    frame = np.zeros((ambient, 1), dtype=complex)
    frame[index, 0] = 1.0
    return Subspace(ambient, frame, TOL)


class TestNullspace:
    def test_zero_matrix_gives_full_space(self):
        assert nullspace(np.zeros((3, 3)), TOL).dim == 3

    def test_identity_gives_trivial_space(self):
        assert nullspace(np.eye(4), TOL).dim == 0

    def test_explicit_kernel_direction(self):
        ns = nullspace(np.diag([1.0, 0.0]), TOL)
        assert ns.dim == 1
        assert subspace_equal(ns, line(2, 1), 1e-12)

    def test_rejects_non_finite(self):
        with pytest.raises(NonFinite):
            nullspace(np.array([[np.nan, 0.0], [0.0, 1.0]]), TOL)

    def test_kernel_vectors_annihilate(self):
        rng = np.random.default_rng(3)
        m = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
        ns = nullspace(m, TOL)
        assert ns.dim == 2
        assert np.max(np.abs(m @ ns.frame)) < 1e-12

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10**9), st.integers(1, 7), st.integers(1, 7))
    def test_rank_plus_nullity(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(0, min(rows, cols) + 1))
        m = (
            rng.standard_normal((rows, r)) + 1j * rng.standard_normal((rows, r))
        ) @ (rng.standard_normal((r, cols)) + 1j * rng.standard_normal((r, cols)))
        if r == 0:
            m = np.zeros((rows, cols), dtype=complex)
        assert rank(m, TOL) + nullspace(m, TOL).dim == cols
        assert rank(m, TOL) == r


class TestSubspaceLattice:
    def test_sum_of_coordinate_lines(self):
        s = subspace_sum(line(3, 0), line(3, 1))
        assert s.dim == 2

    def test_sum_idempotent(self):
        a = line(3, 0)
        assert subspace_equal(subspace_sum(a, a), a, 1e-12)

    def test_sum_of_skew_lines(self):
        # Gram-Schmidt by hand: {e1, e1 + e2} spans the same plane as {e1, e2}
        skew = Subspace(3, np.array([[1.0], [1.0], [0.0]]) / np.sqrt(2), TOL)
        s = subspace_sum(line(3, 0), skew)
        assert s.dim == 2
        assert subspace_equal(s, subspace_sum(line(3, 0), line(3, 1)), 1e-12)

    def test_intersect_with_full_space(self):
        b = line(3, 2)
        got = subspace_intersect(Subspace.full(3, TOL), b, TOL)
        assert subspace_equal(got, b, 1e-10)

    def test_intersect_orthogonal_lines(self):
        assert subspace_intersect(line(2, 0), line(2, 1), TOL).dim == 0

    def test_intersect_planes_in_common_line(self):
        plane_a = subspace_sum(line(3, 0), line(3, 1))
        plane_b = subspace_sum(line(3, 1), line(3, 2))
        got = subspace_intersect(plane_a, plane_b, TOL)
        assert subspace_equal(got, line(3, 1), 1e-9)

    def test_equality_basics(self):
        a = line(3, 0)
        assert subspace_equal(a, a, 1e-12)
        assert not subspace_equal(line(3, 0), line(3, 1), 1e-8)
        rescaled = Subspace(3, np.array([[1.0000000001], [0.0], [0.0]]) / 1.0000000001, 1e-8)
        assert subspace_equal(a, rescaled, 1e-8)

    def test_complement_dimensions(self):
        a = subspace_sum(line(4, 0), line(4, 2))
        c = complement(a)
        assert c.dim == 2
        assert np.max(np.abs(a.frame.conj().T @ c.frame)) < 1e-12

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10**9))
    def test_dimension_formula(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        da, db = int(rng.integers(0, n + 1)), int(rng.integers(0, n + 1))
        qa = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
        qb = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
        a = Subspace(n, qa[:, :da], TOL)
        b = Subspace(n, qb[:, :db], TOL)
        s = subspace_sum(a, b)
        i = subspace_intersect(a, b, TOL)
        assert a.dim + b.dim == s.dim + i.dim


class TestPencilEigen:
    def test_equal_matrices_single_point(self):
        pts = pencil_eigen(np.eye(2), np.eye(2), 0.0)
        assert len(pts) == 1
        alpha, mult = pts[0]
        assert mult == 2 and projective_close(alpha, ProjectivePoint.finite(1.0), 1e-9)

    def test_zero_second_matrix_gives_infinity(self):
        pts = pencil_eigen(np.eye(2), np.zeros((2, 2)), 0.0)
        assert pts == [(INFINITY, 2)]

    def test_diagonal_pencil(self):
        # ker(a - alpha*b) is nontrivial exactly at alpha in {1, 2}
        pts = pencil_eigen(np.diag([1.0, 2.0]), np.eye(2), 0.0)
        assert [m for _, m in pts] == [1, 1]
        values = sorted(abs(p.value) for p, _ in pts)
        assert abs(values[0] - 1.0) < 1e-9 and abs(values[1] - 2.0) < 1e-9

    def test_singular_shift_raises(self):
        with pytest.raises(SingularShift):
            pencil_eigen(np.eye(2), np.eye(2), 1.0)

    def test_multiplicities_sum_to_size(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            k = int(rng.integers(1, 7))
            a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            b = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            pts = pencil_eigen(a, b, 0.1 + 0.2j)
            assert sum(m for _, m in pts) == k


# pairing of Mat2 with the functional dual to diag(1, 2); the expected
# coefficient vector was frozen from an independent symbolic determinant
MAT2_PAIRING = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 2.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 2.0],
    ],
    dtype=complex,
)
MAT2_CHI = np.array([-4.0, -18.0, -28.0, -18.0, -4.0], dtype=complex)


class TestDetPoly:
    def test_empty_determinant_convention(self):
        p = det_poly(np.zeros((0, 0)), np.zeros((0, 0)))
        assert p.degree == 0 and p.coeffs[0] == 1.0

    def test_one_by_one(self):
        p = det_poly(np.array([[1.0]]), np.array([[1.0]]))
        np.testing.assert_allclose(p.coeffs, [1.0, 1.0], atol=1e-12)

    def test_mat2_pairing_coefficients(self):
        p = det_poly(MAT2_PAIRING, MAT2_PAIRING.T)
        np.testing.assert_allclose(p.coeffs, MAT2_CHI, atol=1e-9)

    def test_mat2_pairing_against_symbolic_determinant(self):
        sympy = pytest.importorskip("sympy")
        lam, mu = sympy.symbols("lam mu")
        a = sympy.Matrix(MAT2_PAIRING.real.astype(int).tolist())
        chi = sympy.expand(sympy.det(lam * a + mu * a.T))
        coeffs = [
            complex(sympy.Poly(chi, lam, mu).coeff_monomial(lam ** (4 - d) * mu**d))
            for d in range(5)
        ]
        np.testing.assert_allclose(coeffs, MAT2_CHI, atol=0)
        p = det_poly(MAT2_PAIRING, MAT2_PAIRING.T)
        np.testing.assert_allclose(p.coeffs, coeffs, atol=1e-9)

    @settings(deadline=None, max_examples=30)
    @given(st.integers(0, 10**9))
    def test_transpose_reversal_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 6))
        a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        b = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        pa = det_poly(a, b).coeffs
        pb = det_poly(b, a).coeffs
        scale = max(np.abs(pa).max(), 1.0)
        np.testing.assert_allclose(pa, pb[::-1], atol=1e-9 * scale)

    def test_vanishes_at_pencil_points(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            k = int(rng.integers(1, 6))
            a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            b = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            chi = det_poly(a, b)
            d = np.arange(k + 1)
            for alpha, _ in pencil_eigen(a, b, 0.3 + 0.1j):
                if alpha.is_infinite:
                    assert chi.infinity_multiplicity() >= 1
                    continue
                magnitude = float(np.sum(np.abs(chi.coeffs) * np.abs(alpha.value) ** d))
                value = abs(chi.evaluate(1.0, -alpha.value))
                assert value <= 1e-6 * max(magnitude, chi.coefficient_norm())

    def test_infinity_multiplicity_of_known_polynomial(self):
        # -3*lam^2*mu - 3*lam*mu^2 vanishes once at infinity and once at zero
        p = HomogeneousPoly(3, np.array([0.0, -3.0, -3.0, 0.0], dtype=complex))
        assert p.infinity_multiplicity() == 1


class TestProjectivePoint:
    def test_infinity_is_a_tag(self):
        assert INFINITY.is_infinite
        assert INFINITY.inverse().value == 0.0
        assert ProjectivePoint.finite(0.0).inverse().is_infinite

    def test_inverse_of_finite(self):
        p = ProjectivePoint.finite(2.0)
        assert abs(p.inverse().value - 0.5) < 1e-15

    def test_close_is_relative_for_large_values(self):
        a = ProjectivePoint.finite(1e9)
        b = ProjectivePoint.finite(1e9 + 1.0)
        assert projective_close(a, b, 1e-6)
        assert not projective_close(a, INFINITY, 1e-6)

    def test_subspace_frame_validation(self):
        with pytest.raises(ShapeError):
            Subspace(2, np.array([[1.0], [1.0]]), 1e-10)  # not normalized
