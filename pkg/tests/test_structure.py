from fractions import Fraction

import pytest

from fermialg import (
    EXACT,
    ComplexStructure,
    FloatField,
    Multivector,
    UnitaryBasis,
    Vector,
    basis_from_structure_float,
    cayley_orthogonal,
    eigenprojectors,
    gamma_ext,
    gamma_form,
    gamma_vec,
    interleaved_top_form,
    j_inner,
    omega_form,
    random_structure,
    standard_structure,
    validate_pair,
)
from fermialg.linalg import FRACTIONS, identity, mat_mul
from fermialg.scalars import I, ONE, SQRT2, Scalar
from fermialg.structure import MINUS, PLUS
from fermialg.verify import random_multivector, random_vector


def e(i, dim, field=EXACT):
    return Vector.basis(i, dim, field)


class TestStandardStructure:
    def test_m1_matrix_and_basis(self):
        s, b = standard_structure(1)
        assert s.j == ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))
        assert b.vector(1, EXACT) == e(1, 2)

    def test_m2_second_basis_vector(self):
        _, b = standard_structure(2)
        assert b.vector(2, EXACT) == e(3, 4)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_invariants(self, m):
        s, b = standard_structure(m)
        validate_pair(s, b, EXACT)  # raises on violation

    def test_rejects_m_zero(self):
        with pytest.raises(ValueError):
            standard_structure(0)


class TestComplexStructureValidation:
    def test_rejects_non_orthogonal(self):
        with pytest.raises(ValueError):
            ComplexStructure(1, [[0, -2], [Fraction(1, 2), 0]])

    def test_rejects_wrong_square(self):
        with pytest.raises(ValueError):
            ComplexStructure(1, [[1, 0], [0, 1]])

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            ComplexStructure(1, [[0, -1, 0], [1, 0, 0]])


class TestRandomStructure:
    def test_cayley_of_zero_is_identity(self):
        n = 4
        zero = [[0] * n for _ in range(n)]
        assert cayley_orthogonal(zero) == identity(n, FRACTIONS)

    def test_cayley_rejects_non_antisymmetric(self):
        with pytest.raises(ValueError):
            cayley_orthogonal([[0, 1], [1, 0]])

    @pytest.mark.parametrize("seed", [0, 1, 7])
    def test_invariants_exact(self, seed):
        s, b = random_structure(2, seed)
        validate_pair(s, b, EXACT)

    def test_distinct_seeds_give_distinct_structures(self):
        s1, _ = random_structure(2, 0)
        s2, _ = random_structure(2, 1)
        assert s1.j != s2.j


class TestJInner:
    def test_hand_values_standard_m1(self):
        s, _ = standard_structure(1)
        assert j_inner(s, e(1, 2), e(1, 2)) == ONE
        assert j_inner(s, e(1, 2), e(2, 2)) == I
        assert j_inner(s, e(2, 2), e(1, 2)) == -I

    def test_requires_real_vectors(self):
        s, _ = standard_structure(1)
        with pytest.raises(ValueError):
            j_inner(s, Vector([I, EXACT.zero], EXACT), e(1, 2))


class TestGammaVec:
    def test_plus_map_formula(self):
        s, _ = standard_structure(1)
        got = gamma_vec(s, e(1, 2), PLUS)
        inv_sqrt2 = ONE / SQRT2
        assert got == Vector([inv_sqrt2, -I * inv_sqrt2], EXACT)

    def test_minus_is_conjugate_of_plus(self, rng):
        s, _ = standard_structure(2)
        for _ in range(15):
            v = random_vector(4, EXACT, rng)
            assert gamma_vec(s, v, PLUS).conjugate() == gamma_vec(s, v, MINUS)

    def test_bilinear_pairing_recovers_j_inner(self, rng):
        s, _ = standard_structure(2)
        for _ in range(15):
            x = random_vector(4, EXACT, rng)
            y = random_vector(4, EXACT, rng)
            lhs = gamma_vec(s, x, MINUS).bilinear(gamma_vec(s, y, PLUS))
            assert lhs == j_inner(s, x, y)

    def test_lands_in_eigenspaces(self, rng):
        s, _ = standard_structure(2)
        v = random_vector(4, EXACT, rng)
        for sign, eig in ((PLUS, I), (MINUS, -I)):
            gv = gamma_vec(s, v, sign)
            assert s.apply(gv) == gv.scale(eig)

    def test_rejects_complex_input(self):
        s, _ = standard_structure(1)
        with pytest.raises(ValueError):
            gamma_vec(s, Vector([I, EXACT.zero], EXACT), PLUS)


class TestGammaExt:
    def test_degree_one_matches_vector_map(self):
        s, b = standard_structure(2)
        xi = Multivector.generator(1, 2, EXACT)
        got = gamma_ext(s, b, xi, PLUS)
        assert got == gamma_vec(s, b.vector(1, EXACT), PLUS).to_multivector()

    def test_minus_reverses_blades(self):
        s, b = standard_structure(2)
        v12 = Multivector.generator(1, 2, EXACT).wedge(Multivector.generator(2, 2, EXACT))
        got = gamma_ext(s, b, v12, MINUS)
        g1 = gamma_vec(s, b.vector(1, EXACT), MINUS).to_multivector()
        g2 = gamma_vec(s, b.vector(2, EXACT), MINUS).to_multivector()
        assert got == g2.wedge(g1)

    def test_plus_extension_is_unitary(self, rng):
        s, b = standard_structure(2)
        for _ in range(15):
            xi = random_multivector(2, EXACT, rng, density=0.7)
            eta = random_multivector(2, EXACT, rng, density=0.7)
            lhs = gamma_ext(s, b, xi, PLUS).det_inner(gamma_ext(s, b, eta, PLUS))
            assert lhs == xi.det_inner(eta)

    def test_rejects_oversized_coefficient_space(self):
        s, b = standard_structure(2)
        with pytest.raises(ValueError):
            gamma_ext(s, b, Multivector.generator(1, 3, EXACT), PLUS)


class TestCanonicalForms:
    def test_gamma_form_m1(self):
        s, b = standard_structure(1)
        assert gamma_form(s, b, EXACT) == Multivector.blade(0b11, 2, EXACT, I)

    def test_gamma_form_m2(self):
        s, b = standard_structure(2)
        expected = Multivector(4, EXACT, {0b0011: I, 0b1100: I})
        assert gamma_form(s, b, EXACT) == expected

    def test_omega_form_m1(self):
        s, b = standard_structure(1)
        assert omega_form(s, b, EXACT) == Multivector.blade(0b11, 2, EXACT, -I)

    def test_omega_form_m2(self):
        s, b = standard_structure(2)
        assert omega_form(s, b, EXACT) == Multivector.blade(0b1111, 4, EXACT, -ONE)

    def test_omega_is_interleaved_product(self):
        for seed in (0, 3):
            s, b = random_structure(2, seed)
            assert omega_form(s, b, EXACT) == interleaved_top_form(s, b, EXACT)

    def test_omega_unit_norm_random_structures(self):
        for seed in (0, 5):
            s, b = random_structure(2, seed)
            omega = omega_form(s, b, EXACT)
            assert omega.det_inner(omega) == ONE

    def test_gamma_independent_of_unitary_basis(self):
        s, b = standard_structure(2)
        gamma = gamma_form(s, b, EXACT)
        inv_sqrt2 = ONE / SQRT2
        v1, v2 = b.vector(1, EXACT), b.vector(2, EXACT)
        rotated = UnitaryBasis(
            [
                ((v1 + v2).scale(inv_sqrt2)).components,
                ((v1 - v2).scale(inv_sqrt2)).components,
            ]
        )
        validate_pair(s, rotated, EXACT)
        assert gamma_form(s, rotated, EXACT) == gamma


class TestEigenspaceGeometry:
    def test_images_are_isotropic(self, rng):
        s, _ = random_structure(2, seed=21)
        for _ in range(15):
            x = random_vector(4, EXACT, rng)
            y = random_vector(4, EXACT, rng)
            for sign in (PLUS, MINUS):
                gx = gamma_vec(s, x, sign)
                gy = gamma_vec(s, y, sign)
                assert gx.bilinear(gy) == EXACT.zero

    def test_eigenspaces_are_perpendicular(self, rng):
        s, _ = random_structure(2, seed=22)
        for _ in range(15):
            x = random_vector(4, EXACT, rng)
            y = random_vector(4, EXACT, rng)
            assert gamma_vec(s, x, MINUS).sesquilinear(gamma_vec(s, y, PLUS)) == EXACT.zero

    def test_plus_unitary_minus_antiunitary(self, rng):
        s, _ = random_structure(2, seed=23)
        for _ in range(15):
            x = random_vector(4, EXACT, rng)
            y = random_vector(4, EXACT, rng)
            gpx, gpy = gamma_vec(s, x, PLUS), gamma_vec(s, y, PLUS)
            gmx, gmy = gamma_vec(s, x, MINUS), gamma_vec(s, y, MINUS)
            assert gpx.sesquilinear(gpy) == j_inner(s, x, y)
            assert gmx.sesquilinear(gmy) == j_inner(s, y, x)


class TestEigenprojectors:
    def test_projector_algebra(self):
        s, _ = random_structure(2, 4)
        p_minus, p_plus = eigenprojectors(s, EXACT)
        assert mat_mul(p_minus, p_minus, EXACT) == p_minus
        assert mat_mul(p_plus, p_plus, EXACT) == p_plus
        eye = identity(4, EXACT)
        summed = tuple(
            tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(p_minus, p_plus)
        )
        assert summed == eye


class TestBasisValidation:
    def test_rejects_short_basis(self):
        s, b1 = standard_structure(2)
        with pytest.raises(ValueError):
            validate_pair(s, UnitaryBasis([b1.vectors[0]]), EXACT)

    def test_rejects_non_unitary_basis(self):
        s, _ = standard_structure(1)
        bad = UnitaryBasis([[Scalar(1), Scalar(1)]])
        with pytest.raises(ValueError):
            validate_pair(s, bad, EXACT)

    def test_float_gram_schmidt_completion(self):
        s, _ = random_structure(3, seed=11)
        field = FloatField(1e-9)
        basis = basis_from_structure_float(s)
        validate_pair(s, basis, field)
