import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermialg import (
    ANTIHOM,
    EXACT,
    GeneratorSubstitution,
    Multivector,
    Scalar,
    Vector,
    ext_exp,
    substitute_generators,
    top_coefficient,
)
from fermialg.scalars import I, ONE
from fermialg.verify import random_multivector, random_scalar, random_vector

coefficient = st.builds(
    Scalar,
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)

multivectors4 = st.builds(
    lambda coeffs: Multivector(4, EXACT, coeffs),
    st.dictionaries(st.integers(min_value=0, max_value=15), coefficient, max_size=6),
)


def gen(i, dim=4):
    return Multivector.generator(i, dim, EXACT)


def blade(mask, dim=4):
    return Multivector.blade(mask, dim, EXACT)


class TestWedge:
    def test_ascending_order_is_positive(self):
        assert gen(1).wedge(gen(2)) == blade(0b11)

    def test_anticommutation(self):
        assert gen(2).wedge(gen(1)) == -blade(0b11)

    def test_square_of_vector_vanishes(self):
        v = gen(1) + gen(2)
        assert v.wedge(v).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            gen(1, 4).wedge(gen(1, 2))

    def test_graded_anticommutativity_random(self, rng):
        for _ in range(30):
            p, q = rng.randint(0, 4), rng.randint(0, 4)
            a = random_multivector(4, EXACT, rng, density=0.7, grade=p)
            b = random_multivector(4, EXACT, rng, density=0.7, grade=q)
            expected = b.wedge(a)
            if (p * q) % 2:
                expected = -expected
            assert a.wedge(b) == expected

    def test_associativity_random(self, rng):
        for _ in range(30):
            a, b, c = (random_multivector(4, EXACT, rng) for _ in range(3))
            assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))

    @given(a=multivectors4, b=multivectors4, c=multivectors4)
    @settings(max_examples=40)
    def test_bilinearity(self, a, b, c):
        assert (a + b).wedge(c) == a.wedge(c) + b.wedge(c)
        assert c.wedge(a + b) == c.wedge(a) + c.wedge(b)

    @given(a=multivectors4)
    @settings(max_examples=40)
    def test_unit_is_neutral(self, a):
        one = Multivector.one(4, EXACT)
        assert one.wedge(a) == a
        assert a.wedge(one) == a


class TestGradeProject:
    def test_picks_single_grade(self):
        x = Multivector.one(4, EXACT) + blade(0b11)
        assert x.grade_project(2) == blade(0b11)
        assert x.grade_project(1).is_zero()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            blade(0b1).grade_project(5)

    def test_grades_partition(self, rng):
        a = random_multivector(4, EXACT, rng, density=0.8)
        total = Multivector.zero(4, EXACT)
        for k in range(5):
            total = total + a.grade_project(k)
        assert total == a


class TestDetInner:
    def test_orthonormal_blades(self):
        assert blade(0b11).det_inner(blade(0b11)) == ONE
        assert gen(1).det_inner(gen(2)) == EXACT.zero

    def test_gram_determinant_oracle(self, rng):
        # Against a hand-rolled 2x2 determinant of the vector Gram matrix.
        for _ in range(25):
            x1, x2, y1, y2 = (random_vector(4, EXACT, rng, real=False) for _ in range(4))
            lhs = (x1.to_multivector().wedge(x2.to_multivector())).det_inner(
                y1.to_multivector().wedge(y2.to_multivector())
            )
            g11, g12 = x1.sesquilinear(y1), x1.sesquilinear(y2)
            g21, g22 = x2.sesquilinear(y1), x2.sesquilinear(y2)
            assert lhs == g11 * g22 - g12 * g21

    def test_hermitian(self, rng):
        for _ in range(20):
            a = random_multivector(4, EXACT, rng)
            b = random_multivector(4, EXACT, rng)
            assert a.det_inner(b) == b.det_inner(a).conjugate()


class TestExtExp:
    def test_exp_of_zero(self):
        assert ext_exp(Multivector.zero(4, EXACT)) == Multivector.one(4, EXACT)

    def test_hand_value_at_m1(self):
        # exp(-gamma) for gamma = i e1^e2 is 1 - i e1^e2: the square of a
        # single two-blade vanishes, so the series stops after one term.
        minus_gamma = Multivector.blade(0b11, 2, EXACT, -I)
        expected = Multivector.one(2, EXACT) + Multivector.blade(0b11, 2, EXACT, -I)
        assert ext_exp(minus_gamma) == expected

    def test_rejects_odd_and_scalar_grades(self):
        with pytest.raises(ValueError):
            ext_exp(gen(1))
        with pytest.raises(ValueError):
            ext_exp(Multivector.one(4, EXACT))

    def test_commuting_exponentials_cancel(self, rng):
        for _ in range(10):
            coeffs = {
                mask: random_scalar(EXACT, rng)
                for mask in range(16)
                if mask.bit_count() in (2, 4) and rng.random() < 0.5
            }
            a = Multivector(4, EXACT, coeffs)
            assert ext_exp(a).wedge(ext_exp(-a)) == Multivector.one(4, EXACT)


class TestTopCoefficient:
    def test_unit(self):
        top = blade(0b1111)
        assert top_coefficient(top, top) == ONE

    def test_zero_element(self):
        assert top_coefficient(Multivector.zero(4, EXACT), blade(0b1111)) == EXACT.zero

    def test_reciprocal_of_coefficient(self):
        omega = Multivector.blade(0b11, 2, EXACT, -I)
        assert top_coefficient(Multivector.blade(0b11, 2, EXACT), omega) == I

    def test_errors(self):
        with pytest.raises(ValueError):
            top_coefficient(blade(0b1111), Multivector.zero(4, EXACT))
        with pytest.raises(ValueError):
            top_coefficient(gen(1), blade(0b1111))


def identity_matrix(n):
    return tuple(
        tuple(ONE if r == c else EXACT.zero for c in range(n)) for r in range(n)
    )


class TestSubstitution:
    def test_identity_is_noop(self, rng):
        a = random_multivector(4, EXACT, rng)
        assert substitute_generators(a, identity_matrix(4)) == a

    def test_swap_two_generators(self):
        rows = [[EXACT.zero] * 4 for _ in range(4)]
        rows[1][0] = rows[0][1] = ONE
        rows[2][2] = rows[3][3] = ONE
        swapped = substitute_generators(blade(0b11), tuple(map(tuple, rows)))
        assert swapped == -blade(0b11)

    def test_antihom_reversal_sign(self):
        # Reversing a 3-blade carries (-1)^(3*2/2) = -1; checked against a
        # brute-force permutation-parity oracle below.
        src = Multivector.blade(0b111, 3, EXACT, I)
        out = substitute_generators(src, identity_matrix(3), ANTIHOM)
        perm_sign = _reversal_sign_by_sorting(3)
        expected = Multivector.blade(0b111, 3, EXACT, I.conjugate() * perm_sign)
        assert out == Multivector.blade(0b111, 3, EXACT, I)
        assert expected == out

    def test_functoriality(self, rng):
        for _ in range(5):
            b1 = _random_invertible(4, rng)
            b2 = _random_invertible(4, rng)
            product = tuple(
                tuple(
                    sum((b1[r][k] * b2[k][c] for k in range(4)), EXACT.zero)
                    for c in range(4)
                )
                for r in range(4)
            )
            a = random_multivector(4, EXACT, rng)
            assert substitute_generators(a, product) == substitute_generators(
                substitute_generators(a, b2), b1
            )

    def test_singular_matrix_rejected(self):
        rows = tuple(tuple(EXACT.zero for _ in range(4)) for _ in range(4))
        with pytest.raises(ValueError):
            GeneratorSubstitution(rows, EXACT)

    def test_substitution_is_algebra_homomorphism(self, rng):
        b = _random_invertible(3, rng)
        sub = GeneratorSubstitution(b, EXACT)
        for _ in range(10):
            x = random_multivector(3, EXACT, rng, density=0.6)
            y = random_multivector(3, EXACT, rng, density=0.6)
            assert sub(x.wedge(y)) == sub(x).wedge(sub(y))


def _reversal_sign_by_sorting(k):
    """Sign of the reversal permutation, counted transposition by transposition."""
    perm = list(reversed(range(k)))
    sign = 1
    for i in range(k):
        for j in range(i + 1, k):
            if perm[i] > perm[j]:
                sign = -sign
    return Scalar(sign)


def _random_invertible(n, rng):
    from fermialg.linalg import mat_inv

    while True:
        rows = tuple(
            tuple(random_scalar(EXACT, rng) for _ in range(n)) for _ in range(n)
        )
        try:
            mat_inv(rows, EXACT)
        except ValueError:
            continue
        return rows


class TestVector:
    def test_basis_and_forms(self):
        x = Vector.basis(1, 4, EXACT)
        y = Vector.basis(2, 4, EXACT)
        assert x.bilinear(x) == ONE
        assert x.bilinear(y) == EXACT.zero
        z = x.scale(I) + y
        assert z.bilinear(z) == EXACT.zero  # (i e1 + e2 | i e1 + e2) = -1 + 1
        assert z.sesquilinear(z) == Scalar(2)

    def test_conjugate_and_reality(self):
        v = Vector([I, ONE], EXACT)
        assert not v.is_real()
        assert v.conjugate() == Vector([-I, ONE], EXACT)

    def test_rendering_order(self):
        x = Multivector.one(2, EXACT) + Multivector.blade(0b11, 2, EXACT, -I)
        assert str(x) == "(1) 1 + (-1i) e1^e2"
