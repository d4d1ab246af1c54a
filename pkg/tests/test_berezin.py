import pytest

from fermialg import (
    EXACT,
    CliffordElement,
    Multivector,
    OrderingContext,
    Vector,
    from_vector,
    random_structure,
    standard_structure,
)
from fermialg.linalg import identity, mat_mul
from fermialg.scalars import I, ONE
from fermialg.verify import (
    pairing_oracle,
    random_multivector,
    random_rational_vector,
)


def ext_blade(mask, dim, coeff=None):
    return Multivector.blade(mask, dim, EXACT, coeff)


class TestContextConstruction:
    def test_change_of_basis_inverts_exactly(self, ctx_m2):
        product = mat_mul(ctx_m2.b_matrix, ctx_m2.b_inverse, EXACT)
        assert product == identity(4, EXACT)

    def test_columns_live_in_eigenspaces(self, ctx_m2):
        for k, vec in enumerate(ctx_m2.gamma_minus_vectors + ctx_m2.gamma_plus_vectors):
            eig = -I if k < ctx_m2.m else I
            assert ctx_m2.structure.apply(vec) == vec.scale(eig)

    def test_rejects_foreign_elements(self, ctx_m2):
        with pytest.raises(ValueError):
            ctx_m2.expectation(Multivector.one(2, EXACT))


class TestExpectation:
    def test_normalization(self, ctx_m1, ctx_m2, ctx_m3):
        for ctx in (ctx_m1, ctx_m2, ctx_m3):
            assert ctx.expectation(Multivector.one(ctx.dim, EXACT)) == ONE

    def test_top_blade_m1(self, ctx_m1):
        assert ctx_m1.expectation(ext_blade(0b11, 2)) == I

    def test_top_blade_m2(self, ctx_m2):
        assert ctx_m2.expectation(ext_blade(0b1111, 4)) == -ONE

    def test_odd_elements_vanish(self, ctx_m2, rng):
        for _ in range(15):
            zeta = random_multivector(4, EXACT, rng, density=0.6, parity=1)
            assert ctx_m2.expectation(zeta) == EXACT.zero


class TestNu:
    def test_fixes_scalars_and_vectors(self, ctx_m2, rng):
        assert ctx_m2.nu(Multivector.one(4, EXACT)) == CliffordElement.one(4, EXACT)
        for _ in range(10):
            w = random_rational_vector(4, EXACT, rng)
            assert ctx_m2.nu(w.to_multivector()) == from_vector(w)

    def test_hand_value_m1(self, ctx_m1):
        expected = CliffordElement(2, EXACT, {0b11: ONE, 0: I})
        assert ctx_m1.nu(ext_blade(0b11, 2)) == expected

    def test_hand_value_m2_degree3(self, ctx_m2):
        expected = CliffordElement(4, EXACT, {0b111: ONE, 0b100: I})
        assert ctx_m2.nu(ext_blade(0b111, 4)) == expected

    def test_linear(self, ctx_m2, rng):
        a = random_multivector(4, EXACT, rng)
        b = random_multivector(4, EXACT, rng)
        assert ctx_m2.nu(a + b) == ctx_m2.nu(a) + ctx_m2.nu(b)

    def test_parity_preserved(self, ctx_m2, rng):
        zeta = random_multivector(4, EXACT, rng, density=0.5, parity=0)
        image = ctx_m2.nu(zeta)
        assert all(mask.bit_count() % 2 == 0 for mask in image.coeffs)


class TestDegreeFormulas:
    def test_unitary_basis_cross_terms_vanish(self, ctx_m2):
        v1 = ctx_m2.basis_vectors[0]
        v2 = ctx_m2.basis_vectors[1]
        assert ctx_m2.nu_formula_deg2(v1, v2) == from_vector(v1) * from_vector(v2)

    def test_deg2_hand_value(self, ctx_m1):
        x = Vector.basis(1, 2, EXACT)
        y = Vector.basis(2, 2, EXACT)
        expected = CliffordElement(2, EXACT, {0b11: ONE, 0: I})
        assert ctx_m1.nu_formula_deg2(x, y) == expected

    def test_deg3_all_basis(self, ctx_m3):
        v1, v2, v3 = ctx_m3.basis_vectors
        expected = from_vector(v1) * from_vector(v2) * from_vector(v3)
        assert ctx_m3.nu_formula_deg3(v1, v2, v3) == expected

    def test_nu_matches_deg2_random(self, ctx_m2, rng):
        for _ in range(40):
            x = random_rational_vector(4, EXACT, rng)
            y = random_rational_vector(4, EXACT, rng)
            wedge = x.to_multivector().wedge(y.to_multivector())
            assert ctx_m2.nu(wedge) == ctx_m2.nu_formula_deg2(x, y)

    def test_nu_matches_deg3_random(self, ctx_m2, rng):
        for _ in range(40):
            x, y, z = (random_rational_vector(4, EXACT, rng) for _ in range(3))
            wedge = (
                x.to_multivector().wedge(y.to_multivector()).wedge(z.to_multivector())
            )
            assert ctx_m2.nu(wedge) == ctx_m2.nu_formula_deg3(x, y, z)


class TestMainTheorem:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_all_blades_exact(self, m, ctx_m1, ctx_m2, ctx_m3):
        ctx = {1: ctx_m1, 2: ctx_m2, 3: ctx_m3}[m]
        for mask in range(1 << ctx.dim):
            zeta = ext_blade(mask, ctx.dim)
            assert ctx.expectation(zeta) == ctx.nu(zeta).trace()

    def test_random_structure_blades(self):
        structure, basis = random_structure(2, seed=3)
        ctx = OrderingContext(structure, basis, EXACT)
        for mask in range(16):
            zeta = ext_blade(mask, 4)
            assert ctx.expectation(zeta) == ctx.nu(zeta).trace()

    def test_float_backend_random(self, ctx_m4_float, rng):
        field = ctx_m4_float.field
        for _ in range(25):
            zeta = random_multivector(8, field, rng, density=0.3)
            lhs = ctx_m4_float.expectation(zeta)
            rhs = ctx_m4_float.nu(zeta).trace()
            assert abs(lhs - rhs) <= 1e-9

    def test_float_backend_m5(self, float_field, rng):
        structure, basis = standard_structure(5)
        ctx = OrderingContext(structure, basis, float_field)
        for _ in range(20):
            zeta = random_multivector(10, float_field, rng, density=0.05)
            assert abs(ctx.expectation(zeta) - ctx.nu(zeta).trace()) <= 1e-9


class TestPairingTheorem:
    def test_blade_pairs_match_gram_oracle(self, ctx_m2):
        for s in range(4):
            for t in range(4):
                xi = Multivector.blade(s, 2, EXACT)
                eta = Multivector.blade(t, 2, EXACT)
                lhs = ctx_m2.expectation(
                    ctx_m2.gamma_minus_ext(xi).wedge(ctx_m2.gamma_plus_ext(eta))
                )
                assert lhs == pairing_oracle(ctx_m2, xi, eta)

    def test_random_structure_random_pairs(self, rng):
        structure, basis = random_structure(2, seed=9)
        ctx = OrderingContext(structure, basis, EXACT)
        for _ in range(20):
            xi = random_multivector(2, EXACT, rng, density=0.7)
            eta = random_multivector(2, EXACT, rng, density=0.7)
            lhs = ctx.expectation(
                ctx.gamma_minus_ext(xi).wedge(ctx.gamma_plus_ext(eta))
            )
            assert lhs == pairing_oracle(ctx, xi, eta)


class TestNormalVariant:
    def test_two_form_reversal_is_negation(self, ctx_m2):
        assert ctx_m2.gamma_normal == -ctx_m2.gamma

    def test_normalization(self, ctx_m1, ctx_m2):
        for ctx in (ctx_m1, ctx_m2):
            assert ctx.expectation_normal(Multivector.one(ctx.dim, EXACT)) == ONE

    def test_nu_normal_hand_value_m1(self, ctx_m1):
        expected = CliffordElement(2, EXACT, {0b11: ONE, 0: -I})
        assert ctx_m1.nu_normal(ext_blade(0b11, 2)) == expected

    def test_closing_identity(self, ctx_m2, rng):
        for _ in range(20):
            xi = random_multivector(2, EXACT, rng, density=0.7)
            eta = random_multivector(2, EXACT, rng, density=0.7)
            swapped = ctx_m2.gamma_plus_ext(eta).wedge(ctx_m2.gamma_minus_ext(xi))
            oracle = pairing_oracle(ctx_m2, xi, eta)
            assert ctx_m2.expectation_normal(swapped) == oracle
            assert ctx_m2.nu_normal(swapped).trace() == oracle

    def test_normal_main_theorem_blades(self, ctx_m2):
        for mask in range(16):
            zeta = ext_blade(mask, 4)
            assert ctx_m2.expectation_normal(zeta) == ctx_m2.nu_normal(zeta).trace()

    def test_normal_degree_formulas(self, ctx_m2, rng):
        for _ in range(25):
            x, y, z = (random_rational_vector(4, EXACT, rng) for _ in range(3))
            xy = x.to_multivector().wedge(y.to_multivector())
            xyz = xy.wedge(z.to_multivector())
            assert ctx_m2.nu_normal(xy) == ctx_m2.nu_normal_formula_deg2(x, y)
            assert ctx_m2.nu_normal(xyz) == ctx_m2.nu_normal_formula_deg3(x, y, z)


class TestGammaExtensionPaths:
    def test_context_cache_matches_standalone_map(self, ctx_m2, rng):
        # the context keeps its own blade-image cache; it must agree with
        # the uncached standalone extension on both signs
        from fermialg import MINUS, PLUS, gamma_ext

        for _ in range(10):
            xi = random_multivector(2, EXACT, rng, density=0.8)
            assert ctx_m2.gamma_plus_ext(xi) == gamma_ext(
                ctx_m2.structure, ctx_m2.basis, xi, PLUS
            )
            assert ctx_m2.gamma_minus_ext(xi) == gamma_ext(
                ctx_m2.structure, ctx_m2.basis, xi, MINUS
            )


class TestVjCoordinates:
    def test_roundtrip(self, ctx_m2, rng):
        for _ in range(10):
            xi = random_multivector(2, EXACT, rng, density=0.8)
            embedded = ctx_m2.gamma_plus_ext(xi)  # not in the v-span in general
            direct = ctx_m2.to_vj_coordinates(_span_element(ctx_m2, xi))
            assert direct == xi
            del embedded

    def test_rejects_elements_outside_span(self, ctx_m2):
        with pytest.raises(ValueError):
            ctx_m2.to_vj_coordinates(ext_blade(0b10, 4))  # e2 is J v1, not in span


def _span_element(ctx, xi):
    acc = Multivector.zero(ctx.dim, ctx.field)
    base = [v.to_multivector() for v in ctx.basis_vectors]
    for mask, coeff in xi.coeffs.items():
        term = Multivector.one(ctx.dim, ctx.field)
        for k in range(ctx.m):
            if mask >> k & 1:
                term = term.wedge(base[k])
        acc = acc + term.scale(coeff)
    return acc
