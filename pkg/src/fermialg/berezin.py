"""The expectation functional on the exterior algebra, the trace-side
ordering isomorphism, and the closed low-degree formulas relating them.

The ordering map works in the eigenbasis of the complexified structure:
re-express an exterior element over the 2M generators

    f_1 .. f_M       = gamma-(v_1) .. gamma-(v_M)
    f_{M+1} .. f_2M  = gamma+(v_1) .. gamma+(v_M)

and read each blade, in canonical ascending order, as the Clifford product
of the same vectors in the same order. Ascending order automatically lists
every minus generator before every plus generator, which is exactly the
ordering the map must produce; within one eigenspace the vectors
anticommute in both algebras (each eigenspace is isotropic), so no other
sign bookkeeping exists. The normal-ordered variant swaps the two blocks
and flips the two-form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import factorial

from ._coeffmap import linear_combination
from .clifford import CliffordElement, from_vector
from .exterior import (
    HOM,
    GeneratorSubstitution,
    Multivector,
    Vector,
    ext_exp,
    reversal_parity,
    top_coefficient,
)
from .linalg import mat_inv
from .scalars import EXACT
from .structure import (
    MINUS,
    PLUS,
    ComplexStructure,
    UnitaryBasis,
    gamma_form,
    gamma_vec,
    j_inner,
    omega_form,
    validate_pair,
)


class OrderingContext:
    """Caches everything the expectation and ordering maps need for one
    (structure, basis, backend) triple.

    The change-of-basis matrix holds the minus images in columns 1..M and
    the plus images in columns M+1..2M; its inverse rewrites elements over
    the eigenbasis. Contexts are immutable after construction apart from
    internal memo tables.
    """

    def __init__(
        self,
        structure: ComplexStructure,
        basis: UnitaryBasis,
        field=EXACT,
    ) -> None:
        validate_pair(structure, basis, field)
        self.structure = structure
        self.basis = basis
        self.field = field
        self.m = structure.m
        self.dim = structure.dim

        self.basis_vectors = basis.all_vectors(field)
        self.gamma_minus_vectors = [
            gamma_vec(structure, v, MINUS) for v in self.basis_vectors
        ]
        self.gamma_plus_vectors = [
            gamma_vec(structure, v, PLUS) for v in self.basis_vectors
        ]

        columns = self.gamma_minus_vectors + self.gamma_plus_vectors
        n = self.dim
        self.b_matrix = tuple(
            tuple(columns[c].components[r] for c in range(n)) for r in range(n)
        )
        self.b_inverse = mat_inv(self.b_matrix, field)

        self.gamma = gamma_form(structure, basis, field)
        self.omega = omega_form(structure, basis, field)

        self._to_eigen = GeneratorSubstitution(self.b_inverse, field, HOM)
        self._exp_minus_gamma = ext_exp(-self.gamma)
        self._cl_columns = [from_vector(v) for v in columns]
        self._blade_products: dict[int, CliffordElement] = {
            0: CliffordElement.one(n, field)
        }

    # -- antinormal ordering -----------------------------------------------

    def expectation(self, zeta: Multivector):
        """Top coefficient of zeta ^ exp(-gamma) against the preferred top form."""
        self._check(zeta)
        top = zeta.wedge(self._exp_minus_gamma).grade_project(self.dim)
        return top_coefficient(top, self.omega)

    def nu(self, zeta: Multivector) -> CliffordElement:
        """Antinormal ordering: eigenbasis blades become Clifford products."""
        self._check(zeta)
        eigen = self._to_eigen(zeta)
        terms = [
            (value, self._blade_product(mask)) for mask, value in eigen.coeffs.items()
        ]
        return linear_combination(CliffordElement, self.dim, self.field, terms)

    def _blade_product(self, mask: int) -> CliffordElement:
        cached = self._blade_products.get(mask)
        if cached is None:
            low = mask & -mask
            cached = self._cl_columns[low.bit_length() - 1] * self._blade_product(
                mask ^ low
            )
            self._blade_products[mask] = cached
        return cached

    def clifford_minus(self, k: int) -> CliffordElement:
        """gamma-(v_k) as a Clifford element (1-based index)."""
        return self._cl_columns[k - 1]

    def clifford_plus(self, k: int) -> CliffordElement:
        """gamma+(v_k) as a Clifford element (1-based index)."""
        return self._cl_columns[self.m + k - 1]

    def nu_formula_deg2(self, x: Vector, y: Vector) -> CliffordElement:
        """Closed degree-2 right-hand side: xy - <y|x> 1."""
        cross = j_inner(self.structure, y, x)
        product = from_vector(x) * from_vector(y)
        return product - CliffordElement.from_scalar(cross, self.dim, self.field)

    def nu_formula_deg3(self, x: Vector, y: Vector, z: Vector) -> CliffordElement:
        """Closed degree-3 right-hand side: xyz - <z|y>x + <z|x>y - <y|x>z."""
        cx, cy, cz = from_vector(x), from_vector(y), from_vector(z)
        out = cx * cy * cz
        out = out - cx.scale(j_inner(self.structure, z, y))
        out = out + cy.scale(j_inner(self.structure, z, x))
        out = out - cz.scale(j_inner(self.structure, y, x))
        return out

    # -- normal-ordered variant ----------------------------------------------

    @cached_property
    def gamma_normal(self) -> Multivector:
        """Term-wise wedge reversal of a two-form is negation."""
        return -self.gamma

    @cached_property
    def omega_normal(self) -> Multivector:
        acc = Multivector.one(self.dim, self.field)
        for _ in range(self.m):
            acc = acc.wedge(-self.gamma_normal)
        return acc.scale(Fraction(1, factorial(self.m)))

    @cached_property
    def _normal_machinery(self):
        columns = self.gamma_plus_vectors + self.gamma_minus_vectors
        n = self.dim
        b = tuple(tuple(columns[c].components[r] for c in range(n)) for r in range(n))
        to_eigen = GeneratorSubstitution(mat_inv(b, self.field), self.field, HOM)
        exp_term = ext_exp(-self.gamma_normal)
        cl_columns = [from_vector(v) for v in columns]
        cache: dict[int, CliffordElement] = {0: CliffordElement.one(n, self.field)}
        return to_eigen, exp_term, cl_columns, cache

    def expectation_normal(self, zeta: Multivector):
        """Expectation with the reversed two-form and its own top form."""
        self._check(zeta)
        _, exp_term, _, _ = self._normal_machinery
        top = zeta.wedge(exp_term).grade_project(self.dim)
        return top_coefficient(top, self.omega_normal)

    def nu_normal(self, zeta: Multivector) -> CliffordElement:
        """Normal ordering: plus-eigenspace factors to the left."""
        self._check(zeta)
        to_eigen, _, cl_columns, cache = self._normal_machinery
        eigen = to_eigen(zeta)

        def blade_product(mask: int) -> CliffordElement:
            cached = cache.get(mask)
            if cached is None:
                low = mask & -mask
                cached = cl_columns[low.bit_length() - 1] * blade_product(mask ^ low)
                cache[mask] = cached
            return cached

        terms = [(value, blade_product(mask)) for mask, value in eigen.coeffs.items()]
        return linear_combination(CliffordElement, self.dim, self.field, terms)

    def nu_normal_formula_deg2(self, x: Vector, y: Vector) -> CliffordElement:
        """Normal-ordered degree-2 right-hand side: xy - <x|y> 1."""
        cross = j_inner(self.structure, x, y)
        product = from_vector(x) * from_vector(y)
        return product - CliffordElement.from_scalar(cross, self.dim, self.field)

    def nu_normal_formula_deg3(self, x: Vector, y: Vector, z: Vector) -> CliffordElement:
        """Normal-ordered degree-3 right-hand side: xyz - <y|z>x + <x|z>y - <x|y>z."""
        cx, cy, cz = from_vector(x), from_vector(y), from_vector(z)
        out = cx * cy * cz
        out = out - cx.scale(j_inner(self.structure, y, z))
        out = out + cy.scale(j_inner(self.structure, x, z))
        out = out - cz.scale(j_inner(self.structure, x, y))
        return out

    # -- coefficient-space helpers ------------------------------------------

    @cached_property
    def _gamma_ext_caches(self):
        one = Multivector.one(self.dim, self.field)
        return (
            ([v.to_multivector() for v in self.gamma_minus_vectors], {0: one}),
            ([v.to_multivector() for v in self.gamma_plus_vectors], {0: one}),
        )

    def _gamma_ext_cached(self, xi: Multivector, sign: str) -> Multivector:
        """Same map as structure.gamma_ext, with blade images kept per context."""
        if xi.dim != self.m:
            raise ValueError(
                f"coefficient space has {xi.dim} generators, expected {self.m}"
            )
        if xi.field != self.field:
            raise ValueError("element does not use this context's scalar backend")
        images, cache = self._gamma_ext_caches[1 if sign == PLUS else 0]

        def blade_image(mask: int) -> Multivector:
            cached = cache.get(mask)
            if cached is None:
                low = mask & -mask
                cached = images[low.bit_length() - 1].wedge(blade_image(mask ^ low))
                cache[mask] = cached
            return cached

        field = self.field
        terms = []
        for mask, value in xi.coeffs.items():
            if sign == MINUS:
                value = field.conj(value)
                if reversal_parity(mask.bit_count()):
                    value = -value
            terms.append((value, blade_image(mask)))
        return linear_combination(Multivector, self.dim, field, terms)

    def gamma_minus_ext(self, xi: Multivector) -> Multivector:
        return self._gamma_ext_cached(xi, MINUS)

    def gamma_plus_ext(self, xi: Multivector) -> Multivector:
        return self._gamma_ext_cached(xi, PLUS)

    @cached_property
    def basis_j_gram(self):
        """Gram matrix <v_r|v_s>_J of the unitary basis (identity when unitary)."""
        return tuple(
            tuple(j_inner(self.structure, vr, vc) for vc in self.basis_vectors)
            for vr in self.basis_vectors
        )

    @cached_property
    def _vj_blades(self) -> list[Multivector]:
        """Images of the coefficient-space blades v_S inside the big algebra."""
        base = [v.to_multivector() for v in self.basis_vectors]
        out: list[Multivector] = []
        for mask in range(1 << self.m):
            acc = Multivector.one(self.dim, self.field)
            for k in range(self.m):
                if mask >> k & 1:
                    acc = acc.wedge(base[k])
            out.append(acc)
        return out

    def to_vj_coordinates(self, a: Multivector) -> Multivector:
        """Rewrite an element of the basis-blade span over the M generators.

        The basis vectors are orthonormal and real, so their blades are
        orthonormal for the determinantal inner product and coordinates
        are plain projections; anything outside the span is rejected.
        """
        self._check(a)
        coords = {}
        for mask in range(1 << self.m):
            c = self._vj_blades[mask].det_inner(a)
            if not self.field.is_zero(c):
                coords[mask] = c
        candidate = Multivector(self.m, self.field, coords)
        rebuilt = linear_combination(
            Multivector,
            self.dim,
            self.field,
            [(v, self._vj_blades[m]) for m, v in coords.items()],
        )
        if rebuilt != a:
            raise ValueError(
                "element does not lie in the span of the unitary-basis blades"
            )
        return candidate

    def _check(self, zeta: Multivector) -> None:
        if zeta.dim != self.dim:
            raise ValueError(
                f"element has {zeta.dim} generators, context uses {self.dim}"
            )
        if zeta.field != self.field:
            raise ValueError("element does not use this context's scalar backend")

    def __repr__(self) -> str:
        return f"OrderingContext(m={self.m}, backend={self.field.name!r})"
