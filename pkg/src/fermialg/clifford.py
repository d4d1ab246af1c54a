"""Complex Clifford algebra over orthonormal generators with e_i^2 = 1.

Monomials share the exterior module's ascending-index canonical order and
bitmask storage, so the ordering isomorphism can translate blades between
the two algebras without re-sorting anything.
"""

from __future__ import annotations

from ._accel import clifford_dense, mul_parity
from ._coeffmap import BladeMap
from .exterior import Vector, reversal_parity


class CliffordElement(BladeMap):
    """Sparse Clifford-algebra element: monomial bitmask -> scalar."""

    __slots__ = ()

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        self._check_space(other)
        if self.field.exact:
            field = self.field
            out: dict = {}
            for ma, va in self.coeffs.items():
                for mb, vb in other.coeffs.items():
                    term = va * vb
                    if mul_parity(ma, mb):
                        term = -term
                    key = ma ^ mb
                    acc = out.get(key, field.zero) + term
                    if field.is_zero(acc):
                        out.pop(key, None)
                    else:
                        out[key] = acc
            return self._wrap(out)
        if not self.coeffs or not other.coeffs:
            return self._wrap({})
        masks_a, vals_a = self._as_arrays()
        masks_b, vals_b = other._as_arrays()
        return self._from_arrays(
            *clifford_dense(masks_a, vals_a, masks_b, vals_b, self.dim)
        )

    def __rmul__(self, other):
        # Reached only for scalar * element; element * element binds to __mul__.
        return self.scale(other)

    def grade_automorphism(self) -> CliffordElement:
        """The parity automorphism: -1 on vectors, (-1)^|S| on monomials."""
        return self._wrap(
            {
                mask: -value if mask.bit_count() & 1 else value
                for mask, value in self.coeffs.items()
            }
        )

    def star(self) -> CliffordElement:
        """Conjugate-linear antiautomorphism restricting to conjugation on vectors.

        Reversing a |S|-letter monomial contributes (-1)^(|S|(|S|-1)/2).
        """
        field = self.field
        out = {}
        for mask, value in self.coeffs.items():
            value = field.conj(value)
            if reversal_parity(mask.bit_count()):
                value = -value
            out[mask] = value
        return self._wrap(out)

    def trace(self):
        """Normalized trace: the coefficient of the empty monomial."""
        return self.coefficient(0)

    def tracial_inner(self, other: CliffordElement):
        """<a|b> = trace(star(a) * b)."""
        if not isinstance(other, CliffordElement):
            raise TypeError("tracial_inner expects a CliffordElement")
        self._check_space(other)
        return (self.star() * other).trace()

    def __str__(self) -> str:
        return self._term_strings(monomial_name)


def monomial_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return " ".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


def from_vector(v: Vector) -> CliffordElement:
    """Degree-1 element sum_i v_i e_i."""
    out = {}
    for idx, value in enumerate(v.components):
        if not v.field.is_zero(value):
            out[1 << idx] = value
    return CliffordElement(v.dim, v.field, out)
