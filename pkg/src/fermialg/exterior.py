"""Exterior algebra over the complexified generators.

Elements are sparse blade maps over 2M (or, for coefficient spaces of the
complex-structure basis, M) anticommuting generators. The generator order
fixed here, ascending index, defines the positive orientation of every
stored blade; all signs anywhere in the package derive from that single
convention.
"""

from __future__ import annotations

from fractions import Fraction

from ._accel import mul_parity, wedge_dense
from ._coeffmap import BladeMap, linear_combination
from .linalg import is_invertible

HOM = "hom"
ANTIHOM = "antihom"


def reversal_parity(k: int) -> int:
    """Parity of reversing a k-letter word: k(k-1)/2 transpositions."""
    return (k * (k - 1) // 2) & 1


class Vector:
    """Element of the complexified vector space, as a coordinate tuple."""

    __slots__ = ("field", "components")

    def __init__(self, components, field) -> None:
        self.field = field
        self.components = tuple(field.coerce(x) for x in components)

    @classmethod
    def basis(cls, index: int, dim: int, field) -> Vector:
        if not 1 <= index <= dim:
            raise ValueError(f"basis index {index} out of range 1..{dim}")
        return cls(
            [field.one if i == index - 1 else field.zero for i in range(dim)], field
        )

    @classmethod
    def zero(cls, dim: int, field) -> Vector:
        return cls([field.zero] * dim, field)

    @property
    def dim(self) -> int:
        return len(self.components)

    def _check(self, other: Vector) -> None:
        if self.dim != other.dim or self.field != other.field:
            raise ValueError("vector operands live in different spaces")

    def __add__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(
            [x + y for x, y in zip(self.components, other.components)], self.field
        )

    def __sub__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(
            [x - y for x, y in zip(self.components, other.components)], self.field
        )

    def __neg__(self) -> Vector:
        return Vector([-x for x in self.components], self.field)

    def scale(self, scalar) -> Vector:
        value = self.field.coerce(scalar)
        return Vector([x * value for x in self.components], self.field)

    def conjugate(self) -> Vector:
        return Vector([self.field.conj(x) for x in self.components], self.field)

    def is_real(self) -> bool:
        return all(self.field.is_real(x) for x in self.components)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for x in self.components)

    def bilinear(self, other: Vector):
        """Complex-bilinear extension (x|y) of the real inner product."""
        self._check(other)
        acc = self.field.zero
        for x, y in zip(self.components, other.components):
            acc = acc + x * y
        return acc

    def sesquilinear(self, other: Vector):
        """Complex inner product <x|y> = (conj(x)|y)."""
        self._check(other)
        acc = self.field.zero
        for x, y in zip(self.components, other.components):
            acc = acc + self.field.conj(x) * y
        return acc

    def to_multivector(self) -> Multivector:
        out = {}
        for idx, value in enumerate(self.components):
            if not self.field.is_zero(value):
                out[1 << idx] = value
        return Multivector(self.dim, self.field, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        if self.dim != other.dim or self.field != other.field:
            return False
        return all(
            self.field.eq(x, y) for x, y in zip(self.components, other.components)
        )

    __hash__ = None

    def __repr__(self) -> str:
        inner = ", ".join(self.field.format_coeff(x) for x in self.components)
        return f"Vector([{inner}])"


class Multivector(BladeMap):
    """Sparse exterior-algebra element: blade bitmask -> scalar."""

    __slots__ = ()

    def wedge(self, other: Multivector) -> Multivector:
        if not isinstance(other, Multivector):
            raise TypeError("wedge expects a Multivector")
        self._check_space(other)
        if self.field.exact:
            field = self.field
            out: dict = {}
            for ma, va in self.coeffs.items():
                for mb, vb in other.coeffs.items():
                    if ma & mb:
                        continue
                    term = va * vb
                    if mul_parity(ma, mb):
                        term = -term
                    key = ma | mb
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
        return self._from_arrays(*wedge_dense(masks_a, vals_a, masks_b, vals_b, self.dim))

    __xor__ = wedge

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def det_inner(self, other: Multivector):
        """Determinantal inner product; conjugate-linear in the first slot.

        Blades over the orthonormal generators are orthonormal, so this is
        sum_S conj(a_S) * b_S.
        """
        if not isinstance(other, Multivector):
            raise TypeError("det_inner expects a Multivector")
        self._check_space(other)
        field = self.field
        acc = field.zero
        for mask, value in self.coeffs.items():
            rhs = other.coeffs.get(mask)
            if rhs is not None:
                acc = acc + field.conj(value) * rhs
        return acc

    def __str__(self) -> str:
        return self._term_strings(blade_name)


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "^".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


def ext_exp(a: Multivector) -> Multivector:
    """Exterior exponential of an even-graded element without scalar part.

    Such elements are central and nilpotent, so the series terminates by
    grade count; odd or grade-0 components are rejected rather than given
    an ad hoc meaning.
    """
    for mask in a.coeffs:
        k = mask.bit_count()
        if k == 0 or k % 2:
            raise ValueError("ext_exp needs a purely even-graded input of grade >= 2")
    result = Multivector.one(a.dim, a.field)
    term = Multivector.one(a.dim, a.field)
    k = 0
    while True:
        k += 1
        term = term.wedge(a).scale(Fraction(1, k))
        if term.is_zero() or k > a.dim:
            break
        result = result + term
    return result


def top_coefficient(t: Multivector, omega: Multivector):
    """The unique c with t = c * omega, both concentrated in the top grade."""
    if t.dim != omega.dim or t.field != omega.field:
        raise ValueError("operands live in different spaces")
    top_mask = (1 << t.dim) - 1
    base = omega.coeffs.get(top_mask)
    if base is None or set(omega.coeffs) != {top_mask}:
        raise ValueError("reference element must be a nonzero top-grade form")
    if any(mask != top_mask for mask in t.coeffs):
        raise ValueError("element is not concentrated in the top grade")
    return t.coefficient(top_mask) / base


class GeneratorSubstitution:
    """Extension of a generator-level linear map to the whole algebra.

    In hom mode this is the unique algebra homomorphism sending generator
    g_j to sum_i B[i][j] g_i. In antihom mode blades are rewritten in
    reversed factor order and input coefficients are conjugated. Blade
    images are cached, so reusing one instance across many elements shares
    the expansion work.
    """

    def __init__(self, matrix, field, mode: str = HOM) -> None:
        if mode not in (HOM, ANTIHOM):
            raise ValueError(f"unknown substitution mode: {mode!r}")
        dim = len(matrix)
        if any(len(row) != dim for row in matrix):
            raise ValueError("substitution matrix must be square")
        if not is_invertible(matrix, field):
            raise ValueError("singular substitution matrix")
        self.field = field
        self.dim = dim
        self.mode = mode
        self.images = [
            Vector([matrix[i][j] for i in range(dim)], field).to_multivector()
            for j in range(dim)
        ]
        self._cache: dict[int, Multivector] = {0: Multivector.one(dim, field)}

    def blade_image(self, mask: int) -> Multivector:
        cached = self._cache.get(mask)
        if cached is None:
            low = mask & -mask
            rest = mask ^ low
            cached = self.images[low.bit_length() - 1].wedge(self.blade_image(rest))
            self._cache[mask] = cached
        return cached

    def __call__(self, a: Multivector) -> Multivector:
        if a.dim != self.dim or a.field != self.field:
            raise ValueError("element does not match the substitution space")
        field = self.field
        terms = []
        for mask, value in a.coeffs.items():
            if self.mode == ANTIHOM:
                value = field.conj(value)
                if reversal_parity(mask.bit_count()):
                    value = -value
            terms.append((value, self.blade_image(mask)))
        return linear_combination(Multivector, self.dim, field, terms)


def substitute_generators(a: Multivector, matrix, mode: str = HOM) -> Multivector:
    """One-shot generator substitution; see GeneratorSubstitution."""
    return GeneratorSubstitution(matrix, a.field, mode)(a)
