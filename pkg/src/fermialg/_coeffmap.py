"""Shared storage for blade-indexed coefficient maps.

Both algebra element types (exterior and Clifford) are sparse maps from a
generator bitmask to a backend scalar; this base class owns the linear
structure, grading, equality, and the array bridge used by the float
product kernels.
"""

from __future__ import annotations

import numpy as np


class BladeMap:
    __slots__ = ("dim", "field", "coeffs", "_arrays")

    def __init__(self, dim: int, field, coeffs=None) -> None:
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        self.field = field
        self._arrays = None
        clean = {}
        if coeffs:
            limit = 1 << dim
            for mask, value in coeffs.items():
                if not 0 <= mask < limit:
                    raise ValueError(f"blade mask {mask} out of range for dim {dim}")
                if not field.is_zero(value):
                    clean[mask] = value
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def _raw(cls, dim: int, field, coeffs: dict):
        """Internal constructor for masks already known to be in range."""
        out = object.__new__(cls)
        out.dim = dim
        out.field = field
        out.coeffs = {m: v for m, v in coeffs.items() if not field.is_zero(v)}
        out._arrays = None
        return out

    @classmethod
    def zero(cls, dim: int, field):
        return cls(dim, field)

    @classmethod
    def from_scalar(cls, value, dim: int, field):
        return cls(dim, field, {0: field.coerce(value)})

    @classmethod
    def one(cls, dim: int, field):
        return cls(dim, field, {0: field.one})

    @classmethod
    def blade(cls, mask: int, dim: int, field, coeff=None):
        value = field.one if coeff is None else field.coerce(coeff)
        return cls(dim, field, {mask: value})

    @classmethod
    def generator(cls, index: int, dim: int, field):
        """Basis generator by 1-based index."""
        if not 1 <= index <= dim:
            raise ValueError(f"generator index {index} out of range 1..{dim}")
        return cls(dim, field, {1 << (index - 1): field.one})

    # -- linear structure ------------------------------------------------------

    def _check_space(self, other) -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.field != other.field:
            raise ValueError("operands belong to different scalar backends")

    def _wrap(self, coeffs: dict):
        return type(self)._raw(self.dim, self.field, coeffs)

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        self._check_space(other)
        out = dict(self.coeffs)
        field = self.field
        for mask, value in other.coeffs.items():
            acc = out.get(mask, field.zero) + value
            if field.is_zero(acc):
                out.pop(mask, None)
            else:
                out[mask] = acc
        return self._wrap(out)

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self._wrap({mask: -value for mask, value in self.coeffs.items()})

    def scale(self, scalar):
        value = self.field.coerce(scalar)
        if self.field.is_zero(value):
            return self._wrap({})
        return self._wrap({mask: v * value for mask, v in self.coeffs.items()})

    # -- inspection ------------------------------------------------------------

    def coefficient(self, mask: int):
        return self.coeffs.get(mask, self.field.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def items(self):
        """Terms sorted by grade then mask (the canonical print order)."""
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))

    def grades(self) -> list[int]:
        return sorted({mask.bit_count() for mask in self.coeffs})

    def grade_project(self, k: int):
        if not 0 <= k <= self.dim:
            raise ValueError(f"grade {k} out of range 0..{self.dim}")
        return self._wrap(
            {mask: v for mask, v in self.coeffs.items() if mask.bit_count() == k}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        if self.dim != other.dim or self.field != other.field:
            return False
        field = self.field
        for mask in self.coeffs.keys() | other.coeffs.keys():
            if not field.eq(
                self.coeffs.get(mask, field.zero), other.coeffs.get(mask, field.zero)
            ):
                return False
        return True

    __hash__ = None  # dict backed; not hashable

    # -- kernel bridge -----------------------------------------------------------

    def _as_arrays(self):
        if self._arrays is None:
            masks = sorted(self.coeffs)
            vals = np.array([self.coeffs[m] for m in masks], dtype=np.complex128)
            self._arrays = (np.array(masks, dtype=np.int64), vals)
        return self._arrays

    def _from_arrays(self, masks, vals):
        return self._wrap(dict(zip(masks.tolist(), vals.tolist())))

    def _term_strings(self, blade_fmt) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({self.field.format_coeff(value)}) {blade_fmt(mask)}"
            for mask, value in self.items()
        )


def linear_combination(cls, dim: int, field, terms):
    """Sum of coefficient * element over (coefficient, element) pairs.

    The float backend accumulates into one dense array instead of merging
    dictionaries; with masks unique within each element, fancy in-place
    addition is exact. This is the hot path of the ordering isomorphism on
    dense inputs.
    """
    if field.exact:
        out: dict = {}
        for coeff, element in terms:
            if field.is_zero(coeff):
                continue
            for mask, value in element.coeffs.items():
                acc = out.get(mask, field.zero) + coeff * value
                if field.is_zero(acc):
                    out.pop(mask, None)
                else:
                    out[mask] = acc
        return cls._raw(dim, field, out)
    acc = np.zeros(1 << dim, dtype=np.complex128)
    for coeff, element in terms:
        if coeff == 0 or not element.coeffs:
            continue
        masks, vals = element._as_arrays()
        acc[masks] += coeff * vals
    nz = np.flatnonzero(acc)
    return cls._raw(dim, field, dict(zip(nz.tolist(), acc[nz].tolist())))
