"""Coefficient fields for the algebra kernel.

Two interchangeable backends cover every scalar the algebras produce: the
exact field Q(i, sqrt2), stored as four arbitrary-precision rationals, and
a complex double-precision backend with tolerance-based comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    # Same exact-rational semantics as Fraction, several times faster.
    from gmpy2 import mpq as _ratio
except ImportError:
    _ratio = Fraction

SQRT2_FLOAT = math.sqrt(2.0)

_Rational = (int, Fraction, type(_ratio(0)))


def _fmt_gaussian(re: Fraction, im: Fraction) -> str:
    """Compact rendering of re + im*i: "3/5", "1i", "1/2-1i"."""
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}i"
    sign = "+" if im > 0 else "-"
    return f"{re}{sign}{abs(im)}i"


class Scalar:
    """Exact element (a + b*i) + (c + d*i)*sqrt2 of Q(i, sqrt2).

    Components are reduced Fractions (lowest terms, positive denominator),
    so each field element has exactly one stored representation. Instances
    are immutable by convention; all operations return new values.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0) -> None:
        self.a = _ratio(a)
        self.b = _ratio(b)
        self.c = _ratio(c)
        self.d = _ratio(d)

    @classmethod
    def rational(cls, p: int, q: int = 1) -> Scalar:
        return cls(_ratio(p, q))

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, _Rational):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __add__(self, other) -> Scalar:
        if isinstance(other, _Rational):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other) -> Scalar:
        if isinstance(other, _Rational):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        if isinstance(other, _Rational):
            return Scalar(self.a * other, self.b * other, self.c * other, self.d * other)
        if not isinstance(other, Scalar):
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # (g1 + h1*sqrt2)(g2 + h2*sqrt2) = (g1*g2 + 2*h1*h2) + (g1*h2 + h1*g2)*sqrt2
        # with Gaussian-rational parts g = a + b*i, h = c + d*i.
        if not (c1 or d1 or c2 or d2):
            return Scalar(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2)
        ra = (a1 * a2 - b1 * b2) + 2 * (c1 * c2 - d1 * d2)
        rb = (a1 * b2 + b1 * a2) + 2 * (c1 * d2 + d1 * c2)
        sa = (a1 * c2 - b1 * d2) + (c1 * a2 - d1 * b2)
        sb = (a1 * d2 + b1 * c2) + (c1 * b2 + d1 * a2)
        return Scalar(ra, rb, sa, sb)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        a, b, c, d = self.a, self.b, self.c, self.d
        # With x = g + h*sqrt2, the product x*(g - h*sqrt2) = g^2 - 2*h^2 lies
        # in Q(i) and is nonzero (sqrt2 is not a Gaussian rational).
        na = (a * a - b * b) - 2 * (c * c - d * d)
        nb = 2 * (a * b - 2 * c * d)
        denom = na * na + nb * nb
        ia, ib = na / denom, -nb / denom
        return Scalar(
            a * ia - b * ib,
            a * ib + b * ia,
            -(c * ia - d * ib),
            -(c * ib + d * ia),
        )

    def __truediv__(self, other) -> Scalar:
        if isinstance(other, _Rational):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar(self.a / other, self.b / other, self.c / other, self.d / other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> Scalar:
        inv = self.inverse()
        return inv * other

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> Scalar:
        """Complex conjugate: fixes the sqrt2 direction, negates both i parts."""
        return Scalar(self.a, -self.b, self.c, -self.d)

    def is_real(self) -> bool:
        return not (self.b or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def to_complex(self) -> complex:
        return complex(
            float(self.a) + float(self.c) * SQRT2_FLOAT,
            float(self.b) + float(self.d) * SQRT2_FLOAT,
        )

    def __str__(self) -> str:
        if not self:
            return "0"
        lead = ""
        if self.a or self.b or not (self.c or self.d):
            if self.b == 0:
                lead = str(self.a)
            else:
                sign = "+" if self.b > 0 else "-"
                lead = f"{self.a}{sign}{abs(self.b)}i"
        if not (self.c or self.d):
            return lead
        tail = f"({_fmt_gaussian(self.c, self.d)})sqrt2"
        return f"{lead}+{tail}" if lead else tail

    def compact(self) -> str:
        """Coefficient form with zero parts dropped: "-1i", "1/2+(1)sqrt2"."""
        if not self:
            return "0"
        parts = []
        if self.a or self.b:
            parts.append(_fmt_gaussian(self.a, self.b))
        if self.c or self.d:
            parts.append(f"({_fmt_gaussian(self.c, self.d)})sqrt2")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Scalar({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)
SQRT2 = Scalar(0, 0, 1)


def format_complex(z: complex, compact: bool = False) -> str:
    """Render a float-backend scalar with 12 significant digits."""
    if z == 0:
        return "0"
    re = z.real + 0.0  # clear negative zero
    im = z.imag + 0.0
    if im == 0:
        return f"{re:.12g}"
    if compact and re == 0:
        return f"{im:.12g}i"
    return f"{re:.12g}{im:+.12g}i"


class ExactField:
    """Backend operations over Q(i, sqrt2); all comparisons are exact."""

    name = "exact"
    exact = True
    tol = 0.0

    zero = ZERO
    one = ONE
    i = I
    sqrt2 = SQRT2

    def coerce(self, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, _Rational):
            return Scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into the exact field")

    def conj(self, x: Scalar) -> Scalar:
        return x.conjugate()

    def eq(self, x: Scalar, y: Scalar) -> bool:
        return x == y

    def is_zero(self, x: Scalar) -> bool:
        return not x

    def is_real(self, x: Scalar) -> bool:
        return x.is_real()

    def to_complex(self, x: Scalar) -> complex:
        return x.to_complex()

    def format(self, x: Scalar) -> str:
        return str(x)

    def format_coeff(self, x: Scalar) -> str:
        return x.compact()

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactField)

    def __hash__(self) -> int:
        return hash("exact")

    def __repr__(self) -> str:
        return "ExactField()"


class FloatField:
    """Complex double backend; equality uses a relative-or-absolute tolerance."""

    name = "float"
    exact = False

    zero = 0j
    one = 1 + 0j
    i = 1j
    sqrt2 = complex(SQRT2_FLOAT)

    def __init__(self, tol: float = 1e-9) -> None:
        if tol < 0:
            raise ValueError("tolerance must be nonnegative")
        self.tol = tol

    def coerce(self, x) -> complex:
        if isinstance(x, Scalar):
            return x.to_complex()
        if isinstance(x, (int, float, complex, Fraction)):
            return complex(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into the float field")

    def conj(self, x: complex) -> complex:
        return x.conjugate()

    def eq(self, x: complex, y: complex) -> bool:
        return abs(x - y) <= self.tol * max(1.0, abs(x), abs(y))

    def is_zero(self, x: complex) -> bool:
        return x == 0

    def is_real(self, x: complex) -> bool:
        return abs(x.imag) <= self.tol * max(1.0, abs(x))

    def to_complex(self, x: complex) -> complex:
        return x

    def format(self, x: complex) -> str:
        return format_complex(x)

    def format_coeff(self, x: complex) -> str:
        return format_complex(x, compact=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, FloatField) and other.tol == self.tol

    def __hash__(self) -> int:
        return hash(("float", self.tol))

    def __repr__(self) -> str:
        return f"FloatField(tol={self.tol!r})"


EXACT = ExactField()
