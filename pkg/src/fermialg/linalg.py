"""Small dense matrices over an arbitrary coefficient backend.

Matrices are tuples of row tuples. Entries only need the arithmetic
operators plus the backend's is_zero/eq; this keeps one implementation
working for exact scalars, plain Fractions, and complex floats. Sizes here
never exceed 2^(2M) for the ordering-map checks, so cubic algorithms are
fine.
"""

from __future__ import annotations

from fractions import Fraction


class FractionDomain:
    """Backend adapter so plain Fractions work with the routines below."""

    exact = True
    zero = Fraction(0)
    one = Fraction(1)

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, x, y) -> bool:
        return x == y

    def to_complex(self, x) -> complex:
        return complex(x)


FRACTIONS = FractionDomain()


def identity(n, field):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def transpose(a):
    return tuple(zip(*a))


def mat_mul(a, b, field):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = field.zero
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v, field):
    out = []
    for row in a:
        acc = field.zero
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_eq(a, b, field) -> bool:
    if len(a) != len(b) or len(a[0]) != len(b[0]):
        return False
    return all(field.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_inv(a, field):
    """Gauss-Jordan inverse; raises ValueError on a singular matrix.

    Exact backends take the first nonzero pivot; the float backend picks
    the largest magnitude pivot for stability.
    """
    n = len(a)
    aug = [list(row) + list(ident_row) for row, ident_row in zip(a, identity(n, field))]
    for col in range(n):
        pivot = None
        if field.exact:
            for r in range(col, n):
                if not field.is_zero(aug[r][col]):
                    pivot = r
                    break
        else:
            best = 0.0
            for r in range(col, n):
                mag = abs(aug[r][col])
                if mag > best:
                    best, pivot = mag, r
            if best <= 1e-13:
                pivot = None
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = field.one / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if field.is_zero(factor):
                continue
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def is_invertible(a, field) -> bool:
    try:
        mat_inv(a, field)
    except ValueError:
        return False
    return True


def embed_matrix(a, field):
    """Coerce every entry (Fraction/Scalar/number) into the target backend."""
    return tuple(tuple(field.coerce(x) for x in row) for row in a)
