"""Orthogonal complex structures and the splitting machinery they induce.

A structure J on the 2M-dimensional real space turns it into an
M-dimensional complex space; complexifying J splits the 2M complex
generators into two isotropic eigenspaces, reached from a unitary basis by
the maps gamma_plus and gamma_minus. The canonical two-form and the
preferred top form built from these maps drive the expectation functional.

Structures and unitary bases are stored exactly (Fractions and exact
scalars) regardless of the active backend; operations embed them into the
requested field on use. The one exception is the float-only basis
completion for a bare J loaded from a config file.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .exterior import Multivector, Vector, reversal_parity
from .linalg import FRACTIONS, identity, mat_inv, mat_mul, mat_vec, transpose
from .scalars import EXACT, Scalar

PLUS = "+"
MINUS = "-"


class ComplexStructure:
    """An orthogonal complex structure: 2M x 2M rational J with J^T J = I, J^2 = -I."""

    __slots__ = ("m", "j")

    def __init__(self, m: int, j) -> None:
        if m < 1:
            raise ValueError("dimension parameter must be at least 1")
        n = 2 * m
        rows = tuple(tuple(Fraction(x) for x in row) for row in j)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"J must be {n}x{n}")
        self.m = m
        self.j = rows
        jt = transpose(rows)
        if mat_mul(jt, rows, FRACTIONS) != identity(n, FRACTIONS):
            raise ValueError("J is not orthogonal")
        minus_id = tuple(tuple(-x for x in row) for row in identity(n, FRACTIONS))
        if mat_mul(rows, rows, FRACTIONS) != minus_id:
            raise ValueError("J does not square to -identity")

    @property
    def dim(self) -> int:
        return 2 * self.m

    def matrix(self, field):
        return tuple(tuple(field.coerce(x) for x in row) for row in self.j)

    def apply(self, v: Vector) -> Vector:
        jf = self.matrix(v.field)
        return Vector(mat_vec(jf, v.components, v.field), v.field)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ComplexStructure)
            and self.m == other.m
            and self.j == other.j
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"ComplexStructure(m={self.m})"


class UnitaryBasis:
    """M vectors whose doubled family {v_m, J v_m} is orthonormal.

    Components may be exact scalars (any backend can use them) or plain
    floats (float backend only, produced by the Gram-Schmidt completion).
    """

    __slots__ = ("vectors",)

    def __init__(self, vectors) -> None:
        vecs = tuple(tuple(row) for row in vectors)
        if not vecs:
            raise ValueError("basis must contain at least one vector")
        width = len(vecs[0])
        if any(len(row) != width for row in vecs):
            raise ValueError("basis vectors must share one dimension")
        self.vectors = vecs

    @property
    def m(self) -> int:
        return len(self.vectors)

    def vector(self, index: int, field) -> Vector:
        """1-based accessor, coerced into the requested backend."""
        return Vector(self.vectors[index - 1], field)

    def all_vectors(self, field) -> list[Vector]:
        return [Vector(row, field) for row in self.vectors]


def validate_pair(structure: ComplexStructure, basis: UnitaryBasis, field) -> None:
    """Check the doubled-family orthonormality of a (J, basis) pair.

    (v_m | v_n) = delta and (J v_m | v_n) = 0 suffice: orthogonality of J
    supplies the remaining inner products of the doubled family.
    """
    if basis.m != structure.m:
        raise ValueError(
            f"basis has {basis.m} vectors, structure needs {structure.m}"
        )
    vecs = basis.all_vectors(field)
    if any(len(v.components) != structure.dim for v in vecs):
        raise ValueError("basis vector length does not match the structure")
    jvecs = [structure.apply(v) for v in vecs]
    for a, va in enumerate(vecs):
        if not va.is_real():
            raise ValueError("basis vectors must be real")
        for b, vb in enumerate(vecs):
            want = field.one if a == b else field.zero
            if not field.eq(va.bilinear(vb), want):
                raise ValueError("basis is not orthonormal")
            if not field.eq(jvecs[a].bilinear(vb), field.zero):
                raise ValueError("basis is not unitary for the structure")


def standard_structure(m: int) -> tuple[ComplexStructure, UnitaryBasis]:
    """Block-diagonal model: J e_{2k-1} = e_{2k}, basis v_k = e_{2k-1}."""
    if m < 1:
        raise ValueError("dimension parameter must be at least 1")
    n = 2 * m
    rows = [[Fraction(0)] * n for _ in range(n)]
    for k in range(m):
        rows[2 * k + 1][2 * k] = Fraction(1)
        rows[2 * k][2 * k + 1] = Fraction(-1)
    basis = UnitaryBasis(
        [
            [Scalar(1) if i == 2 * k else Scalar(0) for i in range(n)]
            for k in range(m)
        ]
    )
    return ComplexStructure(m, rows), basis


def cayley_orthogonal(antisym):
    """Rational orthogonal Q = (I - A)(I + A)^-1 of a rational antisymmetric A.

    I + A is always invertible for antisymmetric A (its kernel would give
    a vector with (x|Ax) = -|x|^2 = 0), so this never fails on valid input.
    """
    n = len(antisym)
    rows = tuple(tuple(Fraction(x) for x in row) for row in antisym)
    for r in range(n):
        for c in range(n):
            if rows[r][c] != -rows[c][r]:
                raise ValueError("matrix is not antisymmetric")
    eye = identity(n, FRACTIONS)
    i_minus = tuple(
        tuple(e - x for e, x in zip(erow, arow)) for erow, arow in zip(eye, rows)
    )
    i_plus = tuple(
        tuple(e + x for e, x in zip(erow, arow)) for erow, arow in zip(eye, rows)
    )
    return mat_mul(i_minus, mat_inv(i_plus, FRACTIONS), FRACTIONS)


def random_structure(m: int, seed: int) -> tuple[ComplexStructure, UnitaryBasis]:
    """Cayley-conjugated copy of the standard model, exactly rational.

    Draws a rational antisymmetric A from the seed and returns Q J0 Q^T
    with basis Q e_{2k-1}, where Q is the Cayley transform of A; both
    structure invariants hold exactly by construction.
    """
    if m < 1:
        raise ValueError("dimension parameter must be at least 1")
    rng = random.Random(seed)
    n = 2 * m
    a = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        for c in range(r + 1, n):
            x = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            a[r][c] = x
            a[c][r] = -x
    q = cayley_orthogonal(a)
    j0, _ = standard_structure(m)
    j = mat_mul(mat_mul(q, j0.j, FRACTIONS), transpose(q), FRACTIONS)
    basis = UnitaryBasis(
        [[Scalar(q[r][2 * k]) for r in range(n)] for k in range(m)]
    )
    return ComplexStructure(m, j), basis


def basis_from_structure_float(
    structure: ComplexStructure, tol: float = 1e-9
) -> UnitaryBasis:
    """Float-only unitary-basis completion for a bare J.

    Greedy Gram-Schmidt over {v, Jv} pairs seeded with the standard basis;
    exact normalization can leave Q(i, sqrt2), so this path never claims
    exactness.
    """
    n = structure.dim
    j = [[float(x) for x in row] for row in structure.j]
    accepted: list[list[float]] = []
    pairs: list[list[float]] = []
    for cand_idx in range(n):
        if len(accepted) == structure.m:
            break
        w = [1.0 if i == cand_idx else 0.0 for i in range(n)]
        for u in pairs:
            coeff = sum(x * y for x, y in zip(u, w))
            w = [x - coeff * y for x, y in zip(w, u)]
        norm = math.sqrt(sum(x * x for x in w))
        if norm <= tol:
            continue
        v = [x / norm for x in w]
        jv = [sum(j[r][c] * v[c] for c in range(n)) for r in range(n)]
        accepted.append(v)
        pairs.extend([v, jv])
    if len(accepted) != structure.m:
        raise ValueError("could not complete a unitary basis for the structure")
    return UnitaryBasis(accepted)


def j_inner(structure: ComplexStructure, x: Vector, y: Vector):
    """<x|y>_J = (x|y) + i (Jx|y) on real vectors."""
    if not (x.is_real() and y.is_real()):
        raise ValueError("the J-inner product is defined on real vectors")
    field = x.field
    return x.bilinear(y) + structure.apply(x).bilinear(y) * field.i


def gamma_vec(structure: ComplexStructure, v: Vector, sign: str) -> Vector:
    """v -> (v -/+ i Jv) / sqrt2 into the +/-i eigenspace of the complexified J."""
    if sign not in (PLUS, MINUS):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if not v.is_real():
        raise ValueError("gamma maps are defined on real vectors")
    field = v.field
    jv = structure.apply(v).scale(field.i)
    shifted = v - jv if sign == PLUS else v + jv
    return shifted.scale(field.one / field.sqrt2)


def gamma_ext(
    structure: ComplexStructure,
    basis: UnitaryBasis,
    xi: Multivector,
    sign: str,
) -> Multivector:
    """Functorial extension of the gamma maps to the exterior algebra.

    Input lives over the M basis generators; the plus map extends as an
    algebra homomorphism, the minus map as the conjugate-linear
    antihomomorphism (blades rewritten back-to-front, coefficients
    conjugated).
    """
    if xi.dim != structure.m:
        raise ValueError(
            f"coefficient space has {xi.dim} generators, expected {structure.m}"
        )
    field = xi.field
    n = structure.dim
    images = [
        gamma_vec(structure, basis.vector(k + 1, field), sign).to_multivector()
        for k in range(structure.m)
    ]
    cache: dict[int, Multivector] = {0: Multivector.one(n, field)}

    def blade_image(mask: int) -> Multivector:
        cached = cache.get(mask)
        if cached is None:
            low = mask & -mask
            cached = images[low.bit_length() - 1].wedge(blade_image(mask ^ low))
            cache[mask] = cached
        return cached

    acc = Multivector.zero(n, field)
    for mask, value in xi.coeffs.items():
        if sign == MINUS:
            value = field.conj(value)
            if reversal_parity(mask.bit_count()):
                value = -value
        acc = acc + blade_image(mask).scale(value)
    return acc


def gamma_form(structure: ComplexStructure, basis: UnitaryBasis, field) -> Multivector:
    """The canonical two-form sum_m gamma+(v_m) ^ gamma-(v_m)."""
    acc = Multivector.zero(structure.dim, field)
    for k in range(structure.m):
        v = basis.vector(k + 1, field)
        plus = gamma_vec(structure, v, PLUS).to_multivector()
        minus = gamma_vec(structure, v, MINUS).to_multivector()
        acc = acc + plus.wedge(minus)
    return acc


def omega_form(structure: ComplexStructure, basis: UnitaryBasis, field) -> Multivector:
    """The preferred unit top form (1/M!) (-gamma)^M."""
    gamma = gamma_form(structure, basis, field)
    acc = Multivector.one(structure.dim, field)
    for _ in range(structure.m):
        acc = acc.wedge(-gamma)
    return acc.scale(Fraction(1, math.factorial(structure.m)))


def interleaved_top_form(
    structure: ComplexStructure, basis: UnitaryBasis, field
) -> Multivector:
    """gamma-(v_1) ^ gamma+(v_1) ^ ... ^ gamma-(v_M) ^ gamma+(v_M)."""
    acc = Multivector.one(structure.dim, field)
    for k in range(structure.m):
        v = basis.vector(k + 1, field)
        acc = acc.wedge(gamma_vec(structure, v, MINUS).to_multivector())
        acc = acc.wedge(gamma_vec(structure, v, PLUS).to_multivector())
    return acc


def eigenprojectors(structure: ComplexStructure, field):
    """(P_minus, P_plus) with P_pm = (I -/+ i J)/2 projecting onto the -/+i eigenspaces."""
    n = structure.dim
    j = structure.matrix(field)
    half = field.one / field.coerce(2)
    eye = identity(n, field)
    p_minus = tuple(
        tuple((eye[r][c] + field.i * j[r][c]) * half for c in range(n))
        for r in range(n)
    )
    p_plus = tuple(
        tuple((eye[r][c] - field.i * j[r][c]) * half for c in range(n))
        for r in range(n)
    )
    return p_minus, p_plus


__all__ = [
    "ComplexStructure",
    "cayley_orthogonal",
    "UnitaryBasis",
    "validate_pair",
    "standard_structure",
    "random_structure",
    "basis_from_structure_float",
    "j_inner",
    "gamma_vec",
    "gamma_ext",
    "gamma_form",
    "omega_form",
    "interleaved_top_form",
    "eigenprojectors",
    "PLUS",
    "MINUS",
    "EXACT",
]
