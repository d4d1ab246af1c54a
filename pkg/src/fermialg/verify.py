"""Randomized and exhaustive verification of every identity in the kernel.

Each identity is one named check producing PASS/FAIL plus the worst error
seen (always zero on the exact backend unless the check fails). Failing
checks ship a minimized counterexample: inputs are shrunk term by term
while the identity keeps failing.

Checks draw from independent, deterministically seeded generators, so a
report depends only on (context, trials, seed), never on job count.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from ._coeffmap import BladeMap
from .clifford import CliffordElement, from_vector
from .exterior import (
    Multivector,
    Vector,
    ext_exp,
    substitute_generators,
)
from .linalg import identity, mat_inv, mat_mul
from .scalars import EXACT, Scalar
from .structure import (
    MINUS,
    PLUS,
    UnitaryBasis,
    eigenprojectors,
    gamma_form,
    gamma_vec,
    interleaved_top_form,
    j_inner,
    omega_form,
)

# ---------------------------------------------------------------------------
# random input generation


def random_fraction(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_scalar(field, rng: random.Random, real: bool = False):
    if field.exact:
        return Scalar(
            random_fraction(rng),
            0 if real else random_fraction(rng),
            random_fraction(rng) if rng.random() < 0.4 else 0,
            0 if real else (random_fraction(rng) if rng.random() < 0.4 else 0),
        )
    return complex(rng.uniform(-2, 2), 0.0 if real else rng.uniform(-2, 2))


def random_rational_scalar(field, rng: random.Random):
    """Real rational coefficient (float backend: a plain real double)."""
    if field.exact:
        return Scalar(random_fraction(rng))
    return complex(rng.uniform(-2, 2), 0.0)


def random_vector(dim: int, field, rng: random.Random, real: bool = True) -> Vector:
    return Vector([random_scalar(field, rng, real=real) for _ in range(dim)], field)


def random_rational_vector(dim: int, field, rng: random.Random) -> Vector:
    return Vector([random_rational_scalar(field, rng) for _ in range(dim)], field)


def _pick_density(dim: int, density, rng: random.Random) -> float:
    if density is not None:
        return density
    # Aim for a handful of blades per element so product costs stay flat
    # as the dimension grows; one trial in five goes denser.
    base = min(0.6, 10.0 / (1 << dim))
    if rng.random() < 0.2:
        base = min(0.6, 3 * base)
    return base


def random_multivector(
    dim: int,
    field,
    rng: random.Random,
    density: float | None = None,
    parity=None,
    grade=None,
) -> Multivector:
    density = _pick_density(dim, density, rng)
    coeffs = {}
    for mask in range(1 << dim):
        k = mask.bit_count()
        if grade is not None and k != grade:
            continue
        if parity is not None and (k & 1) != parity:
            continue
        if rng.random() < density:
            coeffs[mask] = random_scalar(field, rng)
    return Multivector(dim, field, coeffs)


def random_clifford(
    dim: int, field, rng: random.Random, density: float | None = None
) -> CliffordElement:
    density = _pick_density(dim, density, rng)
    coeffs = {
        mask: random_scalar(field, rng)
        for mask in range(1 << dim)
        if rng.random() < density
    }
    return CliffordElement(dim, field, coeffs)


def random_invertible_matrix(n: int, field, rng: random.Random):
    for _ in range(32):
        rows = tuple(
            tuple(random_scalar(field, rng) for _ in range(n)) for _ in range(n)
        )
        try:
            mat_inv(rows, field)
        except ValueError:
            continue
        return rows
    raise RuntimeError("failed to sample an invertible matrix")


# ---------------------------------------------------------------------------
# comparison, shrinking, check harness


@dataclass
class CheckResult:
    name: str
    passed: bool
    trials: int
    max_err: float
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} (trials={self.trials}, max_err={self.max_err:.3g})"
        if self.counterexample:
            text += f" counterexample: {self.counterexample}"
        return text


@dataclass
class VerifyReport:
    backend: str
    m: int
    seed: int
    trials: int
    kernel: str
    results: list[CheckResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_err(self) -> float:
        return max((r.max_err for r in self.results), default=0.0)

    def format_text(self) -> str:
        return "\n".join(r.line() for r in self.results)

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "m": self.m,
            "seed": self.seed,
            "trials": self.trials,
            "kernel": self.kernel,
            "passed": self.passed,
            "max_err": self.max_err,
            "checks": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "trials": r.trials,
                    "max_err": r.max_err,
                    "counterexample": r.counterexample,
                }
                for r in self.results
            ],
        }

    def summary(self) -> dict:
        failed = [r.name for r in self.results if not r.passed]
        return {
            "passed": self.passed,
            "checks": len(self.results),
            "failed": failed,
            "max_err": self.max_err,
        }


def _value_error(field, lhs, rhs) -> tuple[bool, float]:
    if isinstance(lhs, BladeMap):
        ok = lhs == rhs
        err = 0.0
        for mask in lhs.coeffs.keys() | rhs.coeffs.keys():
            diff = field.to_complex(lhs.coefficient(mask)) - field.to_complex(
                rhs.coefficient(mask)
            )
            err = max(err, abs(diff))
        return ok, err
    if isinstance(lhs, Vector):
        ok = lhs == rhs
        err = max(
            abs(field.to_complex(x) - field.to_complex(y))
            for x, y in zip(lhs.components, rhs.components)
        )
        return ok, err
    if isinstance(lhs, tuple):  # matrix
        ok, err = True, 0.0
        for ra, rb in zip(lhs, rhs):
            for x, y in zip(ra, rb):
                ok = ok and field.eq(x, y)
                err = max(err, abs(field.to_complex(x) - field.to_complex(y)))
        return ok, err
    ok = field.eq(lhs, rhs)
    err = abs(field.to_complex(lhs) - field.to_complex(rhs))
    return ok, err


def _pairs_ok(field, pairs) -> tuple[bool, float]:
    ok, err = True, 0.0
    for lhs, rhs in pairs:
        pok, perr = _value_error(field, lhs, rhs)
        ok = ok and pok
        err = max(err, perr)
    return ok, err


def _simplifications(value):
    if isinstance(value, BladeMap):
        field = value.field
        masks = sorted(value.coeffs)
        if len(masks) > 1:
            for mask in masks:
                rest = dict(value.coeffs)
                rest.pop(mask)
                yield type(value)._raw(value.dim, field, rest)
        for mask in masks:
            if not field.eq(value.coeffs[mask], field.one):
                simpler = dict(value.coeffs)
                simpler[mask] = field.one
                yield type(value)._raw(value.dim, field, simpler)
    elif isinstance(value, Vector):
        field = value.field
        for idx, comp in enumerate(value.components):
            if not field.is_zero(comp):
                comps = list(value.components)
                comps[idx] = field.zero
                yield Vector(comps, field)
            if not field.eq(comp, field.one):
                comps = list(value.components)
                comps[idx] = field.one
                yield Vector(comps, field)


def _shrink(inputs, still_fails, budget: int = 120):
    current = list(inputs)
    spent = 0
    improved = True
    while improved and spent < budget:
        improved = False
        for idx in range(len(current)):
            for candidate in _simplifications(current[idx]):
                spent += 1
                trial = list(current)
                trial[idx] = candidate
                try:
                    bad = still_fails(trial)
                except (ValueError, ZeroDivisionError):
                    bad = False
                if bad:
                    current = trial
                    improved = True
                    break
                if spent >= budget:
                    break
            if improved or spent >= budget:
                break
    return current


def _describe(inputs) -> str:
    return "; ".join(str(x) for x in inputs)


def _run_identity(name, ctx, rng, trials, sample, compute) -> CheckResult:
    field = ctx.field
    max_err = 0.0
    for _ in range(trials):
        inputs = sample(rng)
        ok, err = _pairs_ok(field, compute(ctx, *inputs))
        max_err = max(max_err, err)
        if not ok:

            def still_fails(candidate):
                return not _pairs_ok(field, compute(ctx, *candidate))[0]

            small = _shrink(inputs, still_fails)
            return CheckResult(name, False, trials, max_err, _describe(small))
    return CheckResult(name, True, trials, max_err, None)


def _run_cases(name, ctx, cases, compute) -> CheckResult:
    """Exhaustive variant: every case is checked, trials reports the count."""
    field = ctx.field
    max_err = 0.0
    count = 0
    for inputs in cases:
        count += 1
        ok, err = _pairs_ok(field, compute(ctx, *inputs))
        max_err = max(max_err, err)
        if not ok:
            return CheckResult(name, False, count, max_err, _describe(inputs))
    return CheckResult(name, True, count, max_err, None)


# ---------------------------------------------------------------------------
# the identity catalog

CATALOG: list = []


def _check(name: str):
    def register(fn):
        CATALOG.append((name, fn))
        return fn

    return register


@_check("scalar_field_axioms")
def _scalar_axioms(ctx, rng, trials):
    field = ctx.field

    def sample(rng):
        return (
            random_scalar(field, rng),
            random_scalar(field, rng),
            random_scalar(field, rng),
        )

    def compute(ctx, x, y, z):
        field = ctx.field
        pairs = [
            ((x + y) + z, x + (y + z)),
            ((x * y) * z, x * (y * z)),
            (x * y, y * x),
            (x * (y + z), x * y + x * z),
            (x + (-x), field.zero),
        ]
        if not field.is_zero(x):
            pairs.append((x * (field.one / x), field.one))
        return pairs

    return _run_identity("scalar_field_axioms", ctx, rng, trials, sample, compute)


@_check("scalar_conjugation_automorphism")
def _scalar_conj(ctx, rng, trials):
    field = ctx.field

    def sample(rng):
        return (random_scalar(field, rng), random_scalar(field, rng))

    def compute(ctx, x, y):
        field = ctx.field
        return [
            (field.conj(x * y), field.conj(x) * field.conj(y)),
            (field.conj(x + y), field.conj(x) + field.conj(y)),
            (field.conj(field.conj(x)), x),
        ]

    return _run_identity(
        "scalar_conjugation_automorphism", ctx, rng, trials, sample, compute
    )


@_check("scalar_backend_agreement")
def _scalar_backends(ctx, rng, trials):
    # Exact expressions re-evaluated in floats must agree to 1e-12; this
    # check is backend independent and uses its own fields.
    max_err = 0.0
    for _ in range(trials):
        xs = [random_scalar(EXACT, rng) for _ in range(4)]
        exact_val = (xs[0] * xs[1] + xs[2]) * xs[3] - xs[1]
        if not EXACT.is_zero(xs[3]):
            exact_val = exact_val + xs[0] / xs[3]
        fs = [x.to_complex() for x in xs]
        float_val = (fs[0] * fs[1] + fs[2]) * fs[3] - fs[1]
        if fs[3] != 0:
            float_val = float_val + fs[0] / fs[3]
        err = abs(exact_val.to_complex() - float_val)
        max_err = max(max_err, err)
        if err > 1e-12:
            return CheckResult(
                "scalar_backend_agreement", False, trials, max_err, _describe(xs)
            )
    return CheckResult("scalar_backend_agreement", True, trials, max_err, None)


@_check("wedge_graded_anticommutativity")
def _wedge_anticomm(ctx, rng, trials):
    def sample(rng):
        p = rng.randint(0, ctx.dim)
        q = rng.randint(0, ctx.dim)
        return (
            random_multivector(ctx.dim, ctx.field, rng, density=0.6, grade=p),
            random_multivector(ctx.dim, ctx.field, rng, density=0.6, grade=q),
            p,
            q,
        )

    def compute(ctx, a, b, p, q):
        flipped = b.wedge(a)
        if (p * q) & 1:
            flipped = -flipped
        return [(a.wedge(b), flipped)]

    return _run_identity(
        "wedge_graded_anticommutativity", ctx, rng, trials, sample, compute
    )


@_check("wedge_associativity")
def _wedge_assoc(ctx, rng, trials):
    def sample(rng):
        return tuple(
            random_multivector(ctx.dim, ctx.field, rng) for _ in range(3)
        )

    def compute(ctx, a, b, c):
        return [(a.wedge(b).wedge(c), a.wedge(b.wedge(c)))]

    return _run_identity("wedge_associativity", ctx, rng, trials, sample, compute)


@_check("det_inner_hermitian")
def _det_inner_hermitian(ctx, rng, trials):
    def sample(rng):
        return (
            random_multivector(ctx.dim, ctx.field, rng),
            random_multivector(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, a, b):
        return [(a.det_inner(b), ctx.field.conj(b.det_inner(a)))]

    return _run_identity("det_inner_hermitian", ctx, rng, trials, sample, compute)


@_check("det_inner_blade_orthonormal")
def _det_inner_gram(ctx, rng, trials):
    field = ctx.field
    if ctx.dim <= 6:
        cases = itertools.product(range(1 << ctx.dim), repeat=2)
    else:
        cases = (
            (rng.randrange(1 << ctx.dim), rng.randrange(1 << ctx.dim))
            for _ in range(max(trials, 200))
        )

    def compute(ctx, s, t):
        a = Multivector.blade(s, ctx.dim, field)
        b = Multivector.blade(t, ctx.dim, field)
        want = field.one if s == t else field.zero
        return [(a.det_inner(b), want)]

    return _run_cases("det_inner_blade_orthonormal", ctx, cases, compute)


@_check("substitution_functoriality")
def _subst_functorial(ctx, rng, trials):
    def sample(rng):
        return (
            random_invertible_matrix(ctx.dim, ctx.field, rng),
            random_invertible_matrix(ctx.dim, ctx.field, rng),
            random_multivector(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, b1, b2, a):
        composed = substitute_generators(a, mat_mul(b1, b2, ctx.field))
        staged = substitute_generators(substitute_generators(a, b2), b1)
        return [(composed, staged)]

    return _run_identity(
        "substitution_functoriality", ctx, rng, max(2, trials // 8), sample, compute
    )


@_check("ext_exp_group_law")
def _ext_exp_group(ctx, rng, trials):
    def sample(rng):
        coeffs = {}
        for mask in range(1 << ctx.dim):
            if mask.bit_count() in (2, 4) and rng.random() < min(0.4, 8.0 / (1 << ctx.dim)):
                coeffs[mask] = random_scalar(ctx.field, rng)
        return (Multivector(ctx.dim, ctx.field, coeffs),)

    def compute(ctx, a):
        one = Multivector.one(ctx.dim, ctx.field)
        return [(ext_exp(a).wedge(ext_exp(-a)), one)]

    return _run_identity("ext_exp_group_law", ctx, rng, trials, sample, compute)


@_check("clifford_vector_square")
def _cl_vector_square(ctx, rng, trials):
    def sample(rng):
        return (random_vector(ctx.dim, ctx.field, rng, real=False),)

    def compute(ctx, z):
        cz = from_vector(z)
        want = CliffordElement.from_scalar(z.bilinear(z), ctx.dim, ctx.field)
        return [(cz * cz, want)]

    return _run_identity("clifford_vector_square", ctx, rng, trials, sample, compute)


@_check("clifford_polarization")
def _cl_polarization(ctx, rng, trials):
    def sample(rng):
        return (
            random_vector(ctx.dim, ctx.field, rng, real=False),
            random_vector(ctx.dim, ctx.field, rng, real=False),
        )

    def compute(ctx, x, y):
        cx, cy = from_vector(x), from_vector(y)
        two = ctx.field.coerce(2)
        want = CliffordElement.from_scalar(x.bilinear(y) * two, ctx.dim, ctx.field)
        return [(cx * cy + cy * cx, want)]

    return _run_identity("clifford_polarization", ctx, rng, trials, sample, compute)


@_check("trace_properties")
def _trace_props(ctx, rng, trials):
    def sample(rng):
        return (
            random_clifford(ctx.dim, ctx.field, rng),
            random_clifford(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, a, b):
        field = ctx.field
        one = CliffordElement.one(ctx.dim, field)
        return [
            ((a * b).trace(), (b * a).trace()),
            (a.grade_automorphism().trace(), a.trace()),
            (a.star().trace(), field.conj(a.trace())),
            (one.trace(), field.one),
        ]

    return _run_identity("trace_properties", ctx, rng, trials, sample, compute)


@_check("grade_automorphism_multiplicative")
def _grade_auto(ctx, rng, trials):
    def sample(rng):
        return (
            random_clifford(ctx.dim, ctx.field, rng),
            random_clifford(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, a, b):
        return [
            (
                (a * b).grade_automorphism(),
                a.grade_automorphism() * b.grade_automorphism(),
            ),
            (a.grade_automorphism().grade_automorphism(), a),
        ]

    return _run_identity(
        "grade_automorphism_multiplicative", ctx, rng, trials, sample, compute
    )


@_check("star_antiautomorphism")
def _star_antiauto(ctx, rng, trials):
    def sample(rng):
        return (
            random_clifford(ctx.dim, ctx.field, rng),
            random_clifford(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, a, b):
        return [
            ((a * b).star(), b.star() * a.star()),
            (a.star().star(), a),
        ]

    return _run_identity("star_antiautomorphism", ctx, rng, trials, sample, compute)


@_check("monomial_gram_identity")
def _monomial_gram(ctx, rng, trials):
    field = ctx.field
    if ctx.dim <= 6:
        cases = itertools.product(range(1 << ctx.dim), repeat=2)
    else:
        cases = (
            (rng.randrange(1 << ctx.dim), rng.randrange(1 << ctx.dim))
            for _ in range(max(trials, 200))
        )

    def compute(ctx, s, t):
        a = CliffordElement.blade(s, ctx.dim, field)
        b = CliffordElement.blade(t, ctx.dim, field)
        want = field.one if s == t else field.zero
        return [(a.tracial_inner(b), want)]

    return _run_cases("monomial_gram_identity", ctx, cases, compute)


@_check("tracial_inner_restricts_to_vectors")
def _tracial_vectors(ctx, rng, trials):
    def sample(rng):
        return (
            random_vector(ctx.dim, ctx.field, rng, real=False),
            random_vector(ctx.dim, ctx.field, rng, real=False),
        )

    def compute(ctx, x, y):
        return [(from_vector(x).tracial_inner(from_vector(y)), x.sesquilinear(y))]

    return _run_identity(
        "tracial_inner_restricts_to_vectors", ctx, rng, trials, sample, compute
    )


@_check("eigenspace_clifford_relations")
def _eigenspace_relations(ctx, rng, trials):
    field = ctx.field
    cases = itertools.product(range(1, ctx.m + 1), range(1, ctx.m + 1))

    def compute(ctx, i, k):
        zero = CliffordElement.zero(ctx.dim, field)
        fm_i, fm_k = ctx.clifford_minus(i), ctx.clifford_minus(k)
        fp_i, fp_k = ctx.clifford_plus(i), ctx.clifford_plus(k)
        delta = field.one if i == k else field.zero
        cross = CliffordElement.from_scalar(field.coerce(2) * delta, ctx.dim, field)
        return [
            (fm_i * fm_k + fm_k * fm_i, zero),
            (fp_i * fp_k + fp_k * fp_i, zero),
            (fm_i * fp_k + fp_k * fm_i, cross),
        ]

    return _run_cases("eigenspace_clifford_relations", ctx, cases, compute)


@_check("eigenprojector_identities")
def _eigenprojector_ids(ctx, rng, trials):
    field = ctx.field
    p_minus, p_plus = eigenprojectors(ctx.structure, field)
    jmat = ctx.structure.matrix(field)
    eye = identity(ctx.dim, field)

    def scale(mat, s):
        return tuple(tuple(x * s for x in row) for row in mat)

    def add(a, b):
        return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    pairs = [
        (mat_mul(p_minus, p_minus, field), p_minus),
        (mat_mul(p_plus, p_plus, field), p_plus),
        (add(p_minus, p_plus), eye),
        (mat_mul(p_minus, p_plus, field), scale(eye, field.zero)),
        (mat_mul(jmat, p_plus, field), scale(p_plus, field.i)),
        (mat_mul(jmat, p_minus, field), scale(p_minus, -field.i)),
    ]
    ok, err = _pairs_ok(field, pairs)
    return CheckResult(
        "eigenprojector_identities", ok, 1, err, None if ok else "projector algebra"
    )


@_check("eigenspace_isotropy")
def _isotropy(ctx, rng, trials):
    def sample(rng):
        return (
            random_vector(ctx.dim, ctx.field, rng),
            random_vector(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, x, y):
        field = ctx.field
        pairs = []
        for sign in (PLUS, MINUS):
            gx = gamma_vec(ctx.structure, x, sign)
            gy = gamma_vec(ctx.structure, y, sign)
            pairs.append((gx.bilinear(gy), field.zero))
        return pairs

    return _run_identity("eigenspace_isotropy", ctx, rng, trials, sample, compute)


@_check("eigenspace_perpendicularity")
def _perpendicularity(ctx, rng, trials):
    def sample(rng):
        return (
            random_vector(ctx.dim, ctx.field, rng),
            random_vector(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, x, y):
        gm = gamma_vec(ctx.structure, x, MINUS)
        gp = gamma_vec(ctx.structure, y, PLUS)
        return [(gm.sesquilinear(gp), ctx.field.zero)]

    return _run_identity(
        "eigenspace_perpendicularity", ctx, rng, trials, sample, compute
    )


@_check("gamma_vector_unitarity")
def _gamma_unitarity(ctx, rng, trials):
    def sample(rng):
        return (
            random_vector(ctx.dim, ctx.field, rng),
            random_vector(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, x, y):
        jxy = j_inner(ctx.structure, x, y)
        jyx = j_inner(ctx.structure, y, x)
        gpx = gamma_vec(ctx.structure, x, PLUS)
        gpy = gamma_vec(ctx.structure, y, PLUS)
        gmx = gamma_vec(ctx.structure, x, MINUS)
        gmy = gamma_vec(ctx.structure, y, MINUS)
        return [
            (gpx.sesquilinear(gpy), jxy),
            (gmx.sesquilinear(gmy), jyx),
            (gpx.conjugate(), gmx),
            (gmx.bilinear(gpy), jxy),
        ]

    return _run_identity("gamma_vector_unitarity", ctx, rng, trials, sample, compute)


@_check("gamma_extension_functorial")
def _gamma_ext_functorial(ctx, rng, trials):
    def sample(rng):
        return (
            random_multivector(ctx.m, ctx.field, rng, density=0.6),
            random_multivector(ctx.m, ctx.field, rng, density=0.6),
        )

    def compute(ctx, xi, eta):
        pairs = [
            (
                ctx.gamma_plus_ext(xi).det_inner(ctx.gamma_plus_ext(eta)),
                xi.det_inner(eta),
            ),
            (
                ctx.gamma_minus_ext(xi).det_inner(ctx.gamma_minus_ext(eta)),
                eta.det_inner(xi),
            ),
        ]
        if ctx.m >= 2:
            v1 = Multivector.generator(1, ctx.m, ctx.field)
            v2 = Multivector.generator(2, ctx.m, ctx.field)
            lhs = ctx.gamma_minus_ext(v1.wedge(v2))
            g1 = ctx.gamma_minus_vectors[0].to_multivector()
            g2 = ctx.gamma_minus_vectors[1].to_multivector()
            pairs.append((lhs, g2.wedge(g1)))
        return pairs

    return _run_identity(
        "gamma_extension_functorial", ctx, rng, trials, sample, compute
    )


@_check("gamma_form_basis_independence")
def _gamma_basis_indep(ctx, rng, trials):
    field = ctx.field
    structure = ctx.structure
    half_sqrt2 = field.one / field.sqrt2
    alternates = [
        UnitaryBasis([v.components for v in reversed(ctx.basis_vectors)]),
        UnitaryBasis([structure.apply(v).components for v in ctx.basis_vectors]),
    ]
    if ctx.m >= 2:
        v1, v2 = ctx.basis_vectors[0], ctx.basis_vectors[1]
        rot = [
            (v1 + v2).scale(half_sqrt2).components,
            (v1 - v2).scale(half_sqrt2).components,
        ]
        alternates.append(
            UnitaryBasis(rot + [v.components for v in ctx.basis_vectors[2:]])
        )

    def compute(ctx, basis):
        return [
            (gamma_form(structure, basis, field), ctx.gamma),
            (omega_form(structure, basis, field), ctx.omega),
            (interleaved_top_form(structure, basis, field), ctx.omega),
        ]

    return _run_cases(
        "gamma_form_basis_independence", ctx, [(b,) for b in alternates], compute
    )


@_check("omega_unit_top_form")
def _omega_unit(ctx, rng, trials):
    field = ctx.field
    one_ext = Multivector.one(ctx.dim, field)
    pairs = [
        (ctx.omega.det_inner(ctx.omega), field.one),
        (ctx.omega, interleaved_top_form(ctx.structure, ctx.basis, field)),
        (ctx.expectation(one_ext), field.one),
        (ctx.expectation_normal(one_ext), field.one),
    ]
    ok, err = _pairs_ok(field, pairs)
    return CheckResult(
        "omega_unit_top_form", ok, 1, err, None if ok else "omega normalization"
    )


def _main_pair(ctx, zeta):
    return [(ctx.expectation(zeta), ctx.nu(zeta).trace())]


@_check("main_expectation_equals_trace")
def _main_theorem(ctx, rng, trials):
    field = ctx.field
    base_trials = 0
    if ctx.dim <= 6:
        blades = _run_cases(
            "main_expectation_equals_trace",
            ctx,
            ((mask,) for mask in range(1 << ctx.dim)),
            lambda ctx, mask: _main_pair(ctx, Multivector.blade(mask, ctx.dim, field)),
        )
        if not blades.passed:
            return blades
        base_trials = blades.trials

    def sample(rng):
        return (random_multivector(ctx.dim, field, rng),)

    result = _run_identity(
        "main_expectation_equals_trace", ctx, rng, trials, sample, _main_pair
    )
    result.trials += base_trials
    return result


def _perm_parity(perm) -> int:
    parity = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            parity ^= perm[i] > perm[j]
    return parity


def _det_leibniz(rows, field):
    k = len(rows)
    if k == 0:
        return field.one
    acc = field.zero
    for perm in itertools.permutations(range(k)):
        term = field.one
        for r, c in enumerate(perm):
            term = term * rows[r][c]
        acc = acc - term if _perm_parity(perm) else acc + term
    return acc


def pairing_oracle(ctx, xi: Multivector, eta: Multivector):
    """Determinantal extension of the J-inner product, from scratch.

    Expands both coefficient-space elements over blades and evaluates each
    blade pair as a Leibniz determinant of the vector-level Gram matrix;
    independent of the expectation/ordering machinery it checks.
    """
    field = ctx.field
    acc = field.zero
    full_gram = ctx.basis_j_gram
    for smask, cs in xi.coeffs.items():
        rows = [i for i in range(ctx.m) if smask >> i & 1]
        for tmask, ct in eta.coeffs.items():
            if smask.bit_count() != tmask.bit_count():
                continue
            cols = [i for i in range(ctx.m) if tmask >> i & 1]
            gram = [[full_gram[r][c] for c in cols] for r in rows]
            acc = acc + field.conj(cs) * ct * _det_leibniz(gram, field)
    return acc


def _berip_pair(ctx, xi, eta):
    lhs = ctx.expectation(ctx.gamma_minus_ext(xi).wedge(ctx.gamma_plus_ext(eta)))
    return [(lhs, pairing_oracle(ctx, xi, eta))]


@_check("expectation_pairing_theorem")
def _berip(ctx, rng, trials):
    field = ctx.field
    base_trials = 0
    if ctx.m <= 2:
        blades = _run_cases(
            "expectation_pairing_theorem",
            ctx,
            (
                (
                    Multivector.blade(s, ctx.m, field),
                    Multivector.blade(t, ctx.m, field),
                )
                for s, t in itertools.product(range(1 << ctx.m), repeat=2)
            ),
            _berip_pair,
        )
        if not blades.passed:
            return blades
        base_trials = blades.trials

    def sample(rng):
        return (
            random_multivector(ctx.m, field, rng, density=0.6),
            random_multivector(ctx.m, field, rng, density=0.6),
        )

    result = _run_identity(
        "expectation_pairing_theorem", ctx, rng, trials, sample, _berip_pair
    )
    result.trials += base_trials
    return result


@_check("nu_factorized_on_blocks")
def _nu_factorized(ctx, rng, trials):
    field = ctx.field
    if ctx.m <= 3:
        cases = itertools.product(range(1 << ctx.m), repeat=2)
    else:
        cases = (
            (rng.randrange(1 << ctx.m), rng.randrange(1 << ctx.m))
            for _ in range(trials)
        )

    def compute(ctx, smask, tmask):
        xi = Multivector.blade(smask, ctx.m, field)
        eta = Multivector.blade(tmask, ctx.m, field)
        lhs = ctx.nu(ctx.gamma_minus_ext(xi).wedge(ctx.gamma_plus_ext(eta)))
        # gamma_minus reverses blades, so its Clifford image multiplies the
        # minus vectors in descending index order.
        minus = CliffordElement.one(ctx.dim, field)
        for i in reversed([k for k in range(ctx.m) if smask >> k & 1]):
            minus = minus * ctx.clifford_minus(i + 1)
        plus = CliffordElement.one(ctx.dim, field)
        for i in (k for k in range(ctx.m) if tmask >> k & 1):
            plus = plus * ctx.clifford_plus(i + 1)
        return [(lhs, minus * plus)]

    return _run_cases("nu_factorized_on_blocks", ctx, cases, compute)


@_check("nu_parity_preserving_bijection")
def _nu_bijection(ctx, rng, trials):
    field = ctx.field
    n = 1 << ctx.dim
    columns = [ctx.nu(Multivector.blade(mask, ctx.dim, field)) for mask in range(n)]
    parity_ok = True
    for col_mask, image in enumerate(columns):
        for row_mask in image.coeffs:
            if (row_mask.bit_count() ^ col_mask.bit_count()) & 1:
                parity_ok = False
    if field.exact and ctx.dim <= 6:
        matrix = tuple(
            tuple(columns[c].coefficient(r) for c in range(n)) for r in range(n)
        )
        try:
            mat_inv(matrix, field)
            invertible = True
        except ValueError:
            invertible = False
    else:
        dense = np.zeros((n, n), dtype=np.complex128)
        for c, image in enumerate(columns):
            for r, v in image.coeffs.items():
                dense[r, c] = field.to_complex(v)
        invertible = bool(np.linalg.matrix_rank(dense) == n)
    ok = parity_ok and invertible
    note = None
    if not ok:
        note = "parity block violated" if not parity_ok else "ordering matrix singular"
    return CheckResult("nu_parity_preserving_bijection", ok, n, 0.0, note)


@_check("expectation_kills_odd_parity")
def _odd_parity(ctx, rng, trials):
    def sample(rng):
        return (random_multivector(ctx.dim, ctx.field, rng, parity=1),)

    def compute(ctx, zeta):
        field = ctx.field
        return [
            (ctx.expectation(zeta), field.zero),
            (ctx.nu(zeta).trace(), field.zero),
        ]

    return _run_identity(
        "expectation_kills_odd_parity", ctx, rng, trials, sample, compute
    )


@_check("nu_fixes_scalars_and_vectors")
def _nu_fixes(ctx, rng, trials):
    def sample(rng):
        return (random_rational_vector(ctx.dim, ctx.field, rng),)

    def compute(ctx, w):
        field = ctx.field
        one_ext = Multivector.one(ctx.dim, field)
        one_cl = CliffordElement.one(ctx.dim, field)
        wm = w.to_multivector()
        wc = from_vector(w)
        return [
            (ctx.nu(one_ext), one_cl),
            (ctx.nu(wm), wc),
            (ctx.nu_normal(wm), wc),
        ]

    return _run_identity(
        "nu_fixes_scalars_and_vectors", ctx, rng, trials, sample, compute
    )


@_check("nu_degree2_formula")
def _nu_deg2(ctx, rng, trials):
    def sample(rng):
        return (
            random_rational_vector(ctx.dim, ctx.field, rng),
            random_rational_vector(ctx.dim, ctx.field, rng),
        )

    def compute(ctx, x, y):
        wedge = x.to_multivector().wedge(y.to_multivector())
        return [(ctx.nu(wedge), ctx.nu_formula_deg2(x, y))]

    return _run_identity("nu_degree2_formula", ctx, rng, trials, sample, compute)


@_check("nu_degree3_formula")
def _nu_deg3(ctx, rng, trials):
    def sample(rng):
        return tuple(random_rational_vector(ctx.dim, ctx.field, rng) for _ in range(3))

    def compute(ctx, x, y, z):
        wedge = x.to_multivector().wedge(y.to_multivector()).wedge(z.to_multivector())
        return [(ctx.nu(wedge), ctx.nu_formula_deg3(x, y, z))]

    return _run_identity("nu_degree3_formula", ctx, rng, trials, sample, compute)


def _normal_pair(ctx, zeta):
    return [(ctx.expectation_normal(zeta), ctx.nu_normal(zeta).trace())]


@_check("normal_expectation_equals_trace")
def _normal_main(ctx, rng, trials):
    field = ctx.field
    base_trials = 0
    if ctx.dim <= 6:
        blades = _run_cases(
            "normal_expectation_equals_trace",
            ctx,
            ((mask,) for mask in range(1 << ctx.dim)),
            lambda ctx, mask: _normal_pair(
                ctx, Multivector.blade(mask, ctx.dim, field)
            ),
        )
        if not blades.passed:
            return blades
        base_trials = blades.trials

    def sample(rng):
        return (random_multivector(ctx.dim, field, rng),)

    result = _run_identity(
        "normal_expectation_equals_trace", ctx, rng, trials, sample, _normal_pair
    )
    result.trials += base_trials
    return result


@_check("normal_pairing_identity")
def _normal_pairing(ctx, rng, trials):
    def sample(rng):
        return (
            random_multivector(ctx.m, ctx.field, rng, density=0.6),
            random_multivector(ctx.m, ctx.field, rng, density=0.6),
        )

    def compute(ctx, xi, eta):
        swapped = ctx.gamma_plus_ext(eta).wedge(ctx.gamma_minus_ext(xi))
        oracle = pairing_oracle(ctx, xi, eta)
        return [
            (ctx.expectation_normal(swapped), oracle),
            (ctx.nu_normal(swapped).trace(), oracle),
        ]

    return _run_identity("normal_pairing_identity", ctx, rng, trials, sample, compute)


@_check("normal_degree_formulas")
def _normal_degree(ctx, rng, trials):
    def sample(rng):
        return tuple(random_rational_vector(ctx.dim, ctx.field, rng) for _ in range(3))

    def compute(ctx, x, y, z):
        xy = x.to_multivector().wedge(y.to_multivector())
        xyz = xy.wedge(z.to_multivector())
        return [
            (ctx.nu_normal(xy), ctx.nu_normal_formula_deg2(x, y)),
            (ctx.nu_normal(xyz), ctx.nu_normal_formula_deg3(x, y, z)),
        ]

    return _run_identity("normal_degree_formulas", ctx, rng, trials, sample, compute)


# ---------------------------------------------------------------------------
# runner


def verify_suite(ctx, trials: int = 40, seed: int = 0, jobs: int = 1) -> VerifyReport:
    """Run every identity check against one context.

    Each check owns an independent generator derived from (seed, name), so
    results do not depend on execution order or the number of jobs.
    """
    from ._accel import kernel_backend

    def run_one(entry):
        name, fn = entry
        rng = random.Random(f"{seed}:{name}")
        return fn(ctx, rng, trials)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, CATALOG))
    else:
        results = [run_one(entry) for entry in CATALOG]
    return VerifyReport(
        backend=ctx.field.name,
        m=ctx.m,
        seed=seed,
        trials=trials,
        kernel=kernel_backend(),
        results=results,
    )
