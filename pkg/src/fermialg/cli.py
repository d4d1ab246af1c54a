"""Command-line front end: a typed expression language over the algebras.

Grammar (products are left associative; '^' and '*' may not mix in one
unparenthesized chain):

    expr      := sum
    sum       := product (('+' | '-') product)*
    product   := unary (('^' | '*') unary)*
    unary     := '-' unary | atom
    atom      := literal | generator | call | '(' expr ')'
    literal   := integer ('/' integer)? 'i'? | 'i' | 'sqrt2'
    generator := 'e' digits | 'v' digits
    call      := name '(' expr (',' expr)* ')'

'^' builds exterior values, '*' builds Clifford values; vectors and
scalars promote into either, but a value never silently crosses between
the two algebras. Builtins: E, EN (expectation, normal-ordered variant),
tau, nu, nuN, gp, gm, star, G, ip, jip, grade.

Exit codes: 0 success, 1 verification failure, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .berezin import OrderingContext
from .clifford import CliffordElement, from_vector
from .exterior import Multivector, Vector
from .scalars import EXACT, FloatField, Scalar, I as SCALAR_I, SQRT2 as SCALAR_SQRT2
from .structure import (
    MINUS,
    PLUS,
    ComplexStructure,
    UnitaryBasis,
    basis_from_structure_float,
    gamma_vec,
    j_inner,
    random_structure,
    standard_structure,
)
from .verify import verify_suite


class ExprError(ValueError):
    """Syntax or evaluation error, carrying the byte offset when known."""

    def __init__(self, message: str, pos: int | None = None) -> None:
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)
        self.pos = pos


# ---------------------------------------------------------------------------
# lexer


@dataclass
class Token:
    kind: str  # num, imag, name, op, end
    text: str
    pos: int
    value: Fraction | None = None


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_NUM_RE = re.compile(r"\d+(?:/\d+)?")


def tokenize(text: str) -> list[Token]:
    tokens = []
    idx = 0
    n = len(text)
    while idx < n:
        ch = text[idx]
        if ch.isspace():
            idx += 1
            continue
        if ch in "+-^*(),":
            tokens.append(Token("op", ch, idx))
            idx += 1
            continue
        if ch.isdigit():
            match = _NUM_RE.match(text, idx)
            try:
                frac = Fraction(match.group(0))
            except ZeroDivisionError:
                raise ExprError("zero denominator in literal", idx) from None
            end = match.end()
            # an immediately attached 'i' makes an imaginary literal: 1i, 3/5i
            if end < n and text[end] == "i" and not (
                end + 1 < n and (text[end + 1].isalnum() or text[end + 1] == "_")
            ):
                tokens.append(Token("imag", text[idx : end + 1], idx, frac))
                idx = end + 1
            else:
                tokens.append(Token("num", match.group(0), idx, frac))
                idx = end
            continue
        if ch.isalpha():
            match = _NAME_RE.match(text, idx)
            tokens.append(Token("name", match.group(0), idx))
            idx = match.end()
            continue
        raise ExprError(f"unexpected character {ch!r}", idx)
    tokens.append(Token("end", "", n))
    return tokens


# ---------------------------------------------------------------------------
# syntax tree and parser


@dataclass
class Lit:
    value: Scalar
    pos: int


@dataclass
class Gen:
    kind: str  # 'e' or 'v'
    index: int
    pos: int


@dataclass
class Neg:
    operand: object
    pos: int


@dataclass
class Bin:
    op: str
    left: object
    right: object
    pos: int


@dataclass
class Call:
    name: str
    args: list
    pos: int


FUNCTIONS = {
    "E": 1,
    "EN": 1,
    "tau": 1,
    "nu": 1,
    "nuN": 1,
    "gp": 1,
    "gm": 1,
    "star": 1,
    "G": 1,
    "ip": 2,
    "jip": 2,
    "grade": 2,
}

_GEN_RE = re.compile(r"([ev])(\d+)$")


class Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.idx = 0

    def peek(self) -> Token:
        return self.tokens[self.idx]

    def advance(self) -> Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.advance()
        if tok.kind != "op" or tok.text != text:
            raise ExprError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return tok

    def parse(self):
        node = self.sum()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def sum(self):
        node = self.product()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                rhs = self.product()
                if tok.text == "-":
                    rhs = Neg(rhs, tok.pos)
                node = Bin("+", node, rhs, tok.pos)
            else:
                return node

    def product(self):
        node = self.unary()
        chain_op = None
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "^*":
                if chain_op is not None and tok.text != chain_op:
                    raise ExprError(
                        "mixing '^' and '*' in one chain needs parentheses", tok.pos
                    )
                chain_op = tok.text
                self.advance()
                node = Bin(tok.text, node, self.unary(), tok.pos)
            else:
                return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.unary(), tok.pos)
        return self.atom()

    def atom(self):
        tok = self.advance()
        if tok.kind == "num":
            return Lit(Scalar(tok.value), tok.pos)
        if tok.kind == "imag":
            return Lit(Scalar(0, tok.value), tok.pos)
        if tok.kind == "op" and tok.text == "(":
            node = self.sum()
            self.expect(")")
            return node
        if tok.kind == "name":
            name = tok.text
            if name == "i":
                return Lit(SCALAR_I, tok.pos)
            if name == "sqrt2":
                return Lit(SCALAR_SQRT2, tok.pos)
            gen = _GEN_RE.match(name)
            if gen:
                return Gen(gen.group(1), int(gen.group(2)), tok.pos)
            if name in FUNCTIONS:
                self.expect("(")
                args = [self.sum()]
                while self.peek().kind == "op" and self.peek().text == ",":
                    self.advance()
                    args.append(self.sum())
                self.expect(")")
                if len(args) != FUNCTIONS[name]:
                    raise ExprError(
                        f"{name} takes {FUNCTIONS[name]} argument(s), got {len(args)}",
                        tok.pos,
                    )
                return Call(name, args, tok.pos)
            raise ExprError(f"unknown name {name!r}", tok.pos)
        raise ExprError(
            f"unexpected {tok.text or 'end of input'!r}", tok.pos
        )


def parse(text: str):
    return Parser(tokenize(text)).parse()


# ---------------------------------------------------------------------------
# typed evaluation

SCALAR, VEC, EXT, CL = "Scalar", "Vec", "Ext", "Cl"


class Evaluator:
    def __init__(self, ctx: OrderingContext) -> None:
        self.ctx = ctx
        self.field = ctx.field

    # promotions -------------------------------------------------------------

    def to_ext(self, sort, value, pos=None) -> Multivector:
        if sort == EXT:
            return value
        if sort == VEC:
            return value.to_multivector()
        if sort == SCALAR:
            return Multivector.from_scalar(value, self.ctx.dim, self.field)
        raise ExprError("Clifford value used where an exterior value is needed", pos)

    def to_cl(self, sort, value, pos=None) -> CliffordElement:
        if sort == CL:
            return value
        if sort == VEC:
            return from_vector(value)
        if sort == SCALAR:
            return CliffordElement.from_scalar(value, self.ctx.dim, self.field)
        raise ExprError("exterior value used where a Clifford value is needed", pos)

    # evaluation ---------------------------------------------------------------

    def eval(self, node):
        if isinstance(node, Lit):
            return SCALAR, self.field.coerce(node.value)
        if isinstance(node, Gen):
            return self._generator(node)
        if isinstance(node, Neg):
            sort, value = self.eval(node.operand)
            return sort, -value
        if isinstance(node, Bin):
            return self._binary(node)
        if isinstance(node, Call):
            return self._call(node)
        raise ExprError(f"unhandled node {node!r}")

    def _generator(self, node: Gen):
        if node.kind == "e":
            if not 1 <= node.index <= self.ctx.dim:
                raise ExprError(
                    f"generator e{node.index} out of range 1..{self.ctx.dim}", node.pos
                )
            return VEC, Vector.basis(node.index, self.ctx.dim, self.field)
        if not 1 <= node.index <= self.ctx.m:
            raise ExprError(
                f"basis vector v{node.index} out of range 1..{self.ctx.m}", node.pos
            )
        return VEC, self.ctx.basis_vectors[node.index - 1]

    def _binary(self, node: Bin):
        ls, lv = self.eval(node.left)
        rs, rv = self.eval(node.right)
        if node.op == "+":
            return self._add(ls, lv, rs, rv, node.pos)
        if node.op == "^":
            if ls == SCALAR and rs == SCALAR:
                return SCALAR, lv * rv
            return EXT, self.to_ext(ls, lv, node.pos).wedge(self.to_ext(rs, rv, node.pos))
        if node.op == "*":
            if ls == SCALAR and rs == SCALAR:
                return SCALAR, lv * rv
            return CL, self.to_cl(ls, lv, node.pos) * self.to_cl(rs, rv, node.pos)
        raise ExprError(f"unknown operator {node.op!r}", node.pos)

    def _add(self, ls, lv, rs, rv, pos):
        if ls == rs:
            return ls, lv + rv
        pair = {ls, rs}
        if pair == {SCALAR, VEC}:
            raise ExprError(
                "sum of a scalar and a vector is ambiguous; multiply into '^' or '*' first",
                pos,
            )
        if pair == {EXT, CL}:
            raise ExprError("cannot add exterior and Clifford values", pos)
        if EXT in pair:
            return EXT, self.to_ext(ls, lv, pos) + self.to_ext(rs, rv, pos)
        return CL, self.to_cl(ls, lv, pos) + self.to_cl(rs, rv, pos)

    def _call(self, node: Call):
        name = node.name
        args = [self.eval(arg) for arg in node.args]
        ctx, field = self.ctx, self.field
        if name == "E":
            return SCALAR, ctx.expectation(self.to_ext(*args[0], node.pos))
        if name == "EN":
            return SCALAR, ctx.expectation_normal(self.to_ext(*args[0], node.pos))
        if name == "tau":
            return SCALAR, self.to_cl(*args[0], node.pos).trace()
        if name == "nu":
            return CL, ctx.nu(self.to_ext(*args[0], node.pos))
        if name == "nuN":
            return CL, ctx.nu_normal(self.to_ext(*args[0], node.pos))
        if name in ("gp", "gm"):
            return self._gamma_call(name, *args[0], pos=node.pos)
        if name == "star":
            sort, value = args[0]
            if sort == SCALAR:
                return SCALAR, field.conj(value)
            if sort == VEC:
                return VEC, value.conjugate()
            return CL, self.to_cl(sort, value, node.pos).star()
        if name == "G":
            sort, value = args[0]
            if sort == SCALAR:
                return SCALAR, value
            if sort == VEC:
                return VEC, -value
            return CL, self.to_cl(sort, value, node.pos).grade_automorphism()
        if name == "ip":
            (ls, lv), (rs, rv) = args
            if CL in (ls, rs):
                return SCALAR, self.to_cl(ls, lv, node.pos).tracial_inner(
                    self.to_cl(rs, rv, node.pos)
                )
            return SCALAR, self.to_ext(ls, lv, node.pos).det_inner(
                self.to_ext(rs, rv, node.pos)
            )
        if name == "jip":
            (ls, lv), (rs, rv) = args
            if ls != VEC or rs != VEC:
                raise ExprError("jip expects two real vectors", node.pos)
            try:
                return SCALAR, j_inner(ctx.structure, lv, rv)
            except ValueError as exc:
                raise ExprError(str(exc), node.pos) from exc
        if name == "grade":
            (ls, lv), (rs, rv) = args
            if rs != SCALAR:
                raise ExprError("grade index must be an integer", node.pos)
            k = self._as_int(rv, node.pos)
            return EXT, self.to_ext(ls, lv, node.pos).grade_project(k)
        raise ExprError(f"unknown function {name!r}", node.pos)

    def _gamma_call(self, name, sort, value, pos):
        sign = PLUS if name == "gp" else MINUS
        if sort == SCALAR:
            return SCALAR, value if sign == PLUS else self.field.conj(value)
        if sort == VEC:
            try:
                return VEC, gamma_vec(self.ctx.structure, value, sign)
            except ValueError as exc:
                raise ExprError(str(exc), pos) from exc
        if sort == EXT:
            try:
                xi = self.ctx.to_vj_coordinates(value)
            except ValueError as exc:
                raise ExprError(str(exc), pos) from exc
            mapped = (
                self.ctx.gamma_plus_ext(xi) if sign == PLUS else self.ctx.gamma_minus_ext(xi)
            )
            return EXT, mapped
        raise ExprError(f"{name} expects a vector or exterior value", pos)

    def _as_int(self, value, pos) -> int:
        if self.field.exact:
            if value.is_rational() and value.a.denominator == 1:
                return int(value.a)
        else:
            if value.imag == 0 and float(value.real).is_integer():
                return int(value.real)
        raise ExprError("grade index must be an integer", pos)


def render_value(sort, value, field) -> str:
    if sort == SCALAR:
        return field.format(value)
    if sort == VEC:
        return str(value.to_multivector())
    return str(value)


def evaluate(ctx: OrderingContext, text: str):
    """Parse and evaluate an expression; returns (sort, value)."""
    return Evaluator(ctx).eval(parse(text))


# ---------------------------------------------------------------------------
# printed-value parsing (round-trips the text forms the algebras emit)

_TERM_RE = re.compile(r"^\((?P<coeff>.+)\)\s(?P<blade>.+)$")


def _parse_exact_scalar(text: str) -> Scalar:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar text")
    total = Scalar()
    idx = 0
    first = True
    while idx < len(s):
        sign = 1
        if s[idx] in "+-":
            sign = -1 if s[idx] == "-" else 1
            idx += 1
        elif not first:
            raise ValueError(f"bad scalar syntax near {s[idx:]!r}")
        first = False
        if idx < len(s) and s[idx] == "(":
            close = s.find(")", idx)
            if close < 0 or s[close + 1 : close + 6] != "sqrt2":
                raise ValueError("expected '(...)sqrt2'")
            part = _parse_exact_scalar(s[idx + 1 : close]) * SCALAR_SQRT2
            idx = close + 6
        elif s.startswith("sqrt2", idx):
            part = SCALAR_SQRT2
            idx += 5
        elif idx < len(s) and s[idx] == "i":
            part = SCALAR_I
            idx += 1
        else:
            match = _NUM_RE.match(s, idx)
            if not match:
                raise ValueError(f"bad scalar syntax near {s[idx:]!r}")
            frac = Fraction(match.group(0))
            idx = match.end()
            if idx < len(s) and s[idx] == "i":
                part = Scalar(0, frac)
                idx += 1
            else:
                part = Scalar(frac)
        total = total + (part if sign > 0 else -part)
    return total


def parse_scalar(text: str, field):
    if field.exact:
        return _parse_exact_scalar(text)
    return complex(text.replace(" ", "").replace("i", "j"))


def parse_value(text: str, sort: str, dim: int, field):
    """Parse values in the printed text forms (scalar, Ext, Cl)."""
    text = text.strip()
    if sort == SCALAR:
        return parse_scalar(text, field)
    cls = Multivector if sort == EXT else CliffordElement
    if text == "0":
        return cls.zero(dim, field)
    coeffs = {}
    for term in text.split(" + "):
        match = _TERM_RE.match(term.strip())
        if not match:
            raise ValueError(f"bad term {term!r}")
        coeff = parse_scalar(match.group("coeff"), field)
        blade = match.group("blade").strip()
        if blade == "1":
            mask = 0
        else:
            mask = 0
            parts = blade.split("^") if sort == EXT else blade.split()
            for part in parts:
                gen = _GEN_RE.match(part.strip())
                if not gen or gen.group(1) != "e":
                    raise ValueError(f"bad blade {blade!r}")
                mask |= 1 << (int(gen.group(2)) - 1)
        coeffs[mask] = coeff
    return cls(dim, field, coeffs)


# ---------------------------------------------------------------------------
# configuration


@dataclass
class Config:
    m: int = 2
    structure: object = "standard"  # "standard" | "random" | dict with J/basis
    backend: str = "exact"
    tol: float | None = None
    seed: int = 0

    def resolved_tol(self) -> float:
        if self.backend == "exact":
            if self.tol not in (None, 0, 0.0):
                raise ValueError("the exact backend requires tol = 0")
            return 0.0
        return 1e-9 if self.tol is None else float(self.tol)


def _parse_rational(entry) -> Fraction:
    if isinstance(entry, int):
        return Fraction(entry)
    if isinstance(entry, str):
        return Fraction(entry)
    raise ValueError(f"rational entries must be ints or 'p/q' strings, got {entry!r}")


def _parse_basis_entry(entry) -> Scalar:
    # "p/q" | {"value": "p/q", "sqrt2": true} | ["p/q", "r/s"] as a + b*sqrt2
    if isinstance(entry, (int, str)):
        return Scalar(_parse_rational(entry))
    if isinstance(entry, dict):
        value = _parse_rational(entry.get("value", 0))
        if entry.get("sqrt2"):
            return Scalar(0, 0, value)
        return Scalar(value)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return Scalar(_parse_rational(entry[0]), 0, _parse_rational(entry[1]))
    raise ValueError(f"bad basis entry {entry!r}")


def load_config(path: str) -> Config:
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    cfg = Config()
    if "M" in raw:
        cfg.m = int(raw["M"])
    if "structure" in raw:
        cfg.structure = raw["structure"]
    if "backend" in raw:
        cfg.backend = raw["backend"]
    if "tol" in raw:
        cfg.tol = float(raw["tol"])
    if "seed" in raw:
        cfg.seed = int(raw["seed"])
    return cfg


def build_context(cfg: Config) -> OrderingContext:
    if cfg.backend == "exact":
        field = EXACT
        cfg.resolved_tol()
    elif cfg.backend == "float":
        field = FloatField(cfg.resolved_tol())
    else:
        raise ValueError(f"unknown backend {cfg.backend!r}")

    spec = cfg.structure
    if spec == "standard":
        structure, basis = standard_structure(cfg.m)
    elif spec == "random":
        structure, basis = random_structure(cfg.m, cfg.seed)
    elif isinstance(spec, dict):
        rows = [[_parse_rational(x) for x in row] for row in spec["J"]]
        structure = ComplexStructure(cfg.m, rows)
        if "basis" in spec:
            basis = UnitaryBasis(
                [[_parse_basis_entry(x) for x in row] for row in spec["basis"]]
            )
        elif field.exact:
            raise ValueError(
                "an explicit J needs an explicit basis on the exact backend "
                "(basis completion is float-only)"
            )
        else:
            basis = basis_from_structure_float(structure)
    else:
        raise ValueError(f"bad structure specification {spec!r}")
    return OrderingContext(structure, basis, field)


# ---------------------------------------------------------------------------
# subcommands


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dim", type=int, metavar="M", help="dimension parameter M")
    parser.add_argument(
        "--structure",
        metavar="SPEC",
        help="'standard', 'random', or a JSON file with J (and optional basis)",
    )
    parser.add_argument("--backend", choices=["exact", "float"], help="scalar backend")
    parser.add_argument("--tol", type=float, help="float comparison tolerance")
    parser.add_argument("--seed", type=int, help="seed for random structures/trials")
    parser.add_argument("--config", metavar="FILE", help="JSON config file")


def _make_config(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config) if args.config else Config()
    if args.dim is not None:
        cfg.m = args.dim
    if args.structure is not None:
        if args.structure in ("standard", "random"):
            cfg.structure = args.structure
        else:
            with open(args.structure, encoding="utf-8") as handle:
                cfg.structure = json.load(handle)
    if args.backend is not None:
        cfg.backend = args.backend
    if args.tol is not None:
        cfg.tol = args.tol
    if args.seed is not None:
        cfg.seed = args.seed
    if cfg.m < 1:
        raise ValueError("M must be a positive integer")
    return cfg


def _cmd_eval(args: argparse.Namespace) -> int:
    cfg = _make_config(args)
    ctx = build_context(cfg)
    sort, value = evaluate(ctx, args.expression)
    print(render_value(sort, value, ctx.field))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = _make_config(args)
    ctx = build_context(cfg)
    report = verify_suite(ctx, trials=args.trials, seed=cfg.seed, jobs=args.jobs)
    print(report.format_text())
    print(json.dumps(report.summary()))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            json.dump(report.to_dict(), handle, indent=2)
    return 0 if report.passed else 1


def _cmd_demo(args: argparse.Namespace) -> int:
    structure, basis = standard_structure(1)
    ctx = OrderingContext(structure, basis, EXACT)
    e12 = Multivector.blade(0b11, 2, EXACT)
    expectation = ctx.expectation(e12)
    ordered = ctx.nu(e12)
    print("M = 1, standard structure, exact backend")
    print(f"gamma = {ctx.gamma}")
    print(f"omega = {ctx.omega}")
    print(f"E(e1^e2) = {EXACT.format(expectation)}")
    print(f"nu(e1^e2) = {ordered}")
    print(f"tau(nu(e1^e2)) = {EXACT.format(ordered.trace())}")
    agree = EXACT.eq(expectation, ordered.trace())
    print(f"E(e1^e2) == tau(nu(e1^e2)): {agree}")
    return 0 if agree else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fermialg",
        description="Exact exterior/Clifford kernel: expectation, trace, ordering maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate an expression")
    p_eval.add_argument("expression")
    _common_flags(p_eval)
    p_eval.set_defaults(handler=_cmd_eval)

    p_verify = sub.add_parser("verify", help="run the identity verification suite")
    p_verify.add_argument("--trials", type=int, default=40, help="trials per identity")
    p_verify.add_argument("--jobs", type=int, default=1, help="parallel check workers")
    p_verify.add_argument("--json", metavar="FILE", help="write the full report as JSON")
    _common_flags(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    p_demo = sub.add_parser("demo", help="print the M=1 worked example")
    p_demo.set_defaults(handler=_cmd_demo)

    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
