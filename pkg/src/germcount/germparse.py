"""Polynomial expression parser and germ-file loader.

Expression grammar (no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | IDENT | '(' expr ')'
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .polyring import (
    Homogeneous,
    Polynomial,
    VariableContext,
    partial_derivative,
    weighted_degree,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class GermError(ValueError):
    """Germ file violates the schema or a germ invariant."""


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for i, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line += 1
                    line_start = i + 1
        else:
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VariableContext, bindings: Mapping[str, Fraction]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ctx = ctx
        self.bindings = bindings

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return result

    def expr(self) -> Polynomial:
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.unary()
        while self.accept("*"):
            acc = acc * self.unary()
        return acc

    def unary(self) -> Polynomial:
        if self.accept("-"):
            return -self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "int":
                raise self.error("exponent must be a positive integer literal")
            k = int(tok.text)
            if k < 1:
                raise self.error("exponent must be a positive integer literal")
            self.pos += 1
            base = base ** k
        return base

    def atom(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "int":
            self.pos += 1
            value = Fraction(int(tok.text))
            if self.accept("/"):
                den = self.tok
                if den.kind != "int" or int(den.text) == 0:
                    raise self.error("denominator must be a nonzero integer literal")
                self.pos += 1
                value /= int(den.text)
            return self.ctx.const(value)
        if tok.kind == "ident":
            self.pos += 1
            if tok.text in self.bindings:
                return self.ctx.const(self.bindings[tok.text])
            if tok.text not in self.ctx.names:
                raise self.error(f"unknown identifier {tok.text!r}", tok)
            return self.ctx.var(tok.text)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_polynomial(text: str, ctx: VariableContext,
                     bindings: Mapping[str, Fraction | int] | None = None) -> Polynomial:
    """Parse ``text`` into an exact polynomial of ``ctx``.

    ``bindings`` maps parameter names (not ring variables) to rational values.
    """
    b = {k: Fraction(v) for k, v in (bindings or {}).items()}
    clash = set(b) & set(ctx.names)
    if clash:
        raise ValueError(f"cannot bind ring variable(s) {sorted(clash)}")
    return _Parser(text, ctx, b).parse()


def parse_rational(text: str) -> Fraction:
    m = re.fullmatch(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*", text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


@dataclass(frozen=True)
class GermSpec:
    """Corank-1 germ ``(x_1..x_{n-1}, h_1..h_{p-n+1})``; last var is the corank one."""

    name: str
    vars: tuple[str, ...]
    components: tuple[Polynomial, ...]
    weights: tuple[int, ...] | None = None
    degrees: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def p(self) -> int:
        return self.n - 1 + len(self.components)

    @property
    def ring(self) -> VariableContext:
        return self.components[0].ring

    @property
    def zvar(self) -> str:
        return self.vars[-1]

    @property
    def xvars(self) -> tuple[str, ...]:
        return self.vars[:-1]

    def with_components(self, components: Sequence[Polynomial], name: str | None = None) -> "GermSpec":
        return make_germ(name or self.name, self.vars, components)


def make_germ(name: str, vars: Sequence[str], components: Sequence[Polynomial | str],
              weights: Sequence[int] | None = None, degrees: Sequence[int] | None = None,
              bindings: Mapping[str, Fraction | int] | None = None) -> GermSpec:
    """Build and validate a :class:`GermSpec`.

    Components may be given as expression strings (parsed over ``vars``) or as
    polynomials.  When weights are given without degrees, degrees are inferred.
    """
    vars = tuple(vars)
    if not vars:
        raise GermError("a germ needs at least one source variable")
    try:
        ctx = VariableContext(vars, None if weights is None else tuple(weights))
    except ValueError as exc:
        raise GermError(str(exc)) from None
    comps = []
    for c in components:
        if isinstance(c, str):
            comps.append(parse_polynomial(c, ctx, bindings))
        else:
            from .polyring import change_ring
            comps.append(change_ring(c, ctx))
    if len(comps) < 2:
        raise GermError(f"need p > n, i.e. at least 2 components; got {len(comps)} (n >= p)")
    for i, h in enumerate(comps, start=1):
        if h.constant_term():
            raise GermError(f"component {i} ({h}) has a nonzero constant term")
    if degrees is not None and weights is None:
        raise GermError("degrees given without weights")
    if weights is not None:
        inferred = []
        for i, h in enumerate(comps, start=1):
            if h.is_zero():
                raise GermError(f"component {i} is zero; weighted degree undefined")
            wd = weighted_degree(h)
            if not isinstance(wd, Homogeneous):
                raise GermError(
                    f"component {i} ({h}) is not weighted homogeneous under weights "
                    f"{tuple(weights)}: term degrees range {wd.min_degree}..{wd.max_degree}")
            inferred.append(wd.degree)
        if degrees is not None:
            if len(degrees) != len(comps):
                raise GermError("degrees must list one entry per component")
            if tuple(degrees) != tuple(inferred):
                raise GermError(f"declared degrees {tuple(degrees)} disagree with weights "
                                f"(components have degrees {tuple(inferred)})")
        degrees = tuple(inferred)
    return GermSpec(name, vars, tuple(comps),
                    None if weights is None else tuple(weights),
                    None if degrees is None else tuple(degrees))


def parse_germ_file(data: bytes | str, bindings: Mapping[str, Fraction | int] | None = None) -> GermSpec:
    """Load a germ from its JSON text (see README for the schema)."""
    try:
        text = data.decode("utf-8") if isinstance(data, bytes) else data
        obj = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise GermError(f"not valid UTF-8 JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise GermError("germ file must contain a JSON object")
    allowed = {"name", "vars", "components", "weights", "degrees"}
    extra = set(obj) - allowed
    if extra:
        raise GermError(f"unknown field(s): {sorted(extra)}")
    for key in ("name", "vars", "components"):
        if key not in obj:
            raise GermError(f"missing required field {key!r}")
    if not isinstance(obj["name"], str):
        raise GermError("'name' must be a string")
    for key in ("vars", "components"):
        if not isinstance(obj[key], list) or not all(isinstance(s, str) for s in obj[key]):
            raise GermError(f"{key!r} must be a list of strings")
    for key in ("weights", "degrees"):
        val = obj.get(key)
        if val is not None and (not isinstance(val, list) or not all(
                isinstance(a, int) and not isinstance(a, bool) and a > 0 for a in val)):
            raise GermError(f"{key!r} must be a list of positive integers")
    if "weights" in obj and len(obj["weights"]) != len(obj["vars"]):
        raise GermError("'weights' must have one entry per variable")
    try:
        return make_germ(obj["name"], obj["vars"], obj["components"],
                         obj.get("weights"), obj.get("degrees"), bindings)
    except ParseError as exc:
        raise GermError(f"bad component expression: {exc}") from None


class Corank(Enum):
    SINGULAR = "singular"
    IMMERSIVE = "immersive"


def corank_check(g: GermSpec) -> Corank:
    for h in g.components:
        if partial_derivative(h, g.zvar).constant_term():
            return Corank.IMMERSIVE
    return Corank.SINGULAR
