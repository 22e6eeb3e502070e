"""Exact sparse multivariate polynomials over Q.

A polynomial lives in a :class:`VariableContext` (ordered variable names plus
optional positive integer weights) and stores only its nonzero terms as a
mapping ``exponent tuple -> Fraction``.  Values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class ContextMismatch(ValueError):
    """Raised when polynomials from different rings are combined."""


class InexactDivision(ArithmeticError):
    """Raised by :func:`exact_quotient` when the divisor leaves a remainder."""


@dataclass(frozen=True)
class VariableContext:
    names: tuple[str, ...]
    weights: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if self.weights is not None:
            w = tuple(int(a) for a in self.weights)
            if len(w) != len(self.names):
                raise ValueError("weights must match the number of variables")
            if any(a < 1 for a in w):
                raise ValueError(f"weights must be positive integers, got {w}")
            object.__setattr__(self, "weights", w)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_weights(self, weights: Sequence[int] | None) -> "VariableContext":
        return VariableContext(self.names, None if weights is None else tuple(weights))

    # constructors for elements of this ring

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.names)

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        if len(exps) != self.nvars or any(a < 0 for a in exps):
            raise ValueError(f"bad exponent vector {tuple(exps)}")
        c = Fraction(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})


def grlex_key(e: Exponent) -> tuple:
    """Sort key: total degree first, then lexicographic on exponents."""
    return (sum(e), e)


class Polynomial:
    """Immutable polynomial with rational coefficients in a fixed ring."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: VariableContext, terms: Mapping[Exponent, Scalar]):
        self.ring = ring
        clean = {}
        for e, c in terms.items():
            if c:
                clean[tuple(e)] = c if isinstance(c, Fraction) else Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: VariableContext, terms: dict) -> "Polynomial":
        # terms already clean (no zeros, Fraction values)
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def min_degree(self) -> int:
        """Order at the origin: the smallest total degree of a term."""
        if not self._terms:
            raise ValueError("zero polynomial has no order")
        return min(sum(e) for e in self._terms)

    def variables(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(self.ring.names[i] for i, a in enumerate(e) if a)
        return used

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order (printing order)."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextMismatch(f"ring {other.ring.names} differs from {self.ring.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._terms == ({} if other == 0 else {(0,) * self.ring.nvars: Fraction(other)})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials of one ring."""
    if p.ring != q.ring:
        raise ContextMismatch(f"ring {q.ring.names} differs from {p.ring.names}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Polynomial, var: str, order: int = 1) -> Polynomial:
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    i = p.ring.index(var)
    out = {}
    for e, c in p._terms.items():
        a = e[i]
        if a < order:
            continue
        falling = 1
        for t in range(order):
            falling *= a - t
        ne = list(e)
        ne[i] = a - order
        out[tuple(ne)] = c * falling
    return Polynomial._raw(p.ring, out)


def substitute(p: Polynomial, assignment: Mapping[str, Polynomial],
               target: VariableContext | None = None) -> Polynomial:
    """Compose ``p`` with ``assignment`` (source variable -> target polynomial).

    Every variable that actually occurs in ``p`` must be assigned.  The target
    ring is taken from the assigned polynomials, or from ``target`` when the
    assignment is empty or all values are constants.
    """
    rings = {q.ring for q in assignment.values() if isinstance(q, Polynomial)}
    if target is not None:
        rings.add(target)
    if len(rings) > 1:
        raise ContextMismatch("substitution targets live in different rings")
    if not rings:
        raise ValueError("cannot determine target ring of substitution")
    ring = rings.pop()
    missing = p.variables() - set(assignment)
    if missing:
        raise KeyError(f"unassigned variable(s): {', '.join(sorted(missing))}")
    images = []
    for name in p.ring.names:
        v = assignment.get(name)
        if v is not None and not isinstance(v, Polynomial):
            v = ring.const(v)
        images.append(v)
    powers: list[dict[int, Polynomial]] = [{} for _ in images]

    def power(i: int, a: int) -> Polynomial:
        cache = powers[i]
        if a not in cache:
            cache[a] = images[i] ** a
        return cache[a]

    out: dict[Exponent, Fraction] = {}
    for e, c in p._terms.items():
        term = ring.const(c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        for te, tc in term._terms.items():
            s = out.get(te, 0) + tc
            if s:
                out[te] = s
            else:
                out.pop(te, None)
    return Polynomial._raw(ring, out)


def change_ring(p: Polynomial, ring: VariableContext) -> Polynomial:
    """Re-embed ``p`` in a ring by variable name (missing names must not occur)."""
    return substitute(p, {v: ring.var(v) for v in p.variables()}, target=ring)


@dataclass(frozen=True)
class Homogeneous:
    degree: int


@dataclass(frozen=True)
class Inhomogeneous:
    min_degree: int
    max_degree: int


def term_weighted_degrees(p: Polynomial, weights: Sequence[int] | None = None) -> list[int]:
    w = weights if weights is not None else p.ring.weights
    if w is None:
        raise ValueError("ring carries no weights")
    return [sum(a * b for a, b in zip(e, w)) for e in p._terms]


def weighted_degree(p: Polynomial, weights: Sequence[int] | None = None):
    """Return ``Homogeneous(d)`` or ``Inhomogeneous(lo, hi)`` for nonzero ``p``."""
    if p.is_zero():
        raise ValueError("weighted degree of the zero polynomial is undefined")
    degs = term_weighted_degrees(p, weights)
    lo, hi = min(degs), max(degs)
    return Homogeneous(lo) if lo == hi else Inhomogeneous(lo, hi)


def _leading(p: Polynomial) -> tuple[Exponent, Fraction]:
    return max(p._terms.items(), key=lambda t: grlex_key(t[0]))


def divmod_poly(p: Polynomial, d: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division by a single divisor w.r.t. graded lex order."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.ring != d.ring:
        raise ContextMismatch("dividend and divisor live in different rings")
    lm_d, lc_d = _leading(d)
    rest = dict(p._terms)
    quot: dict[Exponent, Fraction] = {}
    rem: dict[Exponent, Fraction] = {}
    while rest:
        e, c = max(rest.items(), key=lambda t: grlex_key(t[0]))
        if all(a >= b for a, b in zip(e, lm_d)):
            qe = tuple(a - b for a, b in zip(e, lm_d))
            qc = c / lc_d
            quot[qe] = quot.get(qe, 0) + qc
            for de, dc in d._terms.items():
                te = tuple(a + b for a, b in zip(qe, de))
                s = rest.get(te, 0) - qc * dc
                if s:
                    rest[te] = s
                else:
                    rest.pop(te, None)
        else:
            rem[e] = c
            del rest[e]
    return Polynomial(p.ring, quot), Polynomial._raw(p.ring, rem)


def exact_quotient(p: Polynomial, d: Polynomial) -> Polynomial:
    q, r = divmod_poly(p, d)
    if r:
        raise InexactDivision(f"{d} does not divide {p}: remainder {r}")
    return q


def monomials_below(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total degree < ``degree``, in ascending grlex order."""
    out: list[Exponent] = []
    for d in range(degree):
        out.extend(monomials_of_degree(nvars, d))
    return out


def monomials_of_degree(nvars: int, d: int) -> list[Exponent]:
    if nvars == 0:
        return [()] if d == 0 else []
    res: list[Exponent] = []

    def rec(prefix: list[int], left: int, slots: int) -> None:
        if slots == 1:
            res.append(tuple(prefix + [left]))
            return
        for a in range(left + 1):
            rec(prefix + [a], left - a, slots - 1)

    rec([], d, nvars)
    res.sort()
    return res


def count_monomials_below(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, nvars) if degree > 0 else 0


# -- printing ------------------------------------------------------------

def _format_monomial(names: Sequence[str], e: Exponent) -> str:
    parts = []
    for v, a in zip(names, e):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Render ``p`` in the germ-file expression grammar (grlex descending)."""
    if p.is_zero():
        return "0"
    chunks = []
    for e, c in p.sorted_terms():
        mono = _format_monomial(p.ring.names, e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{_format_scalar(mag)}*{mono}"
        else:
            body = _format_scalar(mag)
        sign = "-" if c < 0 else "+"
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


def _format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_sum(polys: Iterable[Polynomial], ring: VariableContext) -> Polynomial:
    total = ring.zero()
    for q in polys:
        total = total + q
    return total
