"""Stable-type enumeration and the two routes to ``#Q(f, P)``.

The colength route divides ``dim O/I(f,P)`` by the symmetry factor ``N(P)``.
The closed-form route applies weighted Bezout to the generators of
``I^k(f) + I(P)``: ``V_i^k(h_j)`` has weighted degree ``d_j - i*w_n`` and the
``k - l`` diagonal generators have degree ``w_n``, so

    colength = prod_j prod_{i=1}^{k-1} (d_j - i*w_n) / (w_1*...*w_{n-1} * w_n^l).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Sequence

from .colength import DEFAULT_MAX_JET, ColengthResult, local_colength
from .germparse import GermSpec
from .partition import Partition, partitions_of, stabilizer_order
from .polyring import Homogeneous, weighted_degree
from .schemes import restricted_ideal


class CountingError(ValueError):
    """Base class for counting failures that are properties of the input."""


class NotZeroDimensional(CountingError):
    pass


class NotFinite(CountingError):
    def __init__(self, message: str, result: ColengthResult):
        super().__init__(message)
        self.result = result


class DivisibilityError(CountingError):
    """N(P) does not divide the colength: an internal invariant is broken."""


class NotWeightedHomogeneous(CountingError):
    pass


class FormulaError(CountingError):
    """The closed form does not apply (degenerate or non-integral)."""


class Method(enum.Enum):
    COLENGTH = "colength"
    FORMULA = "formula"
    BOTH = "both"


@dataclass(frozen=True)
class StableTypeDescriptor:
    partition: Partition
    dimension: int

    @property
    def zero_dimensional(self) -> bool:
        return self.dimension == 0


@dataclass(frozen=True)
class CountReport:
    germ: str
    partition: Partition
    method: Method
    colength: int | None
    stabilizer: int
    count: int | None
    formula_colength: int | None = None
    agreement: bool | None = None
    stabilized_at: int | None = None

    @property
    def formula_count(self) -> int | None:
        if self.formula_colength is None:
            return None
        return self.formula_colength // self.stabilizer


def _kmax(n: int, p: int) -> int:
    # delta((1,...,1) of k) = p - k(p-n) is the largest delta among partitions of k
    return p // (p - n)


def enumerate_stable_partitions(n: int, p: int) -> list[StableTypeDescriptor]:
    """Every partition of every k >= 2 with nonnegative expected dimension.

    Ordered by k, then parts in decreasing lexicographic order.
    """
    if not 1 <= n < p:
        raise ValueError(f"need 1 <= n < p, got n={n}, p={p}")
    out = []
    for k in range(2, _kmax(n, p) + 1):
        for parts in partitions_of(k):
            P = Partition(parts)
            delta = P.dimension(n, p)
            if delta >= 0:
                out.append(StableTypeDescriptor(P, delta))
    return out


def zero_dimensional_partitions(n: int, p: int) -> list[Partition]:
    return [d.partition for d in enumerate_stable_partitions(n, p) if d.zero_dimensional]


def _require_zero_dimensional(g: GermSpec, P: Partition) -> None:
    delta = P.dimension(g.n, g.p)
    if delta != 0:
        raise NotZeroDimensional(
            f"partition {P} has expected dimension {delta} for (n,p)=({g.n},{g.p}); "
            "counts exist only for zero-dimensional stable types")


def count_by_colength(g: GermSpec, P: Partition, max_jet: int = DEFAULT_MAX_JET) -> CountReport:
    _require_zero_dimensional(g, P)
    res = local_colength(restricted_ideal(g, P), max_jet)
    if not res.finite:
        raise NotFinite(f"I({g.name},{P}) has no finite colength up to jet {max_jet}", res)
    N = stabilizer_order(P)
    if res.value % N:
        raise DivisibilityError(f"colength {res.value} of {g.name} at {P} not divisible by N(P)={N}")
    return CountReport(g.name, P, Method.COLENGTH, res.value, N, res.value // N,
                       stabilized_at=res.stabilized_at)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _primitive(vec: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in vec:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


_FREE_SEARCH = 12


def infer_weights(g: GermSpec) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Smallest positive integer (weights, degrees) making every component homogeneous.

    Unknowns are ``w_1..w_n, d_1..d_m``; each monomial ``x^a`` of component j
    contributes the equation ``sum_i w_i a_i - d_j = 0``.  When the solution
    cone has more than one dimension (a variable absent from every
    component) the free parameters are searched in 1..12 and the solution
    with least total weight wins, ties broken lexicographically.
    """
    n, m = g.n, len(g.components)
    ncols = n + m
    eqs: list[list[Fraction]] = []
    for j, h in enumerate(g.components):
        for e, _ in h.items():
            row = [Fraction(a) for a in e] + [Fraction(0)] * m
            row[n + j] = Fraction(-1)
            eqs.append(row)
    rref, pivots = _rref(eqs, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None

    def solve(params: Sequence[int]) -> list[Fraction]:
        sol = [Fraction(0)] * ncols
        for c, v in zip(free, params):
            sol[c] = Fraction(v)
        for row, c in zip(rref, pivots):
            sol[c] = -sum(row[f] * sol[f] for f in free)
        return sol

    if len(free) == 1:
        vec = _primitive(solve([1]))
        if all(v < 0 for v in vec):
            vec = [-v for v in vec]
        if not all(v > 0 for v in vec):
            return None
        return tuple(vec[:n]), tuple(vec[n:])
    best = None
    for params in itertools.product(range(1, _FREE_SEARCH + 1), repeat=len(free)):
        sol = solve(params)
        if not all(v > 0 and v.denominator == 1 for v in sol):
            continue
        vec = _primitive(sol)
        key = (sum(vec[:n]), vec[:n], vec[n:])
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return tuple(best[1]), tuple(best[2])


def _weights_and_degrees(g: GermSpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if g.weights is not None:
        degrees = []
        for h in g.components:
            wd = weighted_degree(h, g.weights)
            if not isinstance(wd, Homogeneous):
                raise NotWeightedHomogeneous(f"{h} is not weighted homogeneous under {g.weights}")
            degrees.append(wd.degree)
        return g.weights, tuple(degrees)
    found = infer_weights(g)
    if found is None:
        raise NotWeightedHomogeneous(f"{g.name} admits no positive weight system")
    return found


def formula_colength(g: GermSpec, P: Partition) -> int:
    """Weighted Bezout number of ``I(f,P)``."""
    _require_zero_dimensional(g, P)
    weights, degrees = _weights_and_degrees(g)
    wn = weights[-1]
    factors, vanishing, unit = [], [], False
    for j, (h, d) in enumerate(zip(g.components, degrees), start=1):
        for i in range(1, P.k):
            e = d - i * wn
            if e < 0:
                vanishing.append((i, j))
                continue
            if e == 0:
                # a degree-0 generator is the constant coefficient of z^i in h_j
                if _pure_coefficient(g, h, i):
                    unit = True
                else:
                    vanishing.append((i, j))
            factors.append(e)
    if unit:
        return 0
    if vanishing:
        i, j = vanishing[0]
        raise FormulaError(f"V_{i}(h_{j}) vanishes identically; the scheme is not zero-dimensional "
                           "and the closed form does not apply")
    num = prod(factors)
    den = prod(weights[:-1]) * wn ** P.ell
    if num % den:
        raise FormulaError(f"Bezout quotient {num}/{den} is not an integer; check the weights")
    return num // den


def _pure_coefficient(g: GermSpec, h, i: int) -> Fraction:
    e = tuple(i if v == g.zvar else 0 for v in g.vars)
    return h.terms.get(e, Fraction(0))


def count_by_formula(g: GermSpec, P: Partition) -> CountReport:
    c = formula_colength(g, P)
    N = stabilizer_order(P)
    if c % N:
        raise FormulaError(f"closed-form colength {c} not divisible by N(P)={N}")
    return CountReport(g.name, P, Method.FORMULA, None, N, c // N, formula_colength=c)


def count_both(g: GermSpec, P: Partition, max_jet: int = DEFAULT_MAX_JET) -> CountReport:
    """Colength count plus, when the germ is weighted homogeneous, the closed form."""
    rep = count_by_colength(g, P, max_jet)
    try:
        fc = formula_colength(g, P)
    except (NotWeightedHomogeneous, FormulaError):
        return rep
    return CountReport(g.name, P, Method.BOTH, rep.colength, rep.stabilizer, rep.count,
                       formula_colength=fc, agreement=(fc == rep.colength),
                       stabilized_at=rep.stabilized_at)


def is_weighted_homogeneous(g: GermSpec) -> bool:
    try:
        _weights_and_degrees(g)
    except NotWeightedHomogeneous:
        return False
    return True


def milnor_from_colength(c: int | ColengthResult) -> int:
    """Milnor number of a zero-dimensional ICIS of colength c."""
    if isinstance(c, ColengthResult):
        if not c.finite:
            raise ValueError("colength is not finite")
        c = c.value
    if c < 1:
        raise ValueError("an empty scheme has no Milnor number")
    return c - 1
