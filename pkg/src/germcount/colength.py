"""Local colength dim_C O_m / I at the origin by truncated-jet linear algebra.

For a jet order N the space ``(I + m^N) / m^N`` is spanned by the truncations of
``x^a * g`` for every generator g.  Its rank is computed exactly by sparse
fraction-free elimination with columns (monomials) in ascending graded order
and each row pivoting on its lowest-degree entry.  With that pivot rule the
pivots of degree < M span the truncation to order M, so one elimination yields
``dim O/(I + m^M)`` for every M <= N at once.

Stopping rule: if every monomial of degree N-1 lies in ``I + m^N`` then
``m^(N-1) ⊆ I`` by Nakayama, and the colength is ``dim O/(I + m^(N-1))``.
Failing to fire up to the bound proves nothing about infinitude.

Before the search, any generator of the form ``c*v + r`` with ``c`` a nonzero
constant and ``r`` free of ``v`` is used to eliminate ``v`` (exact ring
isomorphism; the origin maps to the origin).  Jet orders reported by
:func:`local_colength` refer to the ring that remains.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from math import gcd, lcm
from typing import Iterable, Sequence

from .polyring import (
    Exponent,
    Polynomial,
    VariableContext,
    monomials_below,
    monomials_of_degree,
    substitute,
)
from .schemes import IdealPresentation

log = logging.getLogger(__name__)

DEFAULT_MAX_JET = 24


@dataclass(frozen=True)
class ColengthResult:
    finite: bool
    value: int | None  # the colength when finite
    bound: int  # jet bound that was searched
    stabilized_at: int | None = None
    quotient_basis: tuple[Exponent, ...] | None = None
    searched_vars: int | None = None  # variables left after linear elimination

    @classmethod
    def Finite(cls, value: int, bound: int, stabilized_at: int,
               basis: Sequence[Exponent] | None = None,
               searched_vars: int | None = None) -> "ColengthResult":
        return cls(True, value, bound, stabilized_at,
                   None if basis is None else tuple(basis), searched_vars)

    @classmethod
    def NotFiniteUpTo(cls, bound: int, searched_vars: int | None = None) -> "ColengthResult":
        return cls(False, None, bound, searched_vars=searched_vars)

    def __str__(self) -> str:
        if self.finite:
            return f"Finite({self.value})"
        return f"NotFiniteUpTo({self.bound})"


def _integer_terms(g: Polynomial) -> dict[Exponent, int]:
    den = 1
    for _, c in g.items():
        den = lcm(den, c.denominator)
    return {e: int(c * den) for e, c in g.items()}


def _normalize(row: dict[int, int]) -> dict[int, int]:
    content = 0
    for v in row.values():
        content = gcd(content, v)
        if content == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        content = -content
    if content != 1:
        row = {c: v // content for c, v in row.items()}
    return row


class _Echelon:
    """Incremental sparse echelon form keyed by lowest column."""

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}

    def insert(self, row: dict[int, int]) -> int | None:
        """Reduce ``row`` in place; store it and return its pivot column if independent."""
        pivots = self.pivots
        heap = list(row)
        heapify(heap)
        scaled = 0
        while heap:
            col = heappop(heap)
            b = row.get(col)
            if b is None:
                continue
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = _normalize(row)
                return col
            a = piv[col]
            g = gcd(a, b)
            a //= g
            b //= g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for c in row:
                    row[c] *= a
                scaled += 1
            for c, v in piv.items():
                s = row.get(c)
                if s is None:
                    row[c] = -b * v
                    heappush(heap, c)
                else:
                    s -= b * v
                    if s:
                        row[c] = s
                    else:
                        del row[c]
            if scaled > 8 and row:
                row = _normalize(row)
                scaled = 0
        return None


class _JetSystem:
    """Rows of ``(I + m^N)/m^N`` and their elimination, processed degree by degree."""

    def __init__(self, gens: Sequence[Polynomial], nvars: int, N: int):
        self.nvars = nvars
        self.N = N
        self.columns = monomials_below(nvars, N)
        self.index = {e: i for i, e in enumerate(self.columns)}
        self.gens = [(_integer_terms(g), g.min_degree()) for g in gens if not g.is_zero()]
        self.echelon = _Echelon()
        self.pivot_degree_counts = [0] * N
        self.done_degree = -1

    def _rows_with_order(self, d: int) -> Iterable[dict[int, int]]:
        # rows x^a * g whose lowest-degree part sits in degree d
        for terms, order in self.gens:
            da = d - order
            if da < 0:
                continue
            for alpha in monomials_of_degree(self.nvars, da):
                row = {}
                for e, c in terms.items():
                    m = tuple(a + b for a, b in zip(alpha, e))
                    if sum(m) < self.N:
                        row[self.index[m]] = c
                yield row

    def process_degree(self, d: int) -> None:
        assert d == self.done_degree + 1 and d < self.N
        for row in self._rows_with_order(d):
            col = self.echelon.insert(row)
            if col is not None:
                self.pivot_degree_counts[sum(self.columns[col])] += 1
        self.done_degree = d

    def degree_full(self, d: int) -> bool:
        return self.pivot_degree_counts[d] == len(monomials_of_degree(self.nvars, d))

    def quotient_dim(self, M: int) -> int:
        """dim O/(I + m^M), valid for M <= done_degree + 1."""
        monos = sum(len(monomials_of_degree(self.nvars, d)) for d in range(M))
        return monos - sum(self.pivot_degree_counts[:M])

    def quotient_basis(self, M: int) -> list[Exponent]:
        return [e for i, e in enumerate(self.columns)
                if sum(e) < M and i not in self.echelon.pivots]


def _check_ideal(I: IdealPresentation | Sequence[Polynomial]) -> tuple[list[Polynomial], int]:
    gens = list(I.generators if isinstance(I, IdealPresentation) else I)
    if isinstance(I, IdealPresentation):
        nvars = I.ring.nvars
    elif gens:
        nvars = gens[0].ring.nvars
    else:
        raise ValueError("cannot infer ring of an empty generator list")
    return gens, nvars


def _solvable_variable(g: Polynomial) -> int | None:
    """Index of a variable v with g = c*v + (terms free of v), c a nonzero constant."""
    n = g.ring.nvars
    for i in range(n):
        unit = tuple(1 if j == i else 0 for j in range(n))
        if g.terms.get(unit) and all(e == unit or e[i] == 0 for e, _ in g.items()):
            return i
    return None


def eliminate_linear(gens: Sequence[Polynomial]) -> list[Polynomial]:
    """Use generators ``c*v + r(other vars)`` to remove variables, keeping one at least.

    The quotient ``C[vars]/I`` is unchanged up to isomorphism, and so is the
    localization at the origin because every generator vanishes there.
    """
    gens = [g for g in gens if not g.is_zero()]
    while gens and gens[0].ring.nvars > 1:
        for pos, g in enumerate(gens):
            i = _solvable_variable(g)
            if i is not None:
                break
        else:
            return gens
        ring = g.ring
        v = ring.names[i]
        c = g.terms[tuple(1 if j == i else 0 for j in range(ring.nvars))]
        rest = VariableContext(tuple(u for u in ring.names if u != v))
        assignment = {u: rest.var(u) for u in rest.names}
        assignment[v] = substitute(ring.var(v) - g.scale(1 / c), assignment, target=rest)
        gens = [q for q in (substitute(h, assignment, target=rest)
                            for k, h in enumerate(gens) if k != pos) if not q.is_zero()]
    return gens


def jet_quotient_dim(I: IdealPresentation | Sequence[Polynomial], N: int) -> int:
    """dim O/(I + m^N)."""
    if N < 1:
        raise ValueError("jet order must be >= 1")
    gens, nvars = _check_ideal(I)
    system = _JetSystem(gens, nvars, N)
    for d in range(N):
        system.process_degree(d)
    return system.quotient_dim(N)


def _stage_bounds(max_jet: int) -> list[int]:
    # restarts are cheaper than carrying long tails past the stabilization order
    stages = list(range(4, max_jet, 2))
    stages.append(max_jet)
    return stages


def local_colength(I: IdealPresentation | Sequence[Polynomial], max_jet: int = DEFAULT_MAX_JET,
                   with_basis: bool = False, eliminate: bool = True) -> ColengthResult:
    """Exact local colength, or ``NotFiniteUpTo(max_jet)`` if the rule never fires.

    With ``eliminate`` (the default) linear variables are solved away first;
    the quotient basis is then reported in the original ring.
    """
    if max_jet < 2:
        raise ValueError("max_jet must be >= 2")
    gens, nvars = _check_ideal(I)
    if any(g.constant_term() for g in gens):
        return ColengthResult.Finite(0, max_jet, 1, [] if with_basis else None, nvars)
    if not any(gens):
        return ColengthResult.NotFiniteUpTo(max_jet, nvars)
    ring = gens[0].ring
    if eliminate:
        gens = eliminate_linear(gens)
        if not gens:
            return ColengthResult.NotFiniteUpTo(max_jet, ring.nvars)
    kept = gens[0].ring.names
    nvars = len(kept)
    start = 0
    for N in _stage_bounds(max_jet):
        system = _JetSystem(gens, nvars, N)
        for d in range(N):
            system.process_degree(d)
            # the rule at jet order d+1 asks whether degree d is fully covered
            if d >= start and d + 1 >= 2 and system.degree_full(d):
                value = system.quotient_dim(d)
                log.debug("colength %d stabilized at jet %d (stage %d)", value, d + 1, N)
                basis = None
                if with_basis:
                    embed = [ring.index(u) for u in kept]
                    basis = []
                    for e in system.quotient_basis(d):
                        full = [0] * ring.nvars
                        for j, a in zip(embed, e):
                            full[j] = a
                        basis.append(tuple(full))
                return ColengthResult.Finite(value, max_jet, d + 1, basis, nvars)
        start = N
    return ColengthResult.NotFiniteUpTo(max_jet, nvars)
