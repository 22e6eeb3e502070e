"""The invariants N(f,P) and the finiteness verdict built from them.

``N(f,P)`` is the local colength of the ideal generated by the components of
``F_P`` together with the maximal minors of its Jacobian matrix.  A germ is
declared finite when every ``N(f,(1,...,1))`` and every zero-dimensional count
is finite.  A jet bound that is never reached is reported as such, never as a
proof of infinitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colength import DEFAULT_MAX_JET, ColengthResult, local_colength
from .counting import (
    CountReport,
    NotFinite,
    _kmax,
    count_by_colength,
    enumerate_stable_partitions,
)
from .germparse import Corank, GermSpec, corank_check
from .partition import Partition
from .schemes import IdealPresentation, Provenance, fp_map, jacobian_minors


@dataclass(frozen=True)
class InvariantReport:
    partition: Partition
    n_value: ColengthResult
    required_by_theorem: bool


def invariant_ideal(g: GermSpec, P: Partition) -> IdealPresentation:
    if P.k < 2:
        raise ValueError("N(f,P) needs k >= 2")
    delta = P.dimension(g.n, g.p)
    if delta < 0:
        raise ValueError(f"partition {P} carries no stable type for (n,p)=({g.n},{g.p})")
    m = fp_map(g, P)
    minors = jacobian_minors(m)
    return IdealPresentation(m.source_ring, m.components + minors.generators,
                             Provenance("Invariant", str(P)))


def is_required(g: GermSpec, P: Partition) -> bool:
    return P.is_multiplicity_free() and 2 <= P.k <= _kmax(g.n, g.p)


def invariant_N(g: GermSpec, P: Partition, max_jet: int = DEFAULT_MAX_JET) -> InvariantReport:
    res = local_colength(invariant_ideal(g, P), max_jet)
    return InvariantReport(P, res, is_required(g, P))


@dataclass(frozen=True)
class CountOutcome:
    partition: Partition
    report: CountReport | None  # None when the colength was not finite up to the bound
    bound: int

    @property
    def finite(self) -> bool:
        return self.report is not None


@dataclass(frozen=True)
class Verdict:
    afinite: bool
    bound: int
    invariants: tuple[InvariantReport, ...] = field(default_factory=tuple)
    counts: tuple[CountOutcome, ...] = field(default_factory=tuple)

    @property
    def label(self) -> str:
        return "Yes" if self.afinite else f"NotUpToBound({self.bound})"


def required_partitions(n: int, p: int) -> list[Partition]:
    return [Partition((1,) * k) for k in range(2, _kmax(n, p) + 1)]


def verdict(g: GermSpec, max_jet: int = DEFAULT_MAX_JET) -> Verdict:
    if corank_check(g) is not Corank.SINGULAR:
        raise ValueError(f"{g.name} is an immersion; the finiteness criterion is for singular germs")
    invs = tuple(invariant_N(g, P, max_jet) for P in required_partitions(g.n, g.p))
    counts = []
    for d in enumerate_stable_partitions(g.n, g.p):
        if not d.zero_dimensional:
            continue
        try:
            counts.append(CountOutcome(d.partition, count_by_colength(g, d.partition, max_jet), max_jet))
        except NotFinite:
            counts.append(CountOutcome(d.partition, None, max_jet))
    ok = all(r.n_value.finite for r in invs) and all(c.finite for c in counts)
    return Verdict(ok, max_jet, invs, tuple(counts))


@dataclass(frozen=True)
class ComparisonRow:
    partition: Partition
    quantity: str  # "N" or "count"
    first: int | None  # None: not finite up to the bound
    second: int | None

    @property
    def status(self) -> str:
        if self.first is None or self.second is None:
            return "equal" if self.first == self.second else "inconclusive"
        return "equal" if self.first == self.second else "differ"


@dataclass(frozen=True)
class Distinction:
    first: str
    second: str
    bound: int
    rows: tuple[ComparisonRow, ...]

    @property
    def distinguished(self) -> bool:
        """True when some invariant certifies the germs are not equivalent."""
        return any(r.status == "differ" for r in self.rows)


def _count_value(g: GermSpec, P: Partition, max_jet: int) -> int | None:
    try:
        return count_by_colength(g, P, max_jet).count
    except NotFinite:
        return None


def distinguish(g1: GermSpec, g2: GermSpec, max_jet: int = DEFAULT_MAX_JET) -> Distinction:
    """Side-by-side N(f,P) and #Q(f,P); any finite difference separates the germs."""
    if (g1.n, g1.p) != (g2.n, g2.p):
        raise ValueError(f"dimension mismatch: ({g1.n},{g1.p}) vs ({g2.n},{g2.p})")
    rows = []
    for d in enumerate_stable_partitions(g1.n, g1.p):
        P = d.partition
        a = invariant_N(g1, P, max_jet).n_value
        b = invariant_N(g2, P, max_jet).n_value
        rows.append(ComparisonRow(P, "N", a.value, b.value))
        if d.zero_dimensional:
            rows.append(ComparisonRow(P, "count", _count_value(g1, P, max_jet),
                                      _count_value(g2, P, max_jet)))
    return Distinction(g1.name, g2.name, max_jet, tuple(rows))
