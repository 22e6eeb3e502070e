"""Partition-indexed ideals of a corank-1 germ and the maps F_P.

Generator order is always component-major (outer loop over ``h_j``, inner loop
over the difference order ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .divdiff import (
    MultiPointContext,
    all_divided_differences,
    restrict_to_diagonal,
)
from .germparse import GermSpec
from .partition import Partition
from .polyring import Polynomial, VariableContext, partial_derivative, substitute


@dataclass(frozen=True)
class Provenance:
    kind: str  # MultiPoint | Diagonal | StableType | Restricted | FPMap | Minors | Invariant
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}({self.detail})"


@dataclass(frozen=True)
class IdealPresentation:
    ring: VariableContext
    generators: tuple[Polynomial, ...]
    provenance: Provenance

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator outside the presentation ring")

    def __len__(self) -> int:
        return len(self.generators)

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        if other.ring != self.ring:
            raise ValueError("cannot add ideals of different rings")
        return IdealPresentation(self.ring, self.generators + other.generators,
                                 Provenance("Sum", f"{self.provenance}+{other.provenance}"))


@dataclass(frozen=True)
class FPMap:
    """``F_P = (G_P, H_P)`` on ``(x, t_1..t_l)``."""

    source_ring: VariableContext
    g_block: tuple[Polynomial, ...]
    h_block: tuple[Polynomial, ...]
    partition: Partition

    @property
    def components(self) -> tuple[Polynomial, ...]:
        return self.g_block + self.h_block

    def __len__(self) -> int:
        return len(self.g_block) + len(self.h_block)


def multiple_point_ideal(g: GermSpec, k: int) -> IdealPresentation:
    """Ideal of D^k(f): all ``V_i^k(h_j)``, 1 <= i <= k-1."""
    if k < 2:
        raise ValueError("multiple point spaces need k >= 2")
    ctx = MultiPointContext(g, k)
    gens = []
    for h in g.components:
        gens.extend(all_divided_differences(ctx, h)[1:])
    return IdealPresentation(ctx.ring, tuple(gens), Provenance("MultiPoint", str(k)))


def diagonal_ideal(P: Partition, ctx: MultiPointContext) -> IdealPresentation:
    """``z_i - z_{i+1}`` for consecutive nodes inside each block."""
    if P.k != ctx.k:
        raise ValueError(f"partition {P} does not partition k={ctx.k}")
    gens = []
    for start, r in zip(P.block_starts(), P.parts):
        for a in range(start + 1, start + r):
            gens.append(ctx.zvar(a) - ctx.zvar(a + 1))
    return IdealPresentation(ctx.ring, tuple(gens), Provenance("Diagonal", str(P)))


def stable_type_ideal(g: GermSpec, P: Partition) -> IdealPresentation:
    mp = multiple_point_ideal(g, P.k)
    diag = diagonal_ideal(P, MultiPointContext(g, P.k))
    return IdealPresentation(mp.ring, mp.generators + diag.generators,
                             Provenance("StableType", str(P)))


def restricted_ideal(g: GermSpec, P: Partition) -> IdealPresentation:
    """``I(f, P)``: the multiple point ideal pulled back to the diagonal of P."""
    ctx = MultiPointContext(g, P.k)
    mp = multiple_point_ideal(g, P.k)
    gens = tuple(restrict_to_diagonal(ctx, P, q) for q in mp.generators)
    return IdealPresentation(ctx.diagonal_ring(P.ell), gens, Provenance("Restricted", str(P)))


def _is_block_start(P: Partition, node: int) -> bool:
    # node is 0-based; the first node of blocks 2..l gives a difference-type entry
    return node in P.block_starts()[1:]


def fp_map(g: GermSpec, P: Partition, raw: bool = False) -> FPMap:
    """Build ``F_P``.

    By default the components are the restricted divided differences
    ``V_i^k(h_j)``; index ``i`` pairs with node ``i+1`` and is filed in the
    G-block when that node opens a new block, else in the H-block.  With
    ``raw=True`` the derivative/difference presentation is used instead
    (``d^s h_j/dz^s`` at each block point and ``h_j(t_1) - h_j(t_i)``), which
    only agrees with the default away from the diagonal.
    """
    if P.k < 2:
        raise ValueError("F_P needs k >= 2")
    ctx = MultiPointContext(g, P.k)
    ring = ctx.diagonal_ring(P.ell)
    if raw:
        return _raw_fp_map(g, P, ring)
    G: list[Polynomial] = []
    H: list[Polynomial] = []
    for h in g.components:
        vs = all_divided_differences(ctx, h)
        for i in range(1, P.k):
            q = restrict_to_diagonal(ctx, P, vs[i])
            (G if _is_block_start(P, i) else H).append(q)
    return FPMap(ring, tuple(G), tuple(H), P)


def _raw_fp_map(g: GermSpec, P: Partition, ring: VariableContext) -> FPMap:
    tnames = ring.names[len(g.xvars):]
    base = {x: ring.var(x) for x in g.xvars}

    def at(q: Polynomial, b: int) -> Polynomial:
        return substitute(q, {**base, g.zvar: ring.var(tnames[b])}, target=ring)

    G, H = [], []
    for h in g.components:
        for b, r in enumerate(P.parts):
            for s in range(1, r):
                H.append(at(partial_derivative(h, g.zvar, s), b))
        first = at(h, 0)
        for b in range(1, P.ell):
            G.append(first - at(h, b))
    return FPMap(ring, tuple(G), tuple(H), P)


def lemma_ideal(g: GermSpec, P: Partition) -> IdealPresentation:
    m = fp_map(g, P, raw=True)
    return IdealPresentation(m.source_ring, m.components, Provenance("Lemma", str(P)))


def jacobian_matrix(polys: Sequence[Polynomial], ring: VariableContext) -> list[list[Polynomial]]:
    return [[partial_derivative(f, v) for v in ring.names] for f in polys]


def determinant_minors(matrix: list[list[Polynomial]], q: int, ring: VariableContext) -> list[Polynomial]:
    """All q x q minors using the first q rows of ``matrix``; column subsets in lex order."""
    rows = len(matrix)
    cols = len(matrix[0]) if matrix else 0
    if q > rows or q > cols:
        raise ValueError(f"minor size {q} exceeds matrix shape {rows}x{cols}")
    memo: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def det(row: int, colset: tuple[int, ...]) -> Polynomial:
        if not colset:
            return ring.one()
        key = (row, colset)
        if key in memo:
            return memo[key]
        total = ring.zero()
        for pos, c in enumerate(colset):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = det(row + 1, colset[:pos] + colset[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return [det(0, S) for S in combinations(range(cols), q)]


def jacobian_minors(m: FPMap, q: int | None = None) -> IdealPresentation:
    comps = m.components
    q = len(comps) if q is None else q
    if q != len(comps):
        raise ValueError(f"minor size must equal the number of components ({len(comps)})")
    if q > m.source_ring.nvars:
        raise ValueError(f"minor size {q} exceeds the {m.source_ring.nvars} source variables")
    mats = jacobian_matrix(comps, m.source_ring)
    minors = determinant_minors(mats, q, m.source_ring)
    return IdealPresentation(m.source_ring, tuple(minors), Provenance("Minors", str(m.partition)))
