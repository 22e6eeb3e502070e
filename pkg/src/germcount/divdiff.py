"""Divided differences in the corank variable and diagonal restriction.

For a function ``h(x, z)`` and nodes ``z_1..z_k`` the divided difference
``V_i^k(h)`` is the coefficient of ``z^i`` in the polynomial of degree < k in
``z`` interpolating ``h(x, .)`` at the nodes.  That interpolant is the remainder
of ``h`` modulo the node polynomial ``prod_a (z - z_a)``, which is monic, so the
coefficients are polynomials in ``(x, z_1..z_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .germparse import GermSpec
from .partition import Partition
from .polyring import Polynomial, VariableContext, substitute


def _fresh_names(stem: str, count: int, taken: set[str]) -> tuple[str, ...]:
    sep = ""
    while True:
        names = tuple(f"{stem}{sep}{a}" for a in range(1, count + 1))
        if not taken.intersection(names):
            return names
        sep += "_"


@dataclass(frozen=True)
class MultiPointContext:
    """Ring ``(x_1..x_{n-1}, z_1..z_k)`` for k-tuples of points of a germ."""

    base: GermSpec
    k: int
    zstem: str = "z"
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("need at least one point")

    @cached_property
    def znames(self) -> tuple[str, ...]:
        return _fresh_names(self.zstem, self.k, set(self.base.xvars))

    @cached_property
    def ring(self) -> VariableContext:
        w = self.base.weights
        weights = None if w is None else tuple(w[:-1]) + (w[-1],) * self.k
        return VariableContext(self.base.xvars + self.znames, weights)

    def zvar(self, a: int) -> Polynomial:
        """The a-th node variable, 1-based."""
        return self.ring.var(self.znames[a - 1])

    def diagonal_ring(self, ell: int) -> VariableContext:
        tnames = _fresh_names("t", ell, set(self.base.xvars))
        w = self.base.weights
        weights = None if w is None else tuple(w[:-1]) + (w[-1],) * ell
        return VariableContext(self.base.xvars + tnames, weights)

    def remainder_table(self, m: int) -> tuple[Polynomial, ...]:
        """Coefficients (of z^0..z^{k-1}) of ``z^m mod prod_a (z - z_a)``."""
        table = self._cache.setdefault("rem", [])
        if not table:
            one, zero = self.ring.one(), self.ring.zero()
            table.extend(tuple(one if i == j else zero for i in range(self.k))
                         for j in range(self.k))
        omega = self._node_polynomial()
        while len(table) <= m:
            prev = table[-1]
            top = prev[-1]
            nxt = [(prev[i - 1] if i else self.ring.zero()) - top * omega[i]
                   for i in range(self.k)]
            table.append(tuple(nxt))
        return table[m]

    def _node_polynomial(self) -> tuple[Polynomial, ...]:
        # lower coefficients of prod_a (z - z_a), monic of degree k
        if "omega" not in self._cache:
            coeffs = [self.ring.one()]
            for a in range(1, self.k + 1):
                za = self.zvar(a)
                shifted = [self.ring.zero()] + coeffs
                coeffs = [shifted[i] - (za * coeffs[i] if i < len(coeffs) else 0)
                          for i in range(len(shifted))]
            self._cache["omega"] = tuple(coeffs[:-1])
        return self._cache["omega"]


def coefficients_in(h: Polynomial, var: str, ring: VariableContext) -> dict[int, Polynomial]:
    """Split ``h`` as sum_m c_m * var^m, with each c_m re-embedded in ``ring``."""
    j = h.ring.index(var)
    pos = {name: ring.index(name) for name in h.ring.names if name != var}
    buckets: dict[int, dict] = {}
    for e, c in h.items():
        target = [0] * ring.nvars
        for i, a in enumerate(e):
            if i != j and a:
                target[pos[h.ring.names[i]]] = a
        bucket = buckets.setdefault(e[j], {})
        bucket[tuple(target)] = bucket.get(tuple(target), 0) + c
    return {m: Polynomial(ring, terms) for m, terms in buckets.items()}


def divided_difference(ctx: MultiPointContext, h: Polynomial, i: int) -> Polynomial:
    """``V_i^k(h)`` as an exact polynomial in ``ctx.ring``."""
    if not 0 <= i < ctx.k:
        raise IndexError(f"divided-difference index {i} outside [0, {ctx.k - 1}]")
    out = ctx.ring.zero()
    for m, c in coefficients_in(h, ctx.base.zvar, ctx.ring).items():
        r = ctx.remainder_table(m)[i]
        if r:
            out = out + c * r
    return out


def all_divided_differences(ctx: MultiPointContext, h: Polynomial) -> list[Polynomial]:
    """``[V_0^k(h), ..., V_{k-1}^k(h)]``."""
    coeffs = coefficients_in(h, ctx.base.zvar, ctx.ring)
    out = [ctx.ring.zero() for _ in range(ctx.k)]
    for m, c in coeffs.items():
        row = ctx.remainder_table(m)
        for i in range(ctx.k):
            if row[i]:
                out[i] = out[i] + c * row[i]
    return out


def _check_partition(ctx: MultiPointContext, P: Partition) -> None:
    if P.k != ctx.k:
        raise ValueError(f"partition {P} does not partition k={ctx.k}")


def projection(ctx: MultiPointContext, P: Partition, i: int) -> dict[str, Polynomial]:
    """Assignment ``x -> x, z -> z_{r_1+...+r_{i-1}+1}`` (``i`` is 1-based)."""
    _check_partition(ctx, P)
    if not 1 <= i <= P.ell:
        raise IndexError(f"block index {i} outside [1, {P.ell}]")
    assignment = {x: ctx.ring.var(x) for x in ctx.base.xvars}
    assignment[ctx.base.zvar] = ctx.zvar(P.block_starts()[i - 1] + 1)
    return assignment


def restrict_to_diagonal(ctx: MultiPointContext, P: Partition, p: Polynomial) -> Polynomial:
    """Send every node of block i to ``t_i``; result lives in ``(x, t_1..t_l)``."""
    _check_partition(ctx, P)
    target = ctx.diagonal_ring(P.ell)
    tnames = target.names[len(ctx.base.xvars):]
    assignment = {x: target.var(x) for x in ctx.base.xvars}
    for a, b in enumerate(P.block_of()):
        assignment[ctx.znames[a]] = target.var(tnames[b])
    return substitute(p, assignment, target=target)
