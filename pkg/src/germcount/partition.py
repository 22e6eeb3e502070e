from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Iterable


@dataclass(frozen=True, order=True)
class Partition:
    """Partition ``(r_1 >= ... >= r_l)`` of ``k``; input order is normalized away."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(r) for r in self.parts)
        if not parts or any(r < 1 for r in parts):
            raise ValueError(f"partition parts must be positive integers, got {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        try:
            return cls(tuple(int(s) for s in text.replace(" ", "").strip("()").split(",") if s))
        except ValueError:
            raise ValueError(f"cannot parse partition {text!r}") from None

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def ell(self) -> int:
        return len(self.parts)

    def dimension(self, n: int, p: int) -> int:
        """Expected dimension p - k(p-n+1) + l of the stable type."""
        return p - self.k * (p - n + 1) + self.ell

    def block_starts(self) -> list[int]:
        """0-based index of the first point of each block."""
        starts, acc = [], 0
        for r in self.parts:
            starts.append(acc)
            acc += r
        return starts

    def block_of(self) -> list[int]:
        """For each of the k points, the 0-based block it belongs to."""
        return [b for b, r in enumerate(self.parts) for _ in range(r)]

    def is_multiplicity_free(self) -> bool:
        return all(r == 1 for r in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def stabilizer_order(P: Partition | Iterable[int]) -> int:
    """Order of the subgroup of S_l fixing P: product of factorials of part multiplicities."""
    parts = P.parts if isinstance(P, Partition) else tuple(P)
    out = 1
    for mult in Counter(parts).values():
        out *= factorial(mult)
    return out


def partitions_of(k: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """All partitions of k as non-increasing tuples, in reverse-lex order."""
    largest = k if largest is None else largest
    if k == 0:
        return [()]
    out = []
    for first in range(min(k, largest), 0, -1):
        for rest in partitions_of(k - first, first):
            out.append((first,) + rest)
    return out
