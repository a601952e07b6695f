"""Exact partition arithmetic.

Partitions are the common currency for nilpotent orbits of GL_r, for the
derivative partitions of multisegments and for the covering
Barbasch-Vogan duality.  Everything here works on Python ints, so sizes
are unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition",
    "Composition",
    "transpose",
    "partition_sum",
    "dominance_leq",
    "height",
    "width",
    "s_col",
    "bv_dual",
    "iter_partitions",
]


@dataclass(frozen=True, slots=True)
class Partition:
    """A weakly decreasing tuple of positive integers (no stored zeros)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"partition parts must be positive integers, got {parts!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing, got {parts!r}")

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> Partition:
        """Sort descending and drop zeros."""
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __add__(self, other: Partition) -> Partition:
        return partition_sum([self, other])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Partition:
        return cls(tuple(data))


@dataclass(frozen=True, slots=True)
class Composition:
    """An ordered tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive integers, got {parts!r}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def sorted(self) -> Partition:
        return Partition.from_parts(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def transpose(p: Partition) -> Partition:
    """Conjugate partition: the i-th part counts the parts of ``p`` that are > i."""
    parts = p.parts
    if not parts:
        return Partition()
    out = []
    j = len(parts)
    for i in range(1, parts[0] + 1):
        while parts[j - 1] < i:
            j -= 1
        out.append(j)
    return Partition(tuple(out))


def partition_sum(ps: Iterable[Partition]) -> Partition:
    """Componentwise sum after zero-padding, e.g. (2,1) + (1,1) = (3,2).

    This is the row-wise sum used for induction of orbits, not the
    multiset union of parts.
    """
    rows = [sum(col) for col in zip_longest(*(q.parts for q in ps), fillvalue=0)]
    return Partition(tuple(rows))


def dominance_leq(p: Partition, q: Partition) -> bool:
    """True iff every prefix sum of ``p`` is at most the matching prefix sum of ``q``."""
    if p.size != q.size:
        raise ValueError(f"incomparable sizes: {p.size} and {q.size}")
    sp = sq = 0
    for a, b in zip_longest(p.parts, q.parts, fillvalue=0):
        sp += a
        sq += b
        if sp > sq:
            return False
    return True


def height(p: Partition) -> int:
    return len(p.parts)


def width(p: Partition) -> int:
    return p.parts[0] if p.parts else 0


def s_col(p: int, n_alpha: int) -> Partition:
    """Cut a single part ``p`` into columns of height ``n_alpha``: (n_alpha^a, b)."""
    if p < 1 or n_alpha < 1:
        raise ValueError(f"s_col needs p >= 1 and n_alpha >= 1, got p={p}, n_alpha={n_alpha}")
    a, b = divmod(p, n_alpha)
    return Partition((n_alpha,) * a + ((b,) if b else ()))


def bv_dual(p: Partition, n_alpha: int) -> Partition:
    """Covering Barbasch-Vogan dual: the sum of ``s_col(p_i, n_alpha)`` over the parts.

    For ``n_alpha == 1`` this is the ordinary transpose.
    """
    if n_alpha < 1:
        raise ValueError(f"n_alpha must be positive, got {n_alpha}")
    return partition_sum(s_col(x, n_alpha) for x in p.parts)


def iter_partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(n, max_part):
        yield Partition(parts)
