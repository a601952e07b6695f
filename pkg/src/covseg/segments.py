"""Symbolic cuspidal lines, segments and multisegments.

A cuspidal datum is an opaque label together with its block size ``r0``
and reducibility invariant ``l``; twists along its line are plain
integers.  Distinct integer twists are always distinct symbols: the line
is modelled as a free Z-line, with no torsion in the twist lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .covers import CoverSpec
from .errors import InvariantError

__all__ = [
    "CuspidalDatum",
    "Segment",
    "Multisegment",
    "n_rho",
    "check_cuspidal",
    "linked",
    "precedes",
    "normal_order",
    "homogeneity_hypothesis",
    "segment_minus",
    "multisegment_minus",
    "k_m",
]


@dataclass(frozen=True, slots=True)
class CuspidalDatum:
    """A supercuspidal block: identifier, block size ``r0``, reducibility invariant ``l``."""

    id: str
    r0: int
    l: int

    def __post_init__(self) -> None:
        if not isinstance(self.r0, int) or self.r0 < 1:
            raise InvariantError(f"r0 must be a positive integer, got {self.r0!r}")
        if not isinstance(self.l, int) or self.l < 1:
            raise InvariantError(f"l must be a positive integer, got {self.l!r}")


def check_cuspidal(rho: CuspidalDatum, cover: CoverSpec) -> None:
    """Raise InvariantError unless ``rho`` is admissible for ``cover``."""
    if cover.n % rho.l:
        raise InvariantError(f"l={rho.l} of {rho.id} does not divide n={cover.n}")
    if cover.is_kp and rho.r0 % rho.l:
        raise InvariantError(f"KP cover: l={rho.l} of {rho.id} does not divide r0={rho.r0}")


def n_rho(rho: CuspidalDatum, cover: CoverSpec) -> int:
    """n / l(rho), the twist period of the line."""
    if cover.n % rho.l:
        raise InvariantError(f"l={rho.l} of {rho.id} does not divide n={cover.n}")
    return cover.n // rho.l


@dataclass(frozen=True, slots=True)
class Segment:
    """The segment [a, b] on the line of ``rho``."""

    rho: CuspidalDatum
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.b < self.a:
            raise InvariantError(f"empty or reversed segment [{self.a},{self.b}]_{self.rho.id}")

    @property
    def length(self) -> int:
        return self.b - self.a + 1

    @property
    def size(self) -> int:
        return self.length * self.rho.r0

    def sort_key(self) -> tuple:
        return (self.rho.id, self.rho.r0, self.rho.l, -self.b, -self.a)

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]_{self.rho.id}"


EMPTY_TEXT = "[]"


class Multisegment:
    """A finite multiset of segments, stored in normal order.

    Two multisegments with the same segments compare equal regardless of
    the order they were given in.
    """

    __slots__ = ("segments", "_hash")

    def __init__(self, segments: Iterable[Segment] = ()) -> None:
        self.segments: tuple[Segment, ...] = tuple(sorted(segments, key=Segment.sort_key))
        self._hash = hash(self.segments)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self.segments == other.segments

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __bool__(self) -> bool:
        return bool(self.segments)

    def __add__(self, other: Multisegment) -> Multisegment:
        return Multisegment(self.segments + other.segments)

    def __repr__(self) -> str:
        return f"Multisegment({self})"

    def __str__(self) -> str:
        if not self.segments:
            return EMPTY_TEXT
        return " + ".join(map(str, self.segments))

    @property
    def total_size(self) -> int:
        return sum(d.size for d in self.segments)

    @property
    def cuspidals(self) -> tuple[CuspidalDatum, ...]:
        return tuple(dict.fromkeys(d.rho for d in self.segments))


def linked(d1: Segment, d2: Segment) -> bool:
    """True iff the union of the two segments is a segment strictly larger than both."""
    if d1.rho != d2.rho:
        return False
    if max(d1.a, d2.a) > min(d1.b, d2.b) + 1:
        return False  # gap between them
    nested = (d1.a <= d2.a and d2.b <= d1.b) or (d2.a <= d1.a and d1.b <= d2.b)
    return not nested


def precedes(d1: Segment, d2: Segment) -> bool:
    return linked(d1, d2) and d1.a < d2.a and d1.b < d2.b and d1.b >= d2.a - 1


def normal_order(m: Multisegment | Iterable[Segment]) -> tuple[Segment, ...]:
    """Deterministic arrangement: by line, then right endpoint and left endpoint descending.

    No segment precedes a later one in this order, and the homogeneity
    hypothesis holds for it (a later segment on the same line never
    reaches past the right endpoint of an earlier one).
    """
    if isinstance(m, Multisegment):
        return m.segments
    return tuple(sorted(m, key=Segment.sort_key))


def homogeneity_hypothesis(segments: Sequence[Segment], cover: CoverSpec) -> bool:
    """Check the arrangement hypothesis under which the socle multiplicity is known.

    For each i: no later segment is preceded by segment i, and no later
    segment on the same line meets the twists
    b_i + 1 - min(l_i, n_rho) + n_rho, ..., b_i + n_rho.
    """
    segs = list(segments)
    for i, di in enumerate(segs):
        nr = n_rho(di.rho, cover)
        lo = di.b + 1 - min(di.length, nr) + nr
        hi = di.b + nr
        for dj in segs[i + 1:]:
            if precedes(di, dj):
                return False
            if dj.rho == di.rho and dj.a <= hi and lo <= dj.b:
                return False
    return True


def segment_minus(d: Segment, cover: CoverSpec) -> Segment | None:
    """Drop min(length, n_rho) twists from the right end; None when nothing is left."""
    b = d.b - min(d.length, n_rho(d.rho, cover))
    if b < d.a:
        return None
    return Segment(d.rho, d.a, b)


def multisegment_minus(m: Multisegment, cover: CoverSpec) -> Multisegment:
    out = []
    for d in m:
        e = segment_minus(d, cover)
        if e is not None:
            out.append(e)
    return Multisegment(out)


def k_m(m: Multisegment, cover: CoverSpec) -> int:
    """Degree of the highest derivative: sum of r0 * min(length, n_rho)."""
    return sum(d.rho.r0 * min(d.length, n_rho(d.rho, cover)) for d in m)
