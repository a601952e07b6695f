"""Wavefront sets, parameter orbits and the covering Barbasch-Vogan check."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Any, Iterable, NamedTuple

from .covers import CoverSpec, n_alpha
from .derivatives import is_generic, lambda_of
from .errors import HypothesisError, IntegrityError, InvariantError
from .partitions import Partition, bv_dual, width
from .segments import CuspidalDatum, Multisegment, Segment, k_m

__all__ = [
    "OrbitPart",
    "ParameterOrbit",
    "BVCheck",
    "wavefront",
    "parameter_orbit",
    "bv_consistency",
    "min_generic_level",
]


class OrbitPart(NamedTuple):
    """One block of the parameter: part ``value`` repeated ``multiplicity`` times.

    ``value`` is length * l(rho), ``multiplicity`` is r0 / l(rho); ``l_rho``
    is kept so the block can be lifted back to a segment.
    """

    value: int
    multiplicity: int
    l_rho: int = 1


@dataclass(frozen=True)
class ParameterOrbit:
    partition: Partition
    provenance: tuple[OrbitPart, ...]

    @classmethod
    def from_parts(cls, provenance: Iterable[OrbitPart]) -> ParameterOrbit:
        provenance = tuple(provenance)
        parts = [rec.value for rec in provenance for _ in range(rec.multiplicity)]
        return cls(Partition.from_parts(parts), provenance)

    @classmethod
    def from_partition(cls, p: Partition) -> ParameterOrbit:
        """Orbit with bare provenance: every part on its own l(rho) = 1 line."""
        return cls(p, tuple(OrbitPart(x, 1, 1) for x in p))

    @property
    def size(self) -> int:
        return self.partition.size


class BVCheck(NamedTuple):
    lhs: Partition
    rhs: Partition
    equal: bool
    orbit: Partition
    conjectural: bool = False

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "lambda": self.lhs.to_json(),
            "bv": self.rhs.to_json(),
            "equal": self.equal,
            "orbit": self.orbit.to_json(),
        }
        if self.conjectural:
            out["status"] = "conjectural: no proven identity for S-covers"
        return out


def wavefront(m: Multisegment, c: CoverSpec) -> Partition:
    """The unique orbit of the (singleton) wavefront set of Z(m)."""
    if not c.tame:
        raise HypothesisError("theorem hypotheses not met: the wavefront theorem assumes p does not divide n")
    return lambda_of(m, c)


def _orbit(m: Multisegment) -> ParameterOrbit:
    recs = []
    for d in m:
        rho = d.rho
        if rho.r0 % rho.l:
            raise InvariantError(f"l={rho.l} does not divide r0={rho.r0} for {rho.id}")
        recs.append(OrbitPart(d.length * rho.l, rho.r0 // rho.l, rho.l))
    return ParameterOrbit.from_parts(recs)


def parameter_orbit(m: Multisegment, c: CoverSpec) -> ParameterOrbit:
    """Orbit of the L-parameter of L(m) through the metaplectic correspondence."""
    if not c.is_kp:
        raise HypothesisError("parameter orbit defined only for KP covers")
    return _orbit(m)


def bv_consistency(m: Multisegment, c: CoverSpec) -> BVCheck:
    """Compare the wavefront orbit with the covering BV dual of the parameter orbit.

    For S covers the comparison is computed on request but flagged as
    conjectural; only the KP case is a theorem.
    """
    c.require_tame("bv_consistency")
    conjectural = not c.is_kp
    orbit = _orbit(m) if conjectural else parameter_orbit(m, c)
    lhs = wavefront(m, c)
    rhs = bv_dual(orbit.partition, n_alpha(c))
    if not conjectural:
        lead = sum(rec.multiplicity * min(c.n, rec.value) for rec in orbit.provenance)
        if lead != k_m(m, c):
            raise IntegrityError(f"leading-part identity fails for {m} on {c}: {lead} != {k_m(m, c)}")
    return BVCheck(lhs, rhs, lhs == rhs, orbit.partition, conjectural)


def _lift(orbit: ParameterOrbit) -> Multisegment:
    segs = []
    for i, rec in enumerate(orbit.provenance):
        if rec.value % rec.l_rho:
            raise InvariantError(f"part {rec.value} is not a multiple of l(rho)={rec.l_rho}")
        rho = CuspidalDatum(f"lift{i}", rec.multiplicity * rec.l_rho, rec.l_rho)
        segs.append(Segment(rho, 0, rec.value // rec.l_rho - 1))
    return Multisegment(segs)


def min_generic_level(orbit: ParameterOrbit, max_level: int | None = None) -> int:
    """Smallest admissible cover degree at which the lifted Z(m) is generic.

    A level n is admissible when every l(rho) divides it.  When all
    l(rho) = 1 the answer is the width of the orbit.
    """
    m = _lift(orbit)
    step = lcm(*(rec.l_rho for rec in orbit.provenance)) if orbit.provenance else 1
    if max_level is None:
        max_level = max(width(orbit.partition), 1) * step
    level = None
    for n in range(step, max_level + 1, step):
        if is_generic(m, CoverSpec.kp(n)):
            level = n
            break
    if level is None:
        raise IntegrityError(f"no generic level up to {max_level} for orbit {orbit.partition}")
    if all(rec.l_rho == 1 for rec in orbit.provenance) and level != max(width(orbit.partition), 1):
        raise IntegrityError(f"generic level {level} differs from width {width(orbit.partition)}")
    return level
