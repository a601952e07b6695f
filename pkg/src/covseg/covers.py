"""Kazhdan-Patterson and Savin covers of GL_r and their numerical invariants."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Mapping, NamedTuple

from .errors import HypothesisError, IntegrityError, InvariantError

__all__ = ["Family", "CoverSpec", "n_alpha", "d_r", "mtp_multiplicities", "MTPConstants"]


class Family(str, enum.Enum):
    KP = "KP"
    S = "S"


@dataclass(frozen=True, slots=True)
class CoverSpec:
    """An n-fold KP cover (with twist ``a``) or the n-fold Savin cover.

    ``tame`` records the standing assumption gcd(p, n) = 1; the residue
    characteristic itself never enters a formula.
    """

    family: Family
    n: int
    a: int | None = None
    tame: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.n, int) or self.n < 1:
            raise InvariantError(f"cover degree must be a positive integer, got {self.n!r}")
        if self.family is Family.KP:
            if self.a is None:
                object.__setattr__(self, "a", 0)
        elif self.a is not None:
            raise InvariantError("S-covers carry no twist parameter a")

    @classmethod
    def kp(cls, n: int, a: int = 0, tame: bool = True) -> CoverSpec:
        return cls(Family.KP, n, a, tame)

    @classmethod
    def savin(cls, n: int, tame: bool = True) -> CoverSpec:
        return cls(Family.S, n, None, tame)

    @property
    def is_kp(self) -> bool:
        return self.family is Family.KP

    def d(self, r: int) -> int:
        return d_r(self, r)

    def require_tame(self, what: str = "operation") -> None:
        if not self.tame:
            raise HypothesisError(f"theorem hypotheses not met: {what} assumes gcd(p, n) = 1")

    def to_json(self) -> dict[str, Any]:
        if self.is_kp:
            return {"family": "KP", "n": self.n, "a": self.a}
        return {"family": "S", "n": self.n}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> CoverSpec:
        fam = Family(data["family"])
        if fam is Family.KP:
            return cls.kp(int(data["n"]), int(data.get("a", 0)))
        if "a" in data:
            raise InvariantError("S-covers carry no twist parameter a")
        return cls.savin(int(data["n"]))

    def __str__(self) -> str:
        if self.is_kp:
            return f"KP n={self.n} a={self.a}"
        return f"S n={self.n}"


def n_alpha(c: CoverSpec) -> int:
    """n for KP covers, n / gcd(n, 2) for S covers."""
    if c.is_kp:
        return c.n
    return c.n // gcd(c.n, 2)


def d_r(c: CoverSpec, r: int) -> int:
    """gcd(n, 2ra - r + 1) for a KP cover; evaluated literally, so d_0 = 1."""
    if not c.is_kp:
        raise HypothesisError("d_r undefined for S-covers")
    if r < 0:
        raise ValueError(f"d_r needs r >= 0, got {r}")
    return gcd(c.n, 2 * r * c.a - r + 1)


class MTPConstants(NamedTuple):
    m1: int
    m2: int
    m: int
    ratio: Fraction


def mtp_multiplicities(c: CoverSpec, r: int, k: int) -> MTPConstants:
    """Multiplicity constants of the two-block metaplectic tensor product.

    Returns m1 = m2 = n^2, m = n^4 d_r / (d_{r-k} d_k) and
    ratio = m1 m2 / m = d_k d_{r-k} / d_r.  The ratio is an exact rational:
    it need not be an integer (KP n=3, a=1, r=2, k=1 gives 1/3).
    """
    if not c.is_kp:
        raise HypothesisError("metaplectic tensor multiplicities are only defined for KP covers")
    c.require_tame("mtp_multiplicities")
    if not 0 < k < r:
        raise ValueError(f"need 0 < k < r, got k={k}, r={r}")
    dr, drk, dk = d_r(c, r), d_r(c, r - k), d_r(c, k)
    m1 = m2 = c.n**2
    num, den = c.n**4 * dr, drk * dk
    if num % den:
        raise IntegrityError(f"m = {num}/{den} is not an integer ({c}, r={r}, k={k})")
    m = num // den
    ratio = Fraction(m1 * m2, m)
    if ratio != Fraction(dk * drk, dr):
        raise IntegrityError(f"m1*m2/m = {ratio} differs from d_k d_(r-k) / d_r ({c}, r={r}, k={k})")
    return MTPConstants(m1, m2, m, ratio)
