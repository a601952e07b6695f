"""Bernstein-Zelevinsky derivatives, Whittaker dimensions and the partition lambda_m.

All results live at the level of n-equivalence classes: a term is a
multisegment symbol Z(m) or L(m) with a non-negative multiplicity.
Every division by d_r (KP covers) is checked for exactness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb, prod
from typing import Any, Iterable, Literal, Mapping, NamedTuple, Sequence

from .covers import CoverSpec, d_r
from .errors import HypothesisError, IntegrityError
from .partitions import Composition, Partition
from .segments import (
    Multisegment,
    Segment,
    homogeneity_hypothesis,
    k_m,
    multisegment_minus,
    n_rho,
    normal_order,
)

__all__ = [
    "FormalSum",
    "DerivativeResult",
    "HighestDerivative",
    "wh_dim_Z",
    "wh_dim_L",
    "wh_dim_multisegment",
    "derivative_Z",
    "derivative_L",
    "derivative",
    "multisegment_derivative",
    "possible_derivative_degrees",
    "highest_derivative",
    "c_m",
    "lambda_of",
    "lambda_chain",
    "is_generic",
    "semi_whittaker_nonzero",
    "wh_dim_product",
    "top_derivative_degree_of_product",
]

Tag = Literal["Z", "L"]


def _exact_div(num: int, den: int, what: str) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise IntegrityError(f"{what}: {num}/{den} is not an integer")
    return q


@dataclass(frozen=True)
class FormalSum:
    """Non-negative integer combination of Z- or L-symbols."""

    terms: Mapping[Multisegment, int] = field(default_factory=dict)
    tag: Tag = "Z"

    def __post_init__(self) -> None:
        if self.tag not in ("Z", "L"):
            raise ValueError(f"tag must be 'Z' or 'L', got {self.tag!r}")
        clean = {}
        for m, mult in self.terms.items():
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for {m}")
            if mult:
                clean[m] = mult
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: str(kv[0]))))

    @classmethod
    def single(cls, m: Multisegment, tag: Tag = "Z", mult: int = 1) -> FormalSum:
        return cls({m: mult}, tag)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.tag == other.tag and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            (f"{mult}*" if mult != 1 else "") + f"{self.tag}({m})" for m, mult in self.terms.items()
        )

    def terms_json(self) -> list[dict[str, Any]]:
        return [{"mult": mult, "m": str(m)} for m, mult in self.terms.items()]


@dataclass(frozen=True)
class DerivativeResult:
    """The degree-k derivative as ``scalar * value``.

    ``scalar`` is None when the derivative is not determined by the
    available closed forms (non-top degrees of general multisegments).
    """

    degree: int
    value: FormalSum
    scalar: int | None

    @property
    def is_zero(self) -> bool:
        return self.scalar == 0

    @property
    def is_known(self) -> bool:
        return self.scalar is not None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "degree": self.degree,
            "scalar": self.scalar,
            "terms": self.value.terms_json(),
            "tag": self.value.tag,
        }
        if self.scalar is None:
            out["status"] = "open"
        return out

    def __str__(self) -> str:
        if self.scalar is None:
            return "open"
        if self.scalar == 0:
            return "0"
        return (f"{self.scalar}*" if self.scalar != 1 else "") + str(self.value)


class HighestDerivative(NamedTuple):
    degree: int
    socle: Multisegment
    socle_multiplicity: int


def _kp_scale(c: CoverSpec, value: int, r: int, what: str) -> int:
    """value / d_r for KP covers, value for S covers."""
    if not c.is_kp:
        return value
    return _exact_div(value, d_r(c, r), what)


def wh_dim_Z(d: Segment, c: CoverSpec) -> int:
    """Whittaker dimension of Z(d): C(n_rho, length), divided by d_size for KP covers."""
    c.require_tame("wh_dim_Z")
    return _kp_scale(c, comb(n_rho(d.rho, c), d.length), d.size, f"dim Wh(Z({d})) on {c}")


def wh_dim_L(d: Segment, c: CoverSpec) -> int:
    """Whittaker dimension of L(d): C(n_rho + length - 1, length), divided by d_size for KP."""
    c.require_tame("wh_dim_L")
    nr = n_rho(d.rho, c)
    return _kp_scale(c, comb(nr + d.length - 1, d.length), d.size, f"dim Wh(L({d})) on {c}")


def derivative(d: Segment, k: int, c: CoverSpec, tag: Tag = "Z") -> DerivativeResult:
    """k-th derivative of Z(d) (``tag='Z'``) or L(d) (``tag='L'``)."""
    c.require_tame(f"derivative_{tag}")
    if not 0 <= k <= d.size:
        raise ValueError(f"derivative degree must lie in [0, {d.size}], got {k}")
    if k == 0:
        return DerivativeResult(0, FormalSum.single(Multisegment([d]), tag), 1)
    zero = DerivativeResult(k, FormalSum({}, tag), 0)
    s, rem = divmod(k, d.rho.r0)
    if rem:
        return zero
    nr = n_rho(d.rho, c)
    binom = comb(nr, s) if tag == "Z" else comb(nr + s - 1, s)
    if c.is_kp:
        r = d.size
        scalar = _exact_div(d_r(c, r - k) * binom, d_r(c, r), f"{tag}({d})^({k}) scalar on {c}")
    else:
        scalar = binom
    if scalar == 0:
        return zero
    if s == d.length:
        rest = Multisegment()
    elif tag == "Z":
        rest = Multisegment([Segment(d.rho, d.a, d.b - s)])
    else:
        rest = Multisegment([Segment(d.rho, d.a + s, d.b)])
    return DerivativeResult(k, FormalSum.single(rest, tag), scalar)


def derivative_Z(d: Segment, k: int, c: CoverSpec) -> DerivativeResult:
    return derivative(d, k, c, "Z")


def derivative_L(d: Segment, k: int, c: CoverSpec) -> DerivativeResult:
    return derivative(d, k, c, "L")


def possible_derivative_degrees(m: Multisegment, c: CoverSpec) -> list[int]:
    """Degrees k at which Z(m)^(k) may be non-zero.

    These are the sums of r0_i * s_i with 0 <= s_i <= min(l_i, n_rho_i),
    the degrees carried by the standard module Z(d_1) x ... x Z(d_k).
    """
    ranges = [
        range(0, d.rho.r0 * min(d.length, n_rho(d.rho, c)) + 1, d.rho.r0) for d in m
    ]
    return sorted({sum(t) for t in product(*ranges)})


def multisegment_derivative(m: Multisegment, k: int, c: CoverSpec) -> DerivativeResult:
    """Derivative of Z(m) at degree k, as far as closed forms determine it.

    Single segments are exact.  For longer multisegments the top degree
    k_m yields its socle c_m * Z(m^-), degrees outside the support give 0,
    and anything else is reported as open (scalar None).
    """
    c.require_tame("multisegment_derivative")
    if not 0 <= k <= m.total_size:
        raise ValueError(f"derivative degree must lie in [0, {m.total_size}], got {k}")
    if len(m) == 1:
        return derivative_Z(m.segments[0], k, c)
    if k == 0:
        return DerivativeResult(0, FormalSum.single(m), 1)
    top = k_m(m, c)
    if k == top:
        hd = highest_derivative(m, c)
        return DerivativeResult(k, FormalSum.single(hd.socle), hd.socle_multiplicity)
    if k > top or k not in possible_derivative_degrees(m, c):
        return DerivativeResult(k, FormalSum({}), 0)
    return DerivativeResult(k, FormalSum({}), None)


def c_m(m: Multisegment, c: CoverSpec) -> int:
    """Total multiplicity of Z(m^-) in the top derivative of the standard module."""
    c.require_tame("c_m")
    arrangement = normal_order(m)
    if not homogeneity_hypothesis(arrangement, c):
        raise HypothesisError("homogeneity hypothesis not satisfied under any tested arrangement")
    binoms = prod(comb(n_rho(d.rho, c), min(d.length, n_rho(d.rho, c))) for d in arrangement)
    if not c.is_kp:
        return binoms
    r = m.total_size
    return _exact_div(d_r(c, r - k_m(m, c)) * binoms, d_r(c, r), f"c_m({m}) on {c}")


def highest_derivative(m: Multisegment, c: CoverSpec) -> HighestDerivative:
    c.require_tame("highest_derivative")
    if not m:
        raise ValueError("highest derivative of the empty multisegment is undefined")
    return HighestDerivative(k_m(m, c), multisegment_minus(m, c), c_m(m, c))


def lambda_chain(m: Multisegment, c: CoverSpec) -> list[tuple[int, Multisegment]]:
    """The iterated highest derivatives as (degree, multisegment after the step)."""
    c.require_tame("lambda_of")
    chain = []
    while m:
        k = k_m(m, c)
        m = multisegment_minus(m, c)
        chain.append((k, m))
    return chain


def lambda_of(m: Multisegment, c: CoverSpec) -> Partition:
    """Degrees of the iterated highest derivatives of Z(m)."""
    return Partition(tuple(k for k, _ in lambda_chain(m, c)))


def is_generic(m: Multisegment, c: CoverSpec) -> bool:
    c.require_tame("is_generic")
    return all(d.length <= n_rho(d.rho, c) for d in m)


def wh_dim_multisegment(m: Multisegment, c: CoverSpec) -> int | None:
    """Whittaker dimension of Z(m) where a closed form exists, else None."""
    c.require_tame("wh_dim_multisegment")
    if len(m) == 1:
        return wh_dim_Z(m.segments[0], c)
    if not is_generic(m, c):
        return 0
    if all(d.length == n_rho(d.rho, c) for d in m):
        return 1
    return None


def semi_whittaker_nonzero(d: Segment, lam: Composition | Sequence[int], c: CoverSpec) -> bool:
    """Whether Z(d) has a non-zero semi-Whittaker model of shape ``lam``."""
    c.require_tame("semi_whittaker_nonzero")
    if not isinstance(lam, Composition):
        lam = Composition(tuple(lam))
    if lam.size != d.size:
        raise ValueError(f"composition size {lam.size} does not match segment size {d.size}")
    bound = n_rho(d.rho, c) * d.rho.r0
    return all(p % d.rho.r0 == 0 and p <= bound for p in lam)


def wh_dim_product(dims: Iterable[tuple[int, int]], c: CoverSpec) -> int:
    """Whittaker dimension of a product from (dim, block size) of its factors."""
    c.require_tame("wh_dim_product")
    dims = list(dims)
    if any(size < 1 for _, size in dims):
        raise ValueError("block sizes must be positive")
    if not c.is_kp:
        return prod(dim for dim, _ in dims)
    r = sum(size for _, size in dims)
    num = prod(dim * d_r(c, size) for dim, size in dims)
    return _exact_div(num, d_r(c, r), f"Whittaker dimension of product on {c}")


def top_derivative_degree_of_product(m: Multisegment, c: CoverSpec) -> int:
    """Highest derivative degree of the standard module, summed segment by segment."""
    c.require_tame("top_derivative_degree_of_product")
    total = sum(min(n_rho(d.rho, c) * d.rho.r0, d.length * d.rho.r0) for d in m)
    if total != k_m(m, c):
        raise IntegrityError(f"Leibniz degree {total} differs from k_m = {k_m(m, c)} for {m}")
    return total
