"""Exhaustive enumeration of small instances and identity checks over them.

Cuspidal data are generated canonically: one line per admissible
(r0, l) pair, since every formula factors through (r0, l) and the
segment lengths.  Segments start at twists ``0 .. offsets-1``.
"""

from __future__ import annotations

import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .covers import CoverSpec, Family
from .derivatives import (
    c_m,
    derivative,
    derivative_Z,
    is_generic,
    lambda_chain,
    lambda_of,
    wh_dim_L,
    wh_dim_multisegment,
    wh_dim_product,
    wh_dim_Z,
)
from .errors import CovsegError
from .langlands import bv_consistency
from .partitions import Partition
from .segments import CuspidalDatum, Multisegment, Segment, k_m, n_rho, segment_minus

__all__ = [
    "CHECKS",
    "SweepConfig",
    "SweepResult",
    "parse_covers",
    "canonical_cuspidals",
    "iter_multisegments",
    "run_sweep",
    "instance_row",
    "CSV_COLUMNS",
]

CHECKS = ("lambda", "bv", "generic", "n1", "integrality", "chain", "cm")
CSV_COLUMNS = ("multisegment", "n", "family", "a", "lambda", "bv", "equal", "generic", "whdimZ")


# -- cover ranges -------------------------------------------------------------

_RANGE = re.compile(r"^(n|a)\s*(?:(<=)\s*(-?\d+)|(=)\s*(-?\d+)|\s+in\s+(-?\d+)\s*\.\.\s*(-?\d+))$")


def parse_covers(spec: str) -> list[CoverSpec]:
    """Expand e.g. ``"KP:n<=4,a in -1..1;S:n<=6"`` into cover specs.

    Clauses per family: ``n<=N``, ``n=N``, ``n in A..B``, and for KP
    ``a=A`` or ``a in A..B`` (default a=0).
    """
    covers: list[CoverSpec] = []
    for chunk in filter(None, (s.strip() for s in spec.split(";"))):
        fam_text, _, rest = chunk.partition(":")
        try:
            fam = Family(fam_text.strip())
        except ValueError:
            raise ValueError(f"unknown cover family {fam_text.strip()!r} in {chunk!r}") from None
        ranges = {"n": None, "a": range(0, 1)}
        for clause in filter(None, (s.strip() for s in rest.split(","))):
            mo = _RANGE.match(clause)
            if mo is None:
                raise ValueError(f"cannot parse cover clause {clause!r}")
            key = mo.group(1)
            if mo.group(2):
                lo, hi = (1 if key == "n" else None), int(mo.group(3))
                if lo is None:
                    raise ValueError("a<=N is unbounded below; use 'a in A..B'")
            elif mo.group(4):
                lo = hi = int(mo.group(5))
            else:
                lo, hi = int(mo.group(6)), int(mo.group(7))
            ranges[key] = range(lo, hi + 1)
        if ranges["n"] is None:
            raise ValueError(f"cover block {chunk!r} needs an n clause")
        if fam is Family.S and rest and re.search(r"(^|,)\s*a\b", rest):
            raise ValueError("S-covers carry no twist parameter a")
        for n in ranges["n"]:
            if fam is Family.KP:
                covers.extend(CoverSpec.kp(n, a) for a in ranges["a"])
            else:
                covers.append(CoverSpec.savin(n))
    return covers


# -- enumeration ----------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def canonical_cuspidals(cover: CoverSpec, max_r0: int = 3) -> list[CuspidalDatum]:
    """One line per admissible (r0, l): l | n, and l | r0 for KP covers."""
    out = []
    for r0 in range(1, max_r0 + 1):
        for l in _divisors(cover.n):
            if cover.is_kp and r0 % l:
                continue
            out.append(CuspidalDatum(f"r{r0}l{l}", r0, l))
    return out


def iter_multisegments(
    cuspidals: Sequence[CuspidalDatum], max_size: int, offsets: int = 1, min_size: int = 1
) -> Iterator[Multisegment]:
    """All multisegments of total size in [min_size, max_size] over the given lines."""
    types = [
        Segment(rho, a, a + length - 1)
        for rho in cuspidals
        for a in range(offsets)
        for length in range(1, max_size // rho.r0 + 1)
    ]
    chosen: list[Segment] = []

    def rec(start: int, budget: int) -> Iterator[Multisegment]:
        if max_size - budget >= min_size:
            yield Multisegment(chosen)
        for i in range(start, len(types)):
            d = types[i]
            if d.size <= budget:
                chosen.append(d)
                yield from rec(i, budget - d.size)
                chosen.pop()

    yield from rec(0, max_size)


# -- checks -------------------------------------------------------------------

def _transpose_by_cells(parts: Sequence[int]) -> Partition:
    """Column lengths of the Young diagram, counted cell by cell."""
    cells = {(i, j) for i, p in enumerate(parts) for j in range(p)}
    cols = Counter(j for _, j in cells)
    return Partition(tuple(cols[j] for j in sorted(cols)))


class _Checker:
    """Per-cover state: caches the segment-level checks, which only depend on the segment."""

    def __init__(self, cover: CoverSpec) -> None:
        self.cover = cover
        self._segment_ok: dict[Segment, str | None] = {}

    def segment_integrality(self, d: Segment) -> str | None:
        if d not in self._segment_ok:
            self._segment_ok[d] = self._check_segment(d)
        return self._segment_ok[d]

    def _check_segment(self, d: Segment) -> str | None:
        c = self.cover
        try:
            wh_dim_Z(d, c)
            wh_dim_L(d, c)
            for k in range(d.size + 1):
                derivative(d, k, c, "Z")
                derivative(d, k, c, "L")
        except CovsegError as exc:
            return str(exc)
        return None

    def check(self, m: Multisegment, checks: Sequence[str]) -> dict[str, str | None]:
        """Run the requested checks; value is None on success or a failure message."""
        c = self.cover
        out: dict[str, str | None] = {}
        degrees = [k for k, _ in lambda_chain(m, c)]
        well_formed = all(x >= y for x, y in zip(degrees, degrees[1:])) and sum(degrees) == m.total_size
        if "lambda" in checks:
            out["lambda"] = None if well_formed else f"degrees {degrees} are not a partition of {m.total_size}"
        if not well_formed:
            return out
        lam = Partition(tuple(degrees))
        if "bv" in checks and c.is_kp:
            try:
                res = bv_consistency(m, c)
                out["bv"] = None if res.equal else f"lambda={res.lhs} but bv={res.rhs}"
            except CovsegError as exc:
                out["bv"] = str(exc)
        if "generic" in checks:
            gen = is_generic(m, c)
            out["generic"] = None if gen == (len(lam) == 1) else f"is_generic={gen}, lambda={lam}"
        if "n1" in checks and c.n == 1:
            expected = _transpose_by_cells(
                [d.length for d in m for _ in range(d.rho.r0)]
            )
            out["n1"] = None if lam == expected else f"lambda={lam}, transpose oracle={expected}"
        if "integrality" in checks:
            msg = None
            for d in m:
                msg = self.segment_integrality(d)
                if msg:
                    break
            if msg is None:
                try:
                    c_m(m, c)
                    wh_dim_product([(wh_dim_Z(d, c), d.size) for d in m], c)
                except CovsegError as exc:
                    msg = str(exc)
            out["integrality"] = msg
        if "chain" in checks and len(m) == 1:
            out["chain"] = _check_chain(m.segments[0], c)
        if "cm" in checks and all(d.length >= n_rho(d.rho, c) for d in m):
            val = c_m(m, c)
            out["cm"] = None if val == 1 else f"c_m={val} in the multiplicity-one regime"
        return out


def _check_chain(d: Segment, c: CoverSpec) -> str | None:
    """Iterate derivative_Z at its top non-zero degree and compare with the lambda chain."""
    chain = lambda_chain(Multisegment([d]), c)
    cur: Segment | None = d
    for step, (k_expected, m_expected) in enumerate(chain):
        if cur is None:
            return f"derivative chain ended early at step {step}"
        top = next(k for k in range(cur.size, 0, -1) if not derivative_Z(cur, k, c).is_zero)
        res = derivative_Z(cur, top, c)
        (term,) = res.value.terms
        if top != k_expected or term != m_expected:
            return f"step {step}: derivative gives ({top}, {term}), chain gives ({k_expected}, {m_expected})"
        if top != k_m(Multisegment([cur]), c):
            return f"step {step}: top degree {top} != k_m"
        nxt = segment_minus(cur, c)
        if Multisegment([nxt] if nxt else []) != term:
            return f"step {step}: segment_minus disagrees with the derivative term"
        cur = nxt
    if cur is not None:
        return "derivative chain longer than lambda chain"
    return None


# -- driver -------------------------------------------------------------------

@dataclass
class SweepConfig:
    max_size: int = 10
    max_r0: int = 3
    offsets: int = 1
    checks: tuple[str, ...] = CHECKS
    collect_rows: bool = False
    max_failures: int = 20


@dataclass
class SweepResult:
    instances: int = 0
    checked: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    failures: list[dict] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not sum(self.failed.values())

    def merge(self, other: SweepResult, max_failures: int) -> None:
        self.instances += other.instances
        self.checked.update(other.checked)
        self.failed.update(other.failed)
        room = max_failures - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])
        self.rows.extend(other.rows)

    def to_json(self, checks: Sequence[str]) -> dict:
        return {
            "instances": self.instances,
            "checks": {
                name: {"checked": self.checked[name], "failures": self.failed[name]} for name in checks
            },
            "failures": self.failures,
            "ok": self.ok,
        }


def _fmt(p: Partition | None) -> str:
    return "" if p is None else str(p)


def instance_row(m: Multisegment, c: CoverSpec) -> dict[str, str]:
    lam = lambda_of(m, c)
    bv = equal = ""
    if c.is_kp:
        res = bv_consistency(m, c)
        bv, equal = str(res.rhs), str(res.equal).lower()
    wh = wh_dim_multisegment(m, c)
    return {
        "multisegment": str(m),
        "n": str(c.n),
        "family": c.family.value,
        "a": "" if c.a is None else str(c.a),
        "lambda": str(lam),
        "bv": bv,
        "equal": equal,
        "generic": str(is_generic(m, c)).lower(),
        "whdimZ": "unknown" if wh is None else str(wh),
    }


def _sweep_cover(args: tuple[CoverSpec, SweepConfig]) -> SweepResult:
    cover, cfg = args
    checker = _Checker(cover)
    res = SweepResult()
    lines = canonical_cuspidals(cover, cfg.max_r0)
    for m in iter_multisegments(lines, cfg.max_size, cfg.offsets):
        res.instances += 1
        for name, msg in checker.check(m, cfg.checks).items():
            res.checked[name] += 1
            if msg is not None:
                res.failed[name] += 1
                if len(res.failures) < cfg.max_failures:
                    res.failures.append(
                        {"check": name, "cover": cover.to_json(), "multisegment": str(m), "reason": msg}
                    )
        if cfg.collect_rows:
            res.rows.append(instance_row(m, cover))
    return res


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("COVSEG_THREADS", "1")))
    except ValueError:
        return 1


def run_sweep(
    covers: Sequence[CoverSpec],
    cfg: SweepConfig | None = None,
    progress: Callable[[CoverSpec, SweepResult], None] | None = None,
) -> SweepResult:
    """Sweep every cover; results are merged in cover order regardless of parallelism."""
    cfg = cfg or SweepConfig()
    unknown = set(cfg.checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    total = SweepResult()
    jobs = [(c, cfg) for c in covers]
    workers = min(_workers(), len(jobs)) if jobs else 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_cover, jobs))
    else:
        parts = map(_sweep_cover, jobs)
    for (c, _), part in zip(jobs, parts):
        total.merge(part, cfg.max_failures)
        if progress:
            progress(c, part)
    return total
