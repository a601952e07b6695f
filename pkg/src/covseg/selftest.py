"""Built-in verification suite behind ``covseg selftest``."""

from __future__ import annotations

from .covers import CoverSpec
from .derivatives import lambda_of
from .dsl import dump, parse
from .langlands import bv_consistency
from .partitions import Partition, bv_dual, iter_partitions, partition_sum, transpose
from .segments import CuspidalDatum, Multisegment, Segment
from .sweep import SweepConfig, parse_covers, run_sweep

SWEEP_COVERS = "KP:n<=6,a in -2..2;S:n<=6"


def run_selftest(max_size: int = 8) -> list[dict]:
    results = []

    def record(name: str, passed: bool, detail: str) -> None:
        results.append({"criterion": name, "passed": bool(passed), "detail": detail})

    total = partition_sum([Partition((5, 4, 2, 2)), Partition((6, 3)), Partition((5, 2, 2))])
    record("partition sum example", total == Partition((16, 9, 4, 2)), f"got {total}")

    bad = sum(bv_dual(p, 1) != transpose(p) for n in range(21) for p in iter_partitions(n))
    record("bv_dual(p, 1) = transpose(p), |p| <= 20", bad == 0, f"{bad} mismatches")

    rho = CuspidalDatum("rho1", 1, 1)
    m = Multisegment([Segment(rho, 0, 2)])
    check = bv_consistency(m, CoverSpec.kp(2, 0))
    record("KP n=2 worked example", check.lhs == Partition((2, 1)) and check.equal,
           f"lambda={check.lhs} bv={check.rhs} orbit={check.orbit}")

    text = "cover KP n=2 a=0\ncuspidal rho1 r0=1 l=1\nm M1 = [0,2]_rho1\n"
    session = parse(text)
    record("DSL round trip", parse(dump(session)) == session and dump(session) == text, "parse(dump(s)) == s")

    covers = parse_covers(SWEEP_COVERS)
    res = run_sweep(covers, SweepConfig(max_size=max_size))
    for name in SweepConfig().checks:
        record(f"sweep check {name} (size <= {max_size})", res.failed[name] == 0,
               f"{res.checked[name]} checked, {res.failed[name]} failed")
    return results
