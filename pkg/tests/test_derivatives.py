from itertools import zip_longest
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from covseg.covers import CoverSpec, mtp_multiplicities
from covseg.derivatives import (
    FormalSum,
    c_m,
    derivative_L,
    derivative_Z,
    highest_derivative,
    is_generic,
    lambda_chain,
    lambda_of,
    multisegment_derivative,
    possible_derivative_degrees,
    semi_whittaker_nonzero,
    top_derivative_degree_of_product,
    wh_dim_L,
    wh_dim_multisegment,
    wh_dim_product,
    wh_dim_Z,
)
from covseg.errors import HypothesisError
from covseg.partitions import Partition, dominance_leq
from covseg.segments import CuspidalDatum, Multisegment, Segment, n_rho
from covseg.sweep import canonical_cuspidals, iter_multisegments

RHO = CuspidalDatum("rho", 1, 1)
KP2 = CoverSpec.kp(2, 0)


def S(a, b, rho=RHO):
    return Segment(rho, a, b)


def M(*segs):
    return Multisegment(segs)


def lambda_by_segment_sum(m, cover):
    """Sum over segments of ((r0 n_rho)^c, r0 d) where length = c n_rho + d, added row by row."""
    rows = []
    for d in m:
        nr = n_rho(d.rho, cover)
        c, rem = divmod(d.length, nr)
        own = [d.rho.r0 * nr] * c + ([d.rho.r0 * rem] if rem else [])
        rows = [x + y for x, y in zip_longest(rows, own, fillvalue=0)]
    return Partition(tuple(rows))


def compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


# -- Whittaker dimensions -------------------------------------------------------

def test_wh_dim_Z_examples():
    assert wh_dim_Z(S(0, 1, CuspidalDatum("p", 1, 2)), CoverSpec.savin(4)) == 1
    assert wh_dim_Z(S(0, 0), CoverSpec.kp(3, 0)) == 1
    assert wh_dim_Z(S(0, 2), KP2) == 0
    assert wh_dim_Z(S(0, 4), CoverSpec.savin(3)) == 0


def test_wh_dim_L_examples():
    assert wh_dim_L(S(0, 1, CuspidalDatum("p", 1, 2)), CoverSpec.savin(4)) == 3
    for length in range(1, 6):
        assert wh_dim_L(S(0, length - 1), CoverSpec.savin(1)) == 1
    assert wh_dim_L(S(0, 1), KP2) == 3


def test_wh_dim_requires_tame():
    with pytest.raises(HypothesisError):
        wh_dim_Z(S(0, 0), CoverSpec.kp(2, 0, tame=False))


def test_wh_dim_Z_vanishes_iff_not_generic():
    for cover in (KP2, CoverSpec.kp(6, -1), CoverSpec.savin(6)):
        for rho in canonical_cuspidals(cover):
            for length in range(1, 9):
                d = Segment(rho, 0, length - 1)
                assert (wh_dim_Z(d, cover) == 0) == (not is_generic(M(d), cover))


# -- segment derivatives -----------------------------------------------------------

def test_derivative_Z_examples():
    c = CoverSpec.savin(3)
    res = derivative_Z(S(0, 2), 1, c)
    assert res.scalar == 3
    assert res.value == FormalSum.single(M(S(0, 1)))
    ident = derivative_Z(S(0, 2), 0, c)
    assert ident.scalar == 1 and ident.value == FormalSum.single(M(S(0, 2)))
    r2 = CuspidalDatum("r2", 2, 1)
    assert derivative_Z(Segment(r2, 0, 1), 3, c).is_zero


def test_derivative_L_moves_left_endpoint():
    c = CoverSpec.savin(3)
    res = derivative_L(S(0, 2), 2, c)
    assert res.scalar == comb(3 + 2 - 1, 2)
    assert res.value == FormalSum.single(M(S(2, 2)), "L")


def test_derivative_full_degree_gives_empty_term():
    res = derivative_Z(S(0, 0), 1, CoverSpec.kp(3, 0))
    # d_0 / d_1 * C(3, 1) = 1 / 3 * 3
    assert res.scalar == 1
    assert res.value == FormalSum.single(M())


def test_derivative_json_shape():
    res = derivative_Z(S(0, 2), 1, CoverSpec.savin(3))
    assert res.to_json() == {"degree": 1, "scalar": 3, "terms": [{"mult": 1, "m": "[0,1]_rho"}], "tag": "Z"}


def test_kp_derivative_scalar_factors_through_mtp_constant():
    """Z(d)^(k) scalar = (m1 m2 / m) * dim Wh(Z(top piece)) for 0 < k < size."""
    for n in range(1, 7):
        for a in range(-2, 3):
            c = CoverSpec.kp(n, a)
            for rho in canonical_cuspidals(c):
                for length in range(1, 10 // rho.r0 + 1):
                    d = Segment(rho, 0, length - 1)
                    for s in range(1, length):
                        k = rho.r0 * s
                        top = Segment(rho, length - s, length - 1)
                        expected = mtp_multiplicities(c, d.size, k).ratio * wh_dim_Z(top, c)
                        assert derivative_Z(d, k, c).scalar == expected


def test_savin_derivative_scalar_is_whittaker_dimension_of_top_piece():
    for n in range(1, 7):
        c = CoverSpec.savin(n)
        for rho in canonical_cuspidals(c):
            for length in range(1, 8):
                d = Segment(rho, 0, length - 1)
                for s in range(1, length + 1):
                    top = Segment(rho, length - s, length - 1)
                    assert derivative_Z(d, rho.r0 * s, c).scalar == wh_dim_Z(top, c)
                    assert derivative_L(d, rho.r0 * s, c).scalar == wh_dim_L(Segment(rho, 0, s - 1), c)


# -- highest derivatives ---------------------------------------------------------------

def test_highest_derivative_examples():
    hd = highest_derivative(M(S(0, 2)), KP2)
    assert (hd.degree, hd.socle, hd.socle_multiplicity) == (2, M(S(0, 0)), 1)
    r3 = CuspidalDatum("r3", 3, 1)
    hd = highest_derivative(M(Segment(r3, 0, 2)), CoverSpec.kp(1))
    assert hd.degree == 3 and hd.socle == M(Segment(r3, 0, 1))
    hd = highest_derivative(M(S(0, 1)), CoverSpec.savin(3))
    assert hd.degree == 2 and hd.socle == M()


def test_c_m_examples():
    assert c_m(M(S(0, 2), S(0, 3)), KP2) == 1
    assert c_m(M(S(0, 1)), CoverSpec.savin(5)) == comb(5, 2)
    assert c_m(M(S(0, 2)), KP2) == 1
    assert c_m(M(S(0, 0), S(0, 0, CuspidalDatum("s", 1, 1))), CoverSpec.savin(3)) == 9


def test_lambda_examples():
    assert lambda_of(M(S(0, 2)), KP2) == Partition((2, 1))
    assert lambda_of(M(S(0, 1), S(0, 0)), KP2) == Partition((3,))
    r2 = CuspidalDatum("r2", 2, 1)
    # n = 1: transpose of (4, 2, 2) is (3, 3, 1, 1)
    assert lambda_of(M(S(0, 3), Segment(r2, 0, 1)), CoverSpec.kp(1)) == Partition((3, 3, 1, 1))


def test_lambda_matches_segment_sum_oracle():
    for cover in (KP2, CoverSpec.kp(3, 1), CoverSpec.kp(4, -2), CoverSpec.savin(4), CoverSpec.savin(6)):
        for m in iter_multisegments(canonical_cuspidals(cover), 8):
            assert lambda_of(m, cover) == lambda_by_segment_sum(m, cover)


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(1, 8),
    a=st.integers(-3, 3),
    kp=st.booleans(),
    segs=st.lists(st.tuples(st.integers(0, 8), st.integers(1, 4), st.integers(-3, 3), st.integers(1, 6)),
                  min_size=1, max_size=5),
)
def test_lambda_is_partition_property(n, a, kp, segs):
    cover = CoverSpec.kp(n, a) if kp else CoverSpec.savin(n)
    lines = canonical_cuspidals(cover, 4)
    m = Multisegment(Segment(lines[i % len(lines)], start, start + length - 1) for i, _, start, length in segs)
    chain = lambda_chain(m, cover)
    degrees = [k for k, _ in chain]
    assert degrees == sorted(degrees, reverse=True)
    assert sum(degrees) == m.total_size
    assert lambda_of(m, cover) == lambda_by_segment_sum(m, cover)
    assert is_generic(m, cover) == (len(degrees) == 1)


def test_is_generic_examples():
    c = CoverSpec.savin(2)
    assert is_generic(M(S(0, 0), S(3, 3), S(5, 5)), c)
    assert not is_generic(M(S(0, 2)), c)
    assert is_generic(M(S(0, 1), S(4, 5)), c)
    assert wh_dim_multisegment(M(S(0, 1), S(4, 5)), c) == 1


def test_wh_dim_multisegment_reports_unknown():
    assert wh_dim_multisegment(M(S(0, 0), S(3, 3)), CoverSpec.savin(2)) is None
    assert wh_dim_multisegment(M(S(0, 2), S(3, 3)), CoverSpec.savin(2)) == 0


# -- semi-Whittaker ----------------------------------------------------------------

def test_semi_whittaker_examples():
    r2 = CuspidalDatum("r2", 2, 1)
    c = CoverSpec.savin(2)  # n_rho = 2, bound 4
    d = Segment(r2, 0, 2)  # size 6
    assert semi_whittaker_nonzero(d, (2, 2, 2), c)
    assert not semi_whittaker_nonzero(d, (6,), c)
    assert not semi_whittaker_nonzero(d, (3, 3), c)
    with pytest.raises(ValueError):
        semi_whittaker_nonzero(d, (2, 2), c)


def test_semi_whittaker_maximal_shape_is_lambda():
    for cover in (CoverSpec.kp(2), CoverSpec.kp(3, 1), CoverSpec.savin(4), CoverSpec.savin(6)):
        for rho in canonical_cuspidals(cover):
            for length in range(1, 10 // rho.r0 + 1):
                d = Segment(rho, 0, length - 1)
                shapes = {Partition.from_parts(c) for c in compositions(d.size)
                          if semi_whittaker_nonzero(d, c, cover)}
                maximal = [p for p in shapes if not any(q != p and dominance_leq(p, q) for q in shapes)]
                assert maximal == [lambda_of(M(d), cover)]


# -- products ----------------------------------------------------------------------

def test_wh_dim_product_examples():
    assert wh_dim_product([(2, 1), (3, 2)], CoverSpec.savin(4)) == 6
    assert wh_dim_product([(1, 1), (1, 1)], KP2) == 4
    assert wh_dim_product([(5, 3)], CoverSpec.kp(4, 1)) == 5


def test_top_degree_of_product():
    assert top_derivative_degree_of_product(M(S(0, 4)), CoverSpec.savin(3)) == 3
    assert top_derivative_degree_of_product(M(), KP2) == 0
    assert top_derivative_degree_of_product(M(S(0, 1), S(0, 0)), KP2) == 3


def test_multisegment_derivative():
    m = M(S(0, 1), S(0, 0))
    assert possible_derivative_degrees(m, KP2) == [0, 1, 2, 3]
    top = multisegment_derivative(m, 3, KP2)
    assert top.scalar == c_m(m, KP2) and top.value == FormalSum.single(M())
    assert not multisegment_derivative(m, 1, KP2).is_known
    r2 = CuspidalDatum("r2", 2, 1)
    m2 = M(Segment(r2, 0, 0), Segment(r2, 0, 0))
    assert possible_derivative_degrees(m2, KP2) == [0, 2, 4]
    assert multisegment_derivative(m2, 3, KP2).is_zero
