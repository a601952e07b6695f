from fractions import Fraction
from math import gcd

import pytest

from covseg.covers import CoverSpec, Family, d_r, mtp_multiplicities, n_alpha
from covseg.errors import HypothesisError, InvariantError


@pytest.mark.parametrize("cover, expected", [
    (CoverSpec.kp(4), 4),
    (CoverSpec.savin(4), 2),
    (CoverSpec.savin(3), 3),
    (CoverSpec.savin(6), 3),
])
def test_n_alpha(cover, expected):
    assert n_alpha(cover) == expected


@pytest.mark.parametrize("n, a, r, expected", [
    (3, 0, 1, 3),
    (3, 0, 2, 1),
    (2, 0, 3, 2),
    (4, 1, 0, 1),
])
def test_d_r(n, a, r, expected):
    assert d_r(CoverSpec.kp(n, a), r) == expected


def test_d_r_rejects_savin():
    with pytest.raises(HypothesisError, match="undefined for S-covers"):
        d_r(CoverSpec.savin(4), 1)


def test_d_r_divides_n_and_is_periodic():
    for n in range(1, 9):
        for a in range(-3, 4):
            c = CoverSpec.kp(n, a)
            for r in range(31):
                assert n % d_r(c, r) == 0
                for k in range(n, r + 1, n):
                    assert d_r(c, r) == d_r(c, r - k)


@pytest.mark.parametrize("n, a, r, k, m, ratio", [
    (2, 0, 3, 1, 16, 1),
    (1, 0, 3, 1, 1, 1),
    (3, 0, 2, 1, 9, 9),
])
def test_mtp_examples(n, a, r, k, m, ratio):
    res = mtp_multiplicities(CoverSpec.kp(n, a), r, k)
    assert res.m1 == res.m2 == n * n
    assert res.m == m
    assert res.ratio == ratio


def test_mtp_ratio_matches_gcd_formula_on_sweep():
    for n in range(1, 9):
        for a in range(-3, 4):
            c = CoverSpec.kp(n, a)
            for r in range(2, 31):
                for k in range(1, r):
                    res = mtp_multiplicities(c, r, k)
                    dr, dk, drk = (gcd(n, 2 * x * a - x + 1) for x in (r, k, r - k))
                    assert res.m * dk * drk == n**4 * dr
                    assert res.ratio == Fraction(dk * drk, dr) > 0


def test_mtp_ratio_need_not_be_integral():
    # d_1 = gcd(3, 2) = 1, d_2 = gcd(3, 3) = 3
    res = mtp_multiplicities(CoverSpec.kp(3, 1), 2, 1)
    assert res.ratio == Fraction(1, 3)
    assert res.m == 3**4 * 3


def test_mtp_guards():
    with pytest.raises(HypothesisError):
        mtp_multiplicities(CoverSpec.savin(2), 3, 1)
    with pytest.raises(HypothesisError):
        mtp_multiplicities(CoverSpec.kp(2, 0, tame=False), 3, 1)
    with pytest.raises(ValueError):
        mtp_multiplicities(CoverSpec.kp(2), 3, 3)


def test_cover_invariants_and_json():
    with pytest.raises(InvariantError):
        CoverSpec(Family.S, 4, -1)
    with pytest.raises(InvariantError):
        CoverSpec.kp(0)
    kp = CoverSpec.kp(4, 0)
    assert kp.to_json() == {"family": "KP", "n": 4, "a": 0}
    assert CoverSpec.savin(4).to_json() == {"family": "S", "n": 4}
    for c in (kp, CoverSpec.savin(4), CoverSpec.kp(3, -2)):
        assert CoverSpec.from_json(c.to_json()) == c
