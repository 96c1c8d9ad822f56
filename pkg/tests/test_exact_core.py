"""Core polynomial arithmetic: ring laws, splits, reversal, square-free parts."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minuscule import (
    DegreeCapError,
    DyadicInterval,
    ExactnessError,
    ExactPoly,
    even_odd_split,
    even_part_extract,
    format_rational,
    is_palindromic,
    minuscule_sum,
    parse_rational,
    poly_gcd,
    reverse,
    square_free_decomposition,
    square_free_part,
)
from minuscule.exact_core import exact_div, get_degree_cap, set_degree_cap

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)
polys = st.lists(rationals, max_size=41).map(ExactPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def test_basic_arithmetic():
    one_plus_x = ExactPoly([1, 1])
    assert one_plus_x * one_plus_x == ExactPoly([1, 2, 1])
    n3 = minuscule_sum(3)
    assert n3 * n3 == ExactPoly([0, 0, 64, 128, 64])
    assert n3 + ExactPoly() == n3
    assert n3 - n3 == ExactPoly()
    assert 2 * one_plus_x == ExactPoly([2, 2])
    assert one_plus_x * Fraction(1, 2) == ExactPoly([Fraction(1, 2), Fraction(1, 2)])


def test_degree_and_zero_conventions():
    assert ExactPoly().degree == -1
    assert ExactPoly().is_zero
    assert ExactPoly([0, 0]).is_zero
    assert ExactPoly([5]).degree == 0
    assert ExactPoly([0, 1]).degree == 1
    assert ExactPoly([0, 0, 3]).valuation == 2


def test_derivative():
    assert ExactPoly([0, 0, 1]).derivative() == ExactPoly([0, 2])
    assert ExactPoly([7]).derivative() == ExactPoly()
    # second derivative of the n=2 lift at 1
    lift = minuscule_sum(2).compose_x2()
    assert lift.derivative().derivative()(1) == 4


def test_evaluation():
    assert minuscule_sum(4)(1) == 96
    assert minuscule_sum(5)(1) == 512
    p = ExactPoly([3, 5, 7])
    assert p(0) == 3
    assert p(Fraction(1, 2)) == 3 + Fraction(5, 2) + Fraction(7, 4)


def test_pow():
    p = ExactPoly([1, 1])
    assert p**0 == ExactPoly([1])
    assert p**3 == ExactPoly([1, 3, 3, 1])
    with pytest.raises(ValueError):
        p ** (-1)


def test_compose_x2_and_even_part():
    assert ExactPoly([0, 2]).compose_x2() == ExactPoly([0, 0, 2])
    assert even_part_extract(ExactPoly([0, 0, 8, 0, 8])) == minuscule_sum(3)
    with pytest.raises(ValueError):
        even_part_extract(ExactPoly([0, 1]))


def test_even_odd_split_fixtures():
    even, odd = even_odd_split(ExactPoly([1, 2, 1]))
    assert even == ExactPoly([1, 1]) and odd == ExactPoly([2])
    even, odd = even_odd_split(ExactPoly([0, 0, 4]))
    assert even == ExactPoly([0, 4]) and odd == ExactPoly()
    even, odd = even_odd_split(ExactPoly([4, 4]))
    assert even == ExactPoly([4]) and odd == ExactPoly([4])


@settings(max_examples=200)
@given(polys)
def test_even_odd_split_recombines(p):
    even, odd = even_odd_split(p)
    assert even.compose_x2() + odd.compose_x2().mul_xpow(1) == p


def test_reverse_and_palindromic():
    n4 = minuscule_sum(4)
    assert is_palindromic(n4, 4)
    assert not is_palindromic(ExactPoly([1, 2]), 1)
    assert is_palindromic(ExactPoly(), 7)
    assert reverse(ExactPoly([1, 2]), 1) == ExactPoly([2, 1])
    with pytest.raises(ValueError):
        reverse(ExactPoly([1, 2, 3]), 1)


@given(polys, st.integers(min_value=0, max_value=60))
def test_reverse_involution(p, extra):
    n = max(p.degree, 0) + extra
    assert reverse(reverse(p, n), n) == p


@given(nonzero_polys, nonzero_polys)
def test_product_degree_and_evaluation(p, q):
    prod = p * q
    assert prod.degree == p.degree + q.degree
    for i in range(10):
        t = Fraction(i - 5, 7)
        assert prod(t) == p(t) * q(t)


@given(polys, nonzero_polys)
def test_divmod_reconstructs(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.is_zero or rem.degree < q.degree


def test_exact_div_rejects_inexact():
    with pytest.raises(ExactnessError):
        exact_div(ExactPoly([1, 1]), ExactPoly([0, 1]))


def test_square_free_part_fixtures():
    assert square_free_part(ExactPoly([0, 0, 1])) == ExactPoly([0, 1])
    cube = ExactPoly([1, 1]) ** 3
    assert square_free_part(cube) == ExactPoly([1, 1])
    assert square_free_part(minuscule_sum(3)) == ExactPoly([0, 1, 1])
    with pytest.raises(ValueError):
        square_free_part(ExactPoly())


@given(nonzero_polys.filter(lambda p: p.degree >= 1))
def test_square_free_part_divides_and_is_squarefree(p):
    sf = square_free_part(p)
    _, rem = divmod(p, sf)
    assert rem.is_zero
    assert poly_gcd(sf, sf.derivative()).degree == 0


def test_square_free_decomposition():
    p = ExactPoly([0, 1]) ** 2 * ExactPoly([1, 1]) ** 3
    factors = square_free_decomposition(p)
    assert sorted((f.degree, m) for f, m in factors) == [(1, 2), (1, 3)]
    rebuilt = ExactPoly([1])
    for f, m in factors:
        rebuilt = rebuilt * f**m
    quo, rem = divmod(p, rebuilt)
    assert rem.is_zero and quo.degree == 0


def test_poly_gcd():
    a = ExactPoly([1, 1]) ** 2
    b = ExactPoly([1, 1]) * ExactPoly([0, 1])
    assert poly_gcd(a, b) == ExactPoly([1, 1])
    assert poly_gcd(ExactPoly([1, 1]), ExactPoly([1, 0, 1])).degree == 0
    assert poly_gcd(ExactPoly(), a) == ExactPoly([1, 2, 1])


def test_mul_div_xpow():
    p = ExactPoly([1, 2])
    assert p.mul_xpow(2) == ExactPoly([0, 0, 1, 2])
    assert p.mul_xpow(2).div_xpow(2) == p
    with pytest.raises(ExactnessError):
        ExactPoly([1, 1]).div_xpow(1)


def test_degree_cap():
    old = get_degree_cap()
    try:
        set_degree_cap(10)
        with pytest.raises(DegreeCapError):
            ExactPoly([0] * 11 + [1])
        ExactPoly([0] * 10 + [1])  # exactly at the cap is fine
    finally:
        set_degree_cap(old)


def test_dyadic_interval():
    iv = DyadicInterval(Fraction(-1, 4), Fraction(3, 8))
    assert iv.width == Fraction(5, 8)
    assert Fraction(0) in iv
    assert iv.overlaps(DyadicInterval(Fraction(3, 8), Fraction(1)))
    assert DyadicInterval(Fraction(1, 2), Fraction(1, 2)).is_point
    with pytest.raises(ValueError):
        DyadicInterval(Fraction(1, 3), Fraction(1))
    with pytest.raises(ValueError):
        DyadicInterval(Fraction(1), Fraction(0))


def test_rational_round_trip():
    assert format_rational(Fraction(56)) == "56"
    assert format_rational(Fraction(1, 6)) == "1/6"
    assert parse_rational("1/6") == Fraction(1, 6)
    assert parse_rational("-7") == Fraction(-7)


def test_pretty_printing():
    assert str(ExactPoly()) == "0"
    assert str(ExactPoly([0, 8, 8])) == "8x + 8x^2"
    assert str(ExactPoly([1, Fraction(-1, 6)])) == "1 - 1/6x"
    assert repr(ExactPoly([0, 2])) == "ExactPoly([0, 2])"
