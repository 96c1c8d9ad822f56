"""Coefficient statistics: exact moments, root-sum enclosures, normality."""

from fractions import Fraction

import pytest

from minuscule import (
    coeff_stats,
    exact_mean,
    exact_variance,
    kolmogorov_distance,
    roots_stats,
    second_derivative_identity,
)
from minuscule.stats import normal_cdf


def test_moments_small_n():
    s5 = coeff_stats(5)
    assert s5.mean == Fraction(5, 2)
    assert s5.variance == Fraction(9, 16)
    assert s5.total == 512
    s2 = coeff_stats(2)
    assert s2.mean == 1
    assert s2.variance == 0


def test_variance_closed_form_at_100():
    assert coeff_stats(100).variance == Fraction(9898, 792)
    assert Fraction(9898, 792) == Fraction(4949, 396)


def test_probs_sum_and_symmetry():
    for n in (3, 7, 12, 41):
        s = coeff_stats(n)
        assert sum(s.probs) == 1
        assert all(s.probs[k] == s.probs[n - k] for k in range(n + 1))


def test_moments_reject_small_n():
    with pytest.raises(ValueError):
        coeff_stats(1)


def test_variance_growth_bound():
    for n in range(10, 501):
        assert exact_variance(n) > Fraction(n, 9)


def test_roots_stats_hand_value():
    # roots {0, -1}: mean 1 + 1/2, variance 0 + 1/4
    mu, var = roots_stats(3, Fraction(1, 1 << 20))
    assert Fraction(3, 2) in mu
    assert Fraction(1, 4) in var
    assert mu.width < Fraction(1, 1 << 10)


def test_roots_stats_single_root():
    mu, var = roots_stats(2, Fraction(1, 4))
    assert mu.lo == mu.hi == 1
    assert var.lo == var.hi == 0


@pytest.mark.parametrize("n", range(3, 31, 3))
def test_roots_stats_contains_exact(n):
    mu, var = roots_stats(n, Fraction(1, 1 << 40))
    assert exact_mean(n) in mu
    assert exact_variance(n) in var


def test_roots_stats_validation():
    with pytest.raises(ValueError):
        roots_stats(1, Fraction(1, 2))
    with pytest.raises(ValueError):
        roots_stats(5, 0)


def test_normal_cdf_reference_points():
    assert abs(normal_cdf(0.0) - 0.5) < 1e-15
    assert abs(normal_cdf(1.0) - 0.8413447460685429) < 1e-12
    assert abs(normal_cdf(-8.0) - 6.22096e-16) < 1e-18


def test_kolmogorov_hand_value():
    # two equal jumps of 1/2 at k=1,2 with mu=3/2, sigma=1/2
    assert abs(kolmogorov_distance(3) - (normal_cdf(1.0) - 0.5)) < 1e-12


def test_kolmogorov_decreases():
    assert kolmogorov_distance(64) < kolmogorov_distance(16)


def test_kolmogorov_needs_variance():
    with pytest.raises(ValueError):
        kolmogorov_distance(2)


def test_second_derivative_fixtures():
    assert second_derivative_identity(2).verdict
    c3 = second_derivative_identity(3)
    assert c3.verdict and c3.witness["value"] == 112
    for n in range(2, 41):
        assert second_derivative_identity(n).verdict
    with pytest.raises(ValueError):
        second_derivative_identity(1)
