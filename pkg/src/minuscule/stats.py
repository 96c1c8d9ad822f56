"""Coefficient-distribution statistics for the minuscule family.

The exact mean and variance of the normalized coefficient distribution are
computed and asserted against their closed forms; the same quantities are
re-derived from certified root enclosures (sums of 1/(1+r) and r/(1+r)^2
over the nonpositive root multiset) as rational interval arithmetic; and a
floating-point Kolmogorov distance against the standard normal CDF serves
as the asymptotic-normality diagnostic.  Only the diagnostic touches
floats, and it feeds no exact pass/fail verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .certify import (
    Certificate,
    certify_real_rooted,
    isolate_roots_with_multiplicity,
)
from .errors import ConsistencyError, NotRealRootedError
from .exact_core import ExactPoly, Rat
from .families import minuscule_sum


@dataclass(frozen=True)
class CoeffStats:
    """Exact normalized coefficient distribution of one family member."""

    n: int
    total: Fraction
    probs: tuple[Fraction, ...]
    mean: Fraction
    variance: Fraction


class RationalInterval(NamedTuple):
    lo: Fraction
    hi: Fraction

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def exact_mean(n: int) -> Fraction:
    return Fraction(n, 2)


def exact_variance(n: int) -> Fraction:
    return Fraction(n * n - n - 2, 8 * (n - 1))


def coeff_stats(n: int) -> CoeffStats:
    """Exact mean and variance of the coefficient distribution.

    Both are asserted against their closed forms n/2 and
    (n^2-n-2)/(8(n-1)); a mismatch is a hard error, since it would falsify
    the distribution identity the whole section rests on.
    """
    if n < 2:
        raise ValueError("coefficient statistics need n >= 2")
    poly = minuscule_sum(n)
    total = poly(1)
    probs = tuple(poly[k] / total for k in range(n + 1))
    mean = sum((k * p for k, p in enumerate(probs)), Fraction(0))
    second = sum((k * k * p for k, p in enumerate(probs)), Fraction(0))
    variance = second - mean * mean
    if mean != exact_mean(n):
        raise ConsistencyError(f"mean at n={n} is {mean}, expected {exact_mean(n)}")
    if variance != exact_variance(n):
        raise ConsistencyError(
            f"variance at n={n} is {variance}, expected {exact_variance(n)}"
        )
    return CoeffStats(n=n, total=total, probs=probs, mean=mean, variance=variance)


def roots_stats(n: int, width: Rat) -> tuple[RationalInterval, RationalInterval]:
    """Interval enclosures of the root-sum formulas for mean and variance.

    Isolates the n-1 nonpositive roots (the root at zero contributes 1 to
    the mean and 0 to the variance), refines every enclosure to the
    requested dyadic width, and returns rational intervals for
    sum 1/(1+r) and sum r/(1+r)^2 over the root multiset r >= 0.  The
    enclosures always contain the exact values from :func:`coeff_stats`.
    """
    if n < 2:
        raise ValueError("root statistics need n >= 2")
    w = Fraction(width)
    if w <= 0:
        raise ValueError("width must be positive")
    poly = minuscule_sum(n)
    if not certify_real_rooted(poly, require_nonpositive=True).verdict:
        raise NotRealRootedError(f"family member n={n} failed root certification")
    v = poly.valuation
    mu_lo = mu_hi = Fraction(v)  # roots at zero: r = 0 exactly
    var_lo = var_hi = Fraction(0)
    interior = poly.div_xpow(v)
    total_mult = v
    for interval, mult in isolate_roots_with_multiplicity(interior, max_width=w):
        total_mult += mult
        r_lo = -interval.hi
        r_hi = -interval.lo
        mu_lo += mult * _recip_one_plus(r_hi)
        mu_hi += mult * _recip_one_plus(r_lo)
        vlo, vhi = _var_term_range(r_lo, r_hi)
        var_lo += mult * vlo
        var_hi += mult * vhi
    if total_mult != poly.degree:
        raise ConsistencyError("root multiset does not account for the full degree")
    return (
        RationalInterval(mu_lo, mu_hi),
        RationalInterval(var_lo, var_hi),
    )


def _recip_one_plus(r: Fraction) -> Fraction:
    return 1 / (1 + r)


def _var_term_range(r_lo: Fraction, r_hi: Fraction) -> tuple[Fraction, Fraction]:
    """Hull of r/(1+r)^2 on [r_lo, r_hi]; increasing below 1, peak 1/4 at 1."""

    def term(r: Fraction) -> Fraction:
        return r / (1 + r) ** 2

    lo_val, hi_val = term(r_lo), term(r_hi)
    lo = min(lo_val, hi_val)
    hi = max(lo_val, hi_val)
    if r_lo <= 1 <= r_hi:
        hi = max(hi, Fraction(1, 4))
    return lo, hi


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function (the libm
    implementation is far inside the documented 1e-12 accuracy)."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def kolmogorov_distance(n: int) -> float:
    """Sup distance between the normalized coefficient CDF and the standard
    normal CDF, evaluated on both sides of every jump.  Deterministic; this
    is the package's only float-valued statistic."""
    if n < 3:
        raise ValueError("the distance needs n >= 3 (positive variance)")
    poly = minuscule_sum(n)
    stats = coeff_stats(n)
    mu = float(stats.mean)
    sigma = math.sqrt(float(stats.variance))
    total = stats.total
    running = Fraction(0)
    worst = 0.0
    for k in range(1, n):
        phi = normal_cdf((k - mu) / sigma)
        before = float(running / total)
        running += poly[k]
        after = float(running / total)
        worst = max(worst, abs(before - phi), abs(after - phi))
    return worst


def second_derivative_identity(n: int) -> Certificate:
    """Certify the closed form for the second derivative of the even-variable
    lift at 1: (2n^3 - 3n^2 + n - 2) * 2^(2n-4)."""
    if n < 2:
        raise ValueError("the identity holds for n >= 2")
    lifted = minuscule_sum(n).compose_x2()
    value = lifted.derivative().derivative()(1)
    expected = Fraction((2 * n**3 - 3 * n**2 + n - 2) * 2 ** (2 * n - 4))
    return Certificate(
        property="second_derivative_identity",
        subject=f"n={n}",
        verdict=value == expected,
        witness={"value": value, "expected": expected},
        params={"n": n},
    )


def exact_poly_stats(p: ExactPoly) -> tuple[Fraction, Fraction, Fraction]:
    """(total, mean, variance) of an arbitrary nonnegative coefficient
    polynomial; helper for diagnostics and tests."""
    total = p(1)
    if total == 0:
        raise ValueError("polynomial has zero coefficient mass")
    mean = sum((Fraction(k) * c for k, c in enumerate(p.coeffs)), Fraction(0)) / total
    second = (
        sum((Fraction(k * k) * c for k, c in enumerate(p.coeffs)), Fraction(0)) / total
    )
    return total, mean, second - mean * mean
