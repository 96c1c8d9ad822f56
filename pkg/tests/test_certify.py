"""Certification engine: Sturm counting, isolation, interlacing, stability."""

import math
import random
from fractions import Fraction

import pytest

from minuscule import (
    ExactPoly,
    NotRealRootedError,
    certify_coeff_properties,
    certify_gamma_positive,
    certify_interlacing,
    certify_real_rooted,
    certify_weak_hurwitz,
    check_multiplier_nseq,
    count_roots_in,
    f_poly,
    g_poly,
    isolate_roots,
    isolate_roots_with_multiplicity,
    minuscule_sum,
    numeric_roots,
    sturm_chain,
    D_direct,
)


def poly_from_roots(roots):
    p = ExactPoly([1])
    for r in roots:
        p = p * ExactPoly([-r, 1])
    return p


# -- Sturm chains -------------------------------------------------------------


def test_chain_counts():
    chain = sturm_chain(ExactPoly([2, -3, 1]))  # roots 1, 2
    assert count_roots_in(chain, None, None) == 2
    assert count_roots_in(chain, 0, 3) == 2
    assert count_roots_in(chain, 1, 2) == 1  # (1, 2] excludes the root at 1
    assert count_roots_in(chain, 0, 1) == 1
    assert count_roots_in(chain, Fraction(3, 2), None) == 1
    assert count_roots_in(sturm_chain(ExactPoly([1, 0, 1])), None, None) == 0
    assert count_roots_in(sturm_chain(f_poly(2)), None, 0) == 2
    # interior part of the n=4 member: two real roots, both negative
    interior = minuscule_sum(4).div_xpow(1)
    chain4 = sturm_chain(interior)
    assert count_roots_in(chain4, None, None) == 2
    assert count_roots_in(chain4, None, 0) == 2
    assert count_roots_in(chain4, 0, None) == 0


def test_chain_shape():
    chain = sturm_chain(ExactPoly([2, -3, 1]))
    assert chain.polys[-1].degree == 0
    assert all(not p.is_zero for p in chain.polys)


def test_chain_rejects_zero():
    with pytest.raises(ValueError):
        sturm_chain(ExactPoly())
    with pytest.raises(ValueError):
        count_roots_in(sturm_chain(ExactPoly([1, 1])), 2, 1)


def test_chain_handles_multiple_roots():
    chain = sturm_chain(D_direct(2))  # 4x^2, double root at 0
    assert count_roots_in(chain, None, None) == 1
    assert count_roots_in(chain, Fraction(-1), Fraction(0)) == 1


def test_sturm_soundness_random_products():
    rng = random.Random(20240817)
    for _ in range(500):
        deg_budget = rng.randint(1, 25)
        roots = []
        complex_pairs = 0
        while deg_budget > 0:
            if deg_budget >= 2 and rng.random() < 0.3:
                complex_pairs += 1
                deg_budget -= 2
            else:
                roots.append(rng.randint(-8, 8))
                deg_budget -= 1
        p = poly_from_roots(roots)
        for _ in range(complex_pairs):
            b = rng.randint(-5, 5)
            c = rng.randint(1, 9)
            while b * b - 4 * c >= 0:
                c += 3
            p = p * ExactPoly([c, b, 1])
        chain = sturm_chain(p)
        assert count_roots_in(chain, None, None) == len(set(roots))


# -- real-rootedness ------------------------------------------------------------


def test_real_rooted_family():
    cert = certify_real_rooted(minuscule_sum(6), require_nonpositive=True)
    assert cert.verdict
    assert cert.witness["positive_roots"] == 0
    assert cert.witness["zero_root"]


def test_real_rooted_failure_witness():
    cert = certify_real_rooted(ExactPoly([1, 0, 1]))
    assert not cert.verdict
    assert cert.witness["distinct_real_roots"] == 0
    assert cert.witness["square_free_degree"] == 2


def test_real_rooted_zero_poly():
    cert = certify_real_rooted(ExactPoly())
    assert cert.verdict and cert.witness["vacuous"]


@pytest.mark.parametrize("n", range(2, 101, 7))
def test_real_rooted_f_family(n):
    assert certify_real_rooted(f_poly(n), require_nonpositive=True).verdict


def test_positive_scaling_never_changes_verdicts():
    for p in [minuscule_sum(5), ExactPoly([1, 0, 1]), f_poly(3), ExactPoly([2, -3, 1])]:
        scaled = p * Fraction(3, 7)
        assert (
            certify_real_rooted(p).verdict == certify_real_rooted(scaled).verdict
        )
        assert (
            certify_weak_hurwitz(p).verdict == certify_weak_hurwitz(scaled).verdict
        )


# -- isolation -------------------------------------------------------------------


def test_isolation_basic():
    ivs = isolate_roots(ExactPoly([2, -3, 1]))
    assert len(ivs) == 2
    assert Fraction(1) in ivs[0] and Fraction(2) in ivs[1]


def test_isolation_single_negative_root():
    ivs = isolate_roots(minuscule_sum(3).div_xpow(1))  # 8(1+x)
    assert len(ivs) == 1
    assert Fraction(-1) in ivs[0]


def test_isolation_family_reciprocal_pairs():
    ivs = isolate_roots(minuscule_sum(5), max_width=Fraction(1, 1 << 30))
    assert len(ivs) == 4
    for i in range(len(ivs)):
        for j in range(i + 1, len(ivs)):
            assert not ivs[i].overlaps(ivs[j])
    assert ivs[-1].is_point and ivs[-1].lo == 0
    r1, r2, r3 = ivs[0], ivs[1], ivs[2]
    # palindromic: outer pair multiplies to 1, middle root is -1
    products = sorted([r1.lo * r3.lo, r1.hi * r3.hi])
    assert products[0] <= 1 <= products[1]
    assert r2.lo <= -1 <= r2.hi


def test_isolation_rejects_non_real_rooted():
    with pytest.raises(NotRealRootedError):
        isolate_roots(ExactPoly([1, 0, 1]))


def test_isolation_with_multiplicity():
    p = ExactPoly([0, 1]) ** 2 * ExactPoly([1, 1]) ** 3
    pairs = isolate_roots_with_multiplicity(p)
    assert [(m, Fraction(-1) in iv or Fraction(0) in iv) for iv, m in pairs] == [
        (3, True),
        (2, True),
    ]


def test_isolation_width_refinement():
    width = Fraction(1, 1 << 40)
    for iv in isolate_roots(minuscule_sum(7), max_width=width):
        assert iv.width <= width


# -- interlacing ------------------------------------------------------------------


def test_interlacing_with_shared_zero():
    cert = certify_interlacing(minuscule_sum(2), minuscule_sum(3))
    assert cert.verdict
    assert cert.witness["shared_values"] == 1


def test_interlacing_trivial_alternation():
    g = poly_from_roots([1, 3])
    f = poly_from_roots([2, 4])
    assert certify_interlacing(g, f).verdict
    assert not certify_interlacing(f, g).verdict  # antisymmetric in the strict case


def test_interlacing_degree_gap():
    cert = certify_interlacing(ExactPoly([0, 1]), poly_from_roots([1, 2, 3]))
    assert not cert.verdict
    assert cert.witness["reason"] == "degree"


def test_interlacing_requires_real_rooted():
    with pytest.raises(NotRealRootedError):
        certify_interlacing(ExactPoly([1, 0, 1]), poly_from_roots([1, 2]))


def test_interlacing_zero_convention():
    cert = certify_interlacing(ExactPoly(), minuscule_sum(2))
    assert cert.verdict and cert.witness["vacuous"]


def test_interlacing_with_multiplicities():
    double = ExactPoly([1, 1]) ** 2
    assert certify_interlacing(ExactPoly([1, 1]), double).verdict
    f = poly_from_roots([-1, -3])
    g = poly_from_roots([-2, -2])
    assert not certify_interlacing(g, f).verdict


def test_interlacing_self():
    p = poly_from_roots([-1, -4])
    assert certify_interlacing(p, p).verdict


@pytest.mark.parametrize("n", range(2, 51, 4))
def test_interlacing_f_family(n):
    assert certify_interlacing(f_poly(n), f_poly(n + 1)).verdict


@pytest.mark.parametrize("n", range(2, 21))
def test_interlacing_family(n):
    assert certify_interlacing(minuscule_sum(n), minuscule_sum(n + 1)).verdict


# -- coefficient properties ----------------------------------------------------------


def test_coeff_properties_family():
    cert = certify_coeff_properties(minuscule_sum(6))
    assert cert.verdict
    assert all(cert.witness[k] for k in ("palindromic", "nonneg", "unimodal", "log_concave"))


def test_coeff_properties_log_concavity_failure():
    cert = certify_coeff_properties(ExactPoly([1, 1, 3, 1]))
    assert not cert.verdict
    assert not cert.witness["log_concave"]
    assert cert.witness["failures"]["log_concave"]["index"] == 1


def test_coeff_properties_constant():
    cert = certify_coeff_properties(ExactPoly([5]))
    assert cert.verdict


def test_coeff_properties_negative():
    cert = certify_coeff_properties(ExactPoly([1, -2, 1]))
    assert not cert.witness["nonneg"]


# -- gamma positivity ------------------------------------------------------------------


def test_gamma_positive_family():
    cert = certify_gamma_positive(minuscule_sum(5), 5)
    assert cert.verdict
    assert cert.witness["gamma"] == [0, 40, 96]


def test_gamma_positive_failure():
    p = ExactPoly([0, 1]) * ExactPoly([1, 1]) ** 2 - 5 * ExactPoly([0, 0, 1])
    cert = certify_gamma_positive(p, 4)
    assert not cert.verdict
    assert cert.witness["gamma"] == [0, 1, -5]
    assert cert.witness["first_bad"]["reason"] == "negative"


@pytest.mark.parametrize("n", range(1, 201, 13))
def test_gamma_positive_scan(n):
    assert certify_gamma_positive(minuscule_sum(n), n).verdict


# -- weak Hurwitz stability ---------------------------------------------------------------


def test_hurwitz_fixtures():
    assert certify_weak_hurwitz(D_direct(2)).verdict
    assert certify_weak_hurwitz(ExactPoly([1, 1]) ** 8).verdict
    assert not certify_weak_hurwitz(ExactPoly([1, -1, 1])).verdict
    assert certify_weak_hurwitz(ExactPoly()).verdict


def test_hurwitz_imaginary_axis():
    assert certify_weak_hurwitz(ExactPoly([1, 0, 1])).verdict  # roots +-i
    assert certify_weak_hurwitz(ExactPoly([1, 0, 1]) ** 2).verdict
    assert certify_weak_hurwitz(ExactPoly([1, 0, 1]) * ExactPoly([2, 1])).verdict
    assert not certify_weak_hurwitz(ExactPoly([1, 0, 1]) * ExactPoly([-2, 1])).verdict


def test_hurwitz_all_positive_but_unstable():
    # positive coefficients alone do not give stability
    assert not certify_weak_hurwitz(ExactPoly([3, 2, 1, 1])).verdict


def test_hurwitz_even_polynomial():
    assert certify_weak_hurwitz(ExactPoly([1, 0, 2, 0, 1])).verdict  # (x^2+1)^2
    assert not certify_weak_hurwitz(ExactPoly([-1, 0, 1])).verdict  # roots +-1


def test_hurwitz_rejects_right_half_plane_quadratic():
    for b in (1, 2, 5):
        assert not certify_weak_hurwitz(ExactPoly([1, -b, 1])).verdict


def test_hurwitz_random_corpus_matches_numeric():
    rng = random.Random(96111)
    for _ in range(120):
        p = ExactPoly([1])
        n_factors = rng.randint(1, 5)
        make_unstable = rng.random() < 0.5
        for _ in range(n_factors):
            if rng.random() < 0.5:
                p = p * ExactPoly([rng.randint(0, 6), 1])
            else:
                p = p * ExactPoly([rng.randint(0, 6), rng.randint(0, 6), 1])
        if make_unstable:
            if rng.random() < 0.5:
                p = p * ExactPoly([-rng.randint(1, 6), 1])
            else:
                p = p * ExactPoly([rng.randint(1, 6), -rng.randint(1, 6), 1])
        # the certifier itself cross-checks against the numeric oracle and
        # raises on disagreement, so calling it is the whole test
        cert = certify_weak_hurwitz(p)
        if make_unstable:
            assert not cert.verdict
        else:
            assert cert.verdict


@pytest.mark.parametrize("n", range(2, 26))
def test_hurwitz_difference_family(n):
    cert = certify_weak_hurwitz(D_direct(n))
    assert cert.verdict
    assert cert.witness["numeric_max_real_part"] <= 1e-6


# -- multiplier sequences --------------------------------------------------------------


def test_multiplier_weights_quadratic():
    cert = check_multiplier_nseq([k * (3 - k) for k in range(4)], 3)
    assert cert.verdict


def test_multiplier_weights_rejected():
    assert not check_multiplier_nseq([1, 0, 1], 2).verdict


def test_multiplier_weight_validation():
    with pytest.raises(ValueError):
        check_multiplier_nseq([1, 2], 2)
    with pytest.raises(ValueError):
        check_multiplier_nseq([1, -1, 1], 2)


def test_multiplier_factorial_weights():
    for n in range(1, 31):
        weights = [
            Fraction(k * math.factorial(k), math.factorial(2 * k + 1))
            for k in range(n + 1)
        ]
        cert = check_multiplier_nseq(weights, n)
        assert cert.verdict, n
        # the transform is exactly the factorial-weighted family member
        assert g_poly(n) == ExactPoly(
            math.comb(n, k) * w for k, w in enumerate(weights)
        )


def test_multiplier_zero_weights():
    assert check_multiplier_nseq([0, 0, 0], 2).verdict


# -- randomized cross-validation ---------------------------------------------------


def _direct_interlacing(g_roots, f_roots):
    """Reference check straight from the known root multisets."""
    r = sorted(f_roots, reverse=True)
    s = sorted(g_roots, reverse=True)
    if len(r) - len(s) not in (0, 1):
        return False
    for i in range(len(s)):
        if s[i] > r[i]:
            return False
        if i + 1 < len(r) and r[i + 1] > s[i]:
            return False
    return True


def test_interlacing_matches_direct_root_comparison():
    pool = [Fraction(k, 2) for k in range(-8, 9)]
    rng = random.Random(424242)
    trials = 0
    while trials < 300:
        m = rng.randint(1, 6)
        gap = rng.choice([0, 1])
        if m - gap == 0:
            continue
        f_roots = [rng.choice(pool) for _ in range(m)]
        if rng.random() < 0.4:
            g_roots = sorted(f_roots)[: m - gap]  # force shared roots
        else:
            g_roots = [rng.choice(pool) for _ in range(m - gap)]
        trials += 1
        expected = _direct_interlacing(g_roots, f_roots)
        got = certify_interlacing(
            poly_from_roots(g_roots), poly_from_roots(f_roots)
        ).verdict
        assert got == expected, (g_roots, f_roots)


def test_interlacing_with_irrational_shared_roots():
    sqrt2 = ExactPoly([-2, 0, 1])
    sqrt3 = ExactPoly([-3, 0, 1])
    # identical irrational roots: equality detected through the gcd
    cert = certify_interlacing(sqrt2, sqrt2)
    assert cert.verdict and cert.witness["shared_values"] == 2
    # -sqrt3 < -sqrt2 < sqrt2 < sqrt3: the sqrt2 pair alternates inside
    assert certify_interlacing(sqrt2, sqrt3).verdict
    assert not certify_interlacing(sqrt3, sqrt2).verdict
    # shared pair plus one extra root on each side
    shared_g = sqrt2 * ExactPoly([5, 1])       # roots -5, -sqrt2, sqrt2
    shared_f = sqrt2 * ExactPoly([-5, 1])      # roots -sqrt2, sqrt2, 5
    assert certify_interlacing(shared_g, shared_f).verdict
    assert not certify_interlacing(shared_f, shared_g).verdict


def test_hurwitz_torture_with_axis_factors():
    rng = random.Random(777001)
    for _ in range(150):
        p = ExactPoly([1])
        stable = True
        for _ in range(rng.randint(1, 5)):
            pick = rng.random()
            if pick < 0.30:
                p = p * ExactPoly([rng.randint(0, 5), 1])
            elif pick < 0.55:
                p = p * ExactPoly([rng.randint(0, 5), rng.randint(0, 5), 1])
            elif pick < 0.75:
                p = p * ExactPoly([rng.randint(1, 5), 0, 1])  # imaginary pair
            elif pick < 0.85:
                p = p * ExactPoly([0, 1])
            elif pick < 0.93:
                p = p * ExactPoly([-rng.randint(1, 5), 1])
                stable = False
            else:
                p = p * ExactPoly([rng.randint(1, 5), -rng.randint(1, 5), 1])
                stable = False
        if rng.random() < 0.3:
            p = p * p  # multiple roots stress the oracle corroboration
        assert certify_weak_hurwitz(p).verdict == stable, str(p)


def test_difference_family_root_counts_bounded():
    for n in (2, 5, 9, 14):
        poly = D_direct(n)
        cert = certify_real_rooted(poly)
        assert cert.witness["distinct_real_roots"] <= cert.witness["square_free_degree"]
        assert cert.witness["square_free_degree"] <= poly.degree


# -- invariants across certifiers -------------------------------------------------------


def test_numeric_oracle_agrees_on_certified_real_roots():
    for p in [minuscule_sum(10), minuscule_sum(25), f_poly(20), g_poly(15) * math.factorial(15)]:
        assert certify_real_rooted(p).verdict
        result = numeric_roots(p, tol=1e-8)
        assert result.converged
        assert max(abs(z.imag) for z in result.roots) < 1e-6
