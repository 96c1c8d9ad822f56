"""Independent sanity oracles: brute-force power-set enumeration and a
floating-point root finder.

Nothing here ever produces a pass verdict on its own; the enumerations are
exact and the root finder only corroborates (or guides) the exact
certifiers in :mod:`minuscule.certify`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetError
from .exact_core import ExactPoly, Rat

POWERSET_MAX_N = 14
_SYMDIFF_MAX_N = 12


def _popcount_table(n: int) -> list[int]:
    return [bin(i).count("1") for i in range(1 << n)]


def powerset_refined_gf(n: int, a: Rat, b: Rat, c: Rat, d: Rat) -> Fraction:
    """Brute-force sum of a^|X\\Y| b^|Y\\X| c^|X&Y| d^|complement| over all
    subset pairs (X, Y) of an n-set; must equal (a+b+c+d)^n.

    Enumerates all 4^n pairs by bitmask; n above 14 exceeds the budget.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > POWERSET_MAX_N:
        raise BudgetError(f"4^{n} pairs exceed the enumeration budget (n <= {POWERSET_MAX_N})")
    av, bv, cv, dv = (Fraction(v) for v in (a, b, c, d))
    size = 1 << n
    pc = _popcount_table(n)
    if all(v.denominator == 1 for v in (av, bv, cv, dv)):
        fast = _powerset_int_fast(n, av.numerator, bv.numerator, cv.numerator, dv.numerator)
        if fast is not None:
            return Fraction(fast)
    pow_a = [av**k for k in range(n + 1)]
    pow_b = [bv**k for k in range(n + 1)]
    pow_c = [cv**k for k in range(n + 1)]
    pow_d = [dv**k for k in range(n + 1)]
    total = Fraction(0)
    for x in range(size):
        s = pc[x]
        for y in range(size):
            t = pc[x & y]
            p = pc[y]
            total += pow_a[s - t] * pow_b[p - t] * pow_c[t] * pow_d[n - s - p + t]
    return total


def _powerset_int_fast(n: int, a: int, b: int, c: int, d: int) -> int | None:
    """Vectorized exact path for integer weights that provably fit int64."""
    top = max(abs(a), abs(b), abs(c), abs(d), 1)
    if top**n * (1 << (2 * n)) >= 1 << 62:
        return None
    size = 1 << n
    pc = np.array(_popcount_table(n), dtype=np.int64)
    pow_a = np.array([a**k for k in range(n + 1)], dtype=np.int64)
    pow_b = np.array([b**k for k in range(n + 1)], dtype=np.int64)
    pow_c = np.array([c**k for k in range(n + 1)], dtype=np.int64)
    pow_d = np.array([d**k for k in range(n + 1)], dtype=np.int64)
    ys = np.arange(size, dtype=np.int64)
    pc_y = pc[ys]
    total = 0
    for x in range(size):
        t = pc[np.bitwise_and(x, ys)]
        s = int(pc[x])
        vals = pow_a[s - t] * pow_b[pc_y - t] * pow_c[t] * pow_d[n - s - pc_y + t]
        total += int(vals.sum())
    return total


def _symdiff_counts(n: int) -> list[int]:
    """counts[k] = number of subset pairs with symmetric difference of size k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > _SYMDIFF_MAX_N:
        raise BudgetError(f"4^{n} pairs exceed the enumeration budget (n <= {_SYMDIFF_MAX_N})")
    size = 1 << n
    pc = np.array(_popcount_table(n), dtype=np.int64)
    ys = np.arange(size, dtype=np.int64)
    counts = np.zeros(n + 1, dtype=np.int64)
    for x in range(size):
        counts += np.bincount(pc[np.bitwise_xor(x, ys)], minlength=n + 1)
    return [int(v) for v in counts]


def symmetric_difference_sum(n: int) -> int:
    """Brute-force sum of |X symdiff Y| over all subset pairs of an n-set,
    which must equal n * 2^(2n-1)."""
    counts = _symdiff_counts(n)
    return sum(k * v for k, v in enumerate(counts))


def symmetric_difference_gf(n: int) -> ExactPoly:
    """Brute-force generating polynomial of the symmetric-difference size,
    which must equal 2^n (1+z)^n."""
    return ExactPoly(_symdiff_counts(n))


# -- numeric root oracle -----------------------------------------------------------


@dataclass(frozen=True)
class NumericRoots:
    """Floating-point root approximations with residual-based acceptance."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    converged: bool


def numeric_roots(p: ExactPoly, tol: float = 1e-10) -> NumericRoots:
    """All deg(p) complex roots, approximately, with backward-error residuals.

    Companion-matrix eigenvalues polished by Newton steps; acceptance is the
    relative residual |p(z)| / sum(|c_i| |z|^i) <= tol.  Used only to
    corroborate exact verdicts, never to certify.
    """
    if p.degree < 1:
        raise ValueError("need a polynomial of degree at least 1")
    scale = max(abs(c) for c in p.coeffs)
    coeffs = [float(c / scale) for c in p.coeffs]
    if coeffs[-1] == 0.0:
        raise ValueError("leading coefficient underflowed to zero in float conversion")
    roots = np.roots(coeffs[::-1])
    deriv = [i * c for i, c in enumerate(coeffs)][1:]

    def rel_residual(z: complex) -> float:
        pv = abs(_horner(coeffs, z))
        denom = sum(abs(c) * abs(z) ** i for i, c in enumerate(coeffs))
        return pv / denom if denom else pv

    polished = []
    residuals = []
    for z in roots:
        z = complex(z)
        best_z, best_res = z, rel_residual(z)
        for _ in range(8):
            pv = _horner(coeffs, z)
            dv = _horner(deriv, z)
            if pv == 0 or dv == 0:
                break
            step = pv / dv
            if not cmath.isfinite(step):
                break
            # damped update on the backward-error residual, so polishing can
            # never trade a good root for a relatively worse point
            accepted = False
            for _ in range(5):
                cand = z - step
                cand_res = rel_residual(cand)
                if cand_res < best_res:
                    z, best_z, best_res = cand, cand, cand_res
                    accepted = True
                    break
                step /= 2
            if not accepted:
                break
        polished.append(best_z)
        residuals.append(best_res)
    converged = all(r <= tol for r in residuals)
    order = np.argsort([z.real for z in polished])
    return NumericRoots(
        roots=tuple(polished[i] for i in order),
        residuals=tuple(residuals[i] for i in order),
        converged=converged,
    )


def _horner(coeffs: Sequence[float], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def chebyshev_product_deviation(n: int, num_points: int = 20) -> float:
    """Max deviation between the exact second-kind Chebyshev polynomial and
    its cosine product form 2^n * prod(x - cos(k pi/(n+1))) on sample points
    in [-1, 1]."""
    from .families import chebyshev_U  # sibling layer, deferred

    poly = chebyshev_U(n)
    worst = 0.0
    cosines = [math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)]
    for j in range(num_points):
        x = -1.0 + 2.0 * (j + 0.5) / num_points
        prod = float(2**n)
        for c in cosines:
            prod *= x - c
        exact = float(poly(Fraction(x)))
        worst = max(worst, abs(prod - exact))
    return worst
