"""Exact constructors for every polynomial family and matrix in the package.

Each family has at least two independent construction routes (sum formula vs
closed form, recurrence vs explicit expansion); the test suite certifies
route agreement rather than relying on hand-listed coefficients alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .errors import ConsistencyError, ExactnessError
from .exact_core import ExactPoly, Rat, even_part_extract, is_palindromic


def _comb0(n: int, k: int) -> int:
    """Binomial coefficient extended by zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _one_plus_x_pow(m: int, sign: int = 1) -> ExactPoly:
    """(1 + sign*x)^m expanded directly from binomial coefficients."""
    return ExactPoly(math.comb(m, k) * sign**k for k in range(m + 1))


# -- the minuscule family -------------------------------------------------------


@lru_cache(maxsize=1024)
def minuscule_sum(n: int) -> ExactPoly:
    """The degree-(n-1) minuscule polynomial, from its defining sum.

    Coefficients are the weighted odd binomials k(n-k)*C(2n+2, 2k+1)/(4n+2);
    the division is always exact, so the result has integer coefficients,
    zero constant term, and is palindromic about n/2.  The family starts at
    n = 1 (the zero polynomial).
    """
    if n < 1:
        raise ValueError("family is defined for n >= 1")
    coeffs = [Fraction(0)] * n
    for k in range(1, n):
        coeffs[k] = Fraction(k * (n - k) * math.comb(2 * n + 2, 2 * k + 1), 4 * n + 2)
    return ExactPoly(coeffs)


@lru_cache(maxsize=1024)
def minuscule_closed(n: int) -> ExactPoly:
    """Same polynomial via the closed form for its even-variable lift.

    Builds (n+1)/8 * [(1+x)^2n + (1-x)^2n] - 1/(16x) * [(1+x)^(2n+2) -
    (1-x)^(2n+2)], whose bracketed difference is exactly divisible by x,
    then extracts the even part.  Any non-even intermediate is an internal
    exactness failure, surfaced as a hard error.
    """
    if n < 1:
        raise ValueError("family is defined for n >= 1")
    even_sum = _one_plus_x_pow(2 * n) + _one_plus_x_pow(2 * n, -1)
    odd_diff = _one_plus_x_pow(2 * n + 2) - _one_plus_x_pow(2 * n + 2, -1)
    lifted = even_sum * Fraction(n + 1, 8) - odd_diff.div_xpow(1) * Fraction(1, 16)
    try:
        return even_part_extract(lifted)
    except ValueError as exc:
        raise ExactnessError(f"closed form produced a non-even lift at n={n}") from exc


def minuscule_egf_check(n_max: int, z_order: int | None = None):
    """Certify the exponential generating function of the lifted family.

    Expands both summands as truncated power series in z with exact
    polynomial coefficients in x, divides by 16x exactly, and checks the
    z^n coefficient against ``minuscule_sum`` for every n <= n_max.
    Returns a Certificate; a mismatch names the first bad n.
    """
    from .certify import Certificate  # local import keeps module layering acyclic

    if z_order is None:
        z_order = n_max
    if z_order < n_max:
        raise ValueError("z_order must be at least n_max")
    plus = _one_plus_x_pow(2)  # (1+x)^2
    minus = _one_plus_x_pow(2, -1)  # (1-x)^2
    exp_plus = [plus**m * Fraction(1, math.factorial(m)) for m in range(z_order + 1)]
    exp_minus = [minus**m * Fraction(1, math.factorial(m)) for m in range(z_order + 1)]
    one_plus_x2 = ExactPoly([1, 0, 1])
    two_x = ExactPoly([0, 2])
    first_bad = None
    for n in range(n_max + 1):
        coeff_n = -one_plus_x2 * exp_plus[n] + one_plus_x2 * exp_minus[n]
        if n >= 1:
            coeff_n = coeff_n + two_x * plus * exp_plus[n - 1]
            coeff_n = coeff_n + two_x * minus * exp_minus[n - 1]
        expected = ExactPoly() if n == 0 else minuscule_sum(n).compose_x2()
        try:
            lifted = coeff_n.div_xpow(1) * Fraction(math.factorial(n), 16)
        except ExactnessError:
            first_bad = n
            break
        if lifted != expected:
            first_bad = n
            break
    return Certificate(
        property="egf_identity",
        subject=f"family EGF up to z^{n_max}",
        verdict=first_bad is None,
        witness={"first_bad_n": first_bad},
        params={"n_max": n_max, "z_order": z_order},
    )


# -- companion families ---------------------------------------------------------


@lru_cache(maxsize=1024)
def f_poly(n: int) -> ExactPoly:
    """Odd-binomial polynomial of degree n: sum of C(2n+2, 2k+1) x^k.

    Real-rooted with all roots <= 0 (it factors through squared cosines),
    and evaluates to 2^(2n+1) at x = 1.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return ExactPoly(math.comb(2 * n + 2, 2 * k + 1) for k in range(n + 1))


@lru_cache(maxsize=256)
def chebyshev_U(n: int) -> ExactPoly:
    """Chebyshev polynomial of the second kind, by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ExactPoly([1])
    prev, cur = ExactPoly([1]), ExactPoly([0, 2])
    for _ in range(n - 1):
        prev, cur = cur, ExactPoly([0, 2]) * cur - prev
    return cur


def chebyshev_U_sum(n: int) -> ExactPoly:
    """Independent route: the explicit sum C(n+1, 2k+1) x^(n-2k) (x^2-1)^k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x2m1 = ExactPoly([-1, 0, 1])
    total = ExactPoly()
    for k in range(n // 2 + 1):
        total = total + (x2m1**k).mul_xpow(n - 2 * k) * math.comb(n + 1, 2 * k + 1)
    return total


# -- gamma expansion ------------------------------------------------------------


@dataclass(frozen=True)
class GammaVector:
    """Coordinates of a palindromic polynomial in the basis x^k (1+x)^(n-2k).

    Recomposing the coordinates reproduces the source polynomial exactly;
    entries are rational in general and nonnegative integers for the
    minuscule family.
    """

    n: int
    gammas: tuple[Fraction, ...]

    def recompose(self) -> ExactPoly:
        total = ExactPoly()
        for k, g in enumerate(self.gammas):
            if g:
                total = total + _one_plus_x_pow(self.n - 2 * k).mul_xpow(k) * g
        return total

    def __iter__(self):
        return iter(self.gammas)

    def __len__(self):
        return len(self.gammas)


def gamma_vector(p: ExactPoly, n: int) -> GammaVector:
    """Expand a palindromic polynomial over the gamma basis.

    Peels coordinates from k = 0 upward (the basis is triangular in the
    valuation); rejects non-palindromic input.
    """
    if not is_palindromic(p, n):
        raise ValueError(f"polynomial is not palindromic with respect to n={n}")
    residue = p
    gammas = []
    for k in range(n // 2 + 1):
        g = residue[k]
        gammas.append(g)
        if g:
            residue = residue - _one_plus_x_pow(n - 2 * k).mul_xpow(k) * g
    if not residue.is_zero:
        raise ExactnessError("gamma peeling left a nonzero residue on palindromic input")
    return GammaVector(n, tuple(gammas))


def gamma_half_sums(n_max: int) -> list[int]:
    """Half of the gamma coordinate sum of the minuscule family, n = 2..n_max.

    The total is always even; an odd total is a hard error since it would
    contradict the family identity sum = (n-1) 2^(2n-3) ... gamma recombined
    at x = 1.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    out = []
    for n in range(2, n_max + 1):
        total = sum(gamma_vector(minuscule_sum(n), n).gammas, Fraction(0))
        if total.denominator != 1 or total.numerator % 2:
            raise ConsistencyError(f"gamma total at n={n} is not an even integer: {total}")
        out.append(total.numerator // 2)
    return out


# -- difference polynomials ------------------------------------------------------


@lru_cache(maxsize=512)
def D_direct(n: int) -> ExactPoly:
    """Difference polynomial: square of the n-th family member minus the
    product of its neighbours."""
    if n < 2:
        raise ValueError("difference polynomial is defined for n >= 2")
    center = minuscule_sum(n)
    return center * center - minuscule_sum(n + 1) * minuscule_sum(n - 1)


def D_closed_coefficient(n: int, k: int) -> Fraction:
    """Coefficient [x^k] of D_direct(n) from the explicit per-index formula
    (an alternating combination of four binomials, divided by 32)."""
    if n < 2:
        raise ValueError("difference polynomial is defined for n >= 2")
    m = n - 1
    if k < 1 or k > 2 * m:
        return Fraction(0)
    sign = -1 if k % 2 else 1
    value = (
        math.comb(4 * m + 4, 2 * k)
        - sign * _comb0(2 * m, k)
        - sign * _comb0(2 * m, k - 2)
        + sign * (8 * m * m + 16 * m + 6) * _comb0(2 * m, k - 1)
    )
    return Fraction(value, 32)


@lru_cache(maxsize=512)
def D_closed(n: int) -> ExactPoly:
    """Difference polynomial via the closed form: an even-binomial sum minus
    a quadratic multiple of (1-x)^(2n-2), all divided by 32."""
    if n < 2:
        raise ValueError("difference polynomial is defined for n >= 2")
    m = n - 1
    even_sum = ExactPoly(math.comb(4 * m + 4, 2 * k) for k in range(2 * m + 3))
    quad = ExactPoly([1, 8 * m * m + 16 * m + 6, 1])
    return (even_sum - quad * _one_plus_x_pow(2 * m, -1)) * Fraction(1, 32)


# -- factorial-weighted families (total positivity route) -----------------------


@lru_cache(maxsize=1024)
def h_poly(n: int) -> ExactPoly:
    """Sum of x^k / ((2k+1)! (n-k)!), verified against its recurrence.

    The recurrence (2n+2)(2n+3) h_{n+1} = (4n+6+x) h_n + 4x h_n' links
    consecutive members; a mismatch is a hard error.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    h = _h_sum(n)
    if n >= 1:
        prev = _h_sum(n - 1)
        lhs = h * (2 * n * (2 * n + 1))
        rhs = prev * ExactPoly([4 * n + 2, 1]) + prev.derivative() * ExactPoly([0, 4])
        if lhs != rhs:
            raise ConsistencyError(f"recurrence failed linking n={n - 1} to n={n}")
    return h


def _h_sum(n: int) -> ExactPoly:
    return ExactPoly(
        Fraction(1, math.factorial(2 * k + 1) * math.factorial(n - k))
        for k in range(n + 1)
    )


@lru_cache(maxsize=1024)
def g_poly(n: int) -> ExactPoly:
    """Sum of C(n,k) k k!/(2k+1)! x^k, verified equal to n! x h_n'(x)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    g = ExactPoly(
        Fraction(math.comb(n, k) * k * math.factorial(k), math.factorial(2 * k + 1))
        for k in range(n + 1)
    )
    alt = h_poly(n).derivative().mul_xpow(1) * math.factorial(n)
    if g != alt:
        raise ConsistencyError(f"derivative identity failed at n={n}")
    return g


# -- exact matrices --------------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of exact rationals, row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        object.__setattr__(
            self, "entries", tuple(Fraction(e) for e in self.entries)
        )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Rat]]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return ExactMatrix(r, c, tuple(Fraction(v) for row in rows for v in row))

    def at(self, i: int, j: int) -> Fraction:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(
            len(rows),
            len(cols),
            tuple(self.at(i, j) for i in rows for j in cols),
        )


def toeplitz_matrix(seq: Sequence[Rat] | Callable[[int], Rat], size: int) -> ExactMatrix:
    """Lower-triangular Toeplitz truncation of a sequence: entry (i, j) is
    seq[i-j] for i >= j, zero above the diagonal.  Sequences shorter than
    ``size`` are zero-padded."""
    if size < 1:
        raise ValueError("size must be at least 1")
    if callable(seq):
        values = [Fraction(seq(m)) for m in range(size)]
    else:
        values = [Fraction(v) for v in seq[:size]]
        values += [Fraction(0)] * (size - len(values))
    entries = [
        values[i - j] if 0 <= i - j else Fraction(0)
        for i in range(size)
        for j in range(size)
    ]
    return ExactMatrix(size, size, tuple(entries))


def factorial_ratio_entry(m: int) -> Fraction:
    """Generator m / (2m+1)! of the Toeplitz sequence behind the coefficient
    matrix reduction."""
    return Fraction(m, math.factorial(2 * m + 1))


def build_matrices(kind: str, size: int, seq: Sequence[Rat] | None = None) -> ExactMatrix:
    """Materialize the named matrix truncation densely.

    kind 'toeplitz' needs the generating sequence; 'coeffN' is the
    lower-triangular matrix of family coefficients (row n, column k holds
    [x^k] of the n-th member, zero outside 1..n-1); 'coeffT' holds
    (n-k)/(2n-2k+1)! on and below the diagonal.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    if kind == "toeplitz":
        if seq is None:
            raise ValueError("toeplitz kind needs a generating sequence")
        return toeplitz_matrix(seq, size)
    if kind == "coeffN":
        entries = []
        for i in range(size):
            poly = minuscule_sum(i) if i >= 1 else ExactPoly()
            entries.extend(poly[j] for j in range(size))
        return ExactMatrix(size, size, tuple(entries))
    if kind == "coeffT":
        return toeplitz_matrix(factorial_ratio_entry, size)
    raise ValueError(f"unknown matrix kind: {kind!r}")
