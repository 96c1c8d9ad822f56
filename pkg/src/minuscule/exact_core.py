"""Exact rational scalars, dense univariate polynomials, and dyadic intervals.

Scalars are Python ``int`` and ``fractions.Fraction`` (arbitrary precision,
always in lowest terms with positive denominator).  ``ExactPoly`` is the
universal carrier for every polynomial family in the package: a dense,
immutable coefficient vector indexed by degree, ascending.  All operations
are exact; nothing in this module touches floating point.

The integer kernel at the bottom (primitive pseudo-remainder sequences) backs
polynomial gcd, square-free decomposition, and the Sturm chains built in
:mod:`minuscule.certify`.  When ``gmpy2`` is importable its ``mpz`` type is
used for the kernel's big-integer arithmetic; the pure-Python fallback is
identical but slower.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeCapError, ExactnessError

try:  # optional fast big-int kernel
    from gmpy2 import gcd as _int_gcd
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpz = int
    _int_gcd = math.gcd

Rat = int | Fraction

_degree_cap = 2000


def get_degree_cap() -> int:
    """Current constructor degree cap (memory guard)."""
    return _degree_cap


def set_degree_cap(cap: int) -> None:
    """Override the constructor degree cap (default 2000)."""
    global _degree_cap
    if cap < 0:
        raise ValueError("degree cap must be nonnegative")
    _degree_cap = cap


def format_rational(value: Rat) -> str:
    """Render a rational exactly: ``56`` for integers, ``1/6`` otherwise."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`."""
    return Fraction(text)


class ExactPoly:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are stored ascending by degree with no trailing zeros; the
    zero polynomial is the empty tuple.  Instances are immutable and hashable,
    safe to share across worker processes.

    >>> p = ExactPoly([1, 1])
    >>> p * p
    ExactPoly([1, 2, 1])
    >>> (p * p)(Fraction(1, 2))
    Fraction(9, 4)
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) - 1 > _degree_cap:
            raise DegreeCapError(
                f"degree {len(cs) - 1} exceeds cap {_degree_cap}; "
                "raise it with exact_core.set_degree_cap"
            )
        object.__setattr__(self, "_coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactPoly is immutable")

    # -- basic structure ----------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1 by convention."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def lc(self) -> Fraction:
        """Leading coefficient (0 for the zero polynomial)."""
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    @property
    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient; 0 for the zero polynomial."""
        for i, c in enumerate(self._coeffs):
            if c != 0:
                return i
        return 0

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactPoly(
            a + b
            for a, b in itertools.zip_longest(
                self._coeffs, other._coeffs, fillvalue=Fraction(0)
            )
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactPoly(
            a - b
            for a, b in itertools.zip_longest(
                self._coeffs, other._coeffs, fillvalue=Fraction(0)
            )
        )

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return ExactPoly(-c for c in self._coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ExactPoly()
            return ExactPoly(c * other for c in self._coeffs)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ExactPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                if b != 0:
                    out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = ExactPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dg = other.degree
        inv_lead = 1 / other.lc
        quo = [Fraction(0)] * max(len(rem) - dg, 0)
        while len(rem) - 1 >= dg:
            if rem[-1] == 0:
                rem.pop()
                continue
            shift = len(rem) - 1 - dg
            factor = rem[-1] * inv_lead
            quo[shift] = factor
            for i in range(dg):
                rem[shift + i] -= factor * other._coeffs[i]
            rem.pop()
        return ExactPoly(quo), ExactPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- calculus and substitutions ------------------------------------------

    def __call__(self, x: Rat) -> Fraction:
        """Exact Horner evaluation."""
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "ExactPoly":
        """Formal derivative."""
        return ExactPoly(i * c for i, c in enumerate(self._coeffs) if i)

    def compose_x2(self) -> "ExactPoly":
        """Return p(x^2)."""
        out = [Fraction(0)] * (2 * len(self._coeffs))
        for i, c in enumerate(self._coeffs):
            out[2 * i] = c
        return ExactPoly(out)

    def mul_xpow(self, m: int) -> "ExactPoly":
        """Return x^m * p."""
        if m < 0:
            raise ValueError("negative shift")
        if self.is_zero:
            return self
        return ExactPoly((Fraction(0),) * m + self._coeffs)

    def div_xpow(self, m: int) -> "ExactPoly":
        """Return p / x^m, which must be exact."""
        if m < 0:
            raise ValueError("negative shift")
        if self.is_zero:
            return self
        if any(c != 0 for c in self._coeffs[:m]):
            raise ExactnessError(f"polynomial is not divisible by x^{m}")
        return ExactPoly(self._coeffs[m:])

    def to_int_primitive(self) -> tuple[tuple[int, ...], Fraction]:
        """Write p = scale * q with q primitive integer-coefficient, scale > 0.

        Returns (coefficients of q, scale).  The zero polynomial maps to
        ((), 1).
        """
        if self.is_zero:
            return (), Fraction(1)
        den = math.lcm(*(c.denominator for c in self._coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self._coeffs]
        content = math.gcd(*ints)
        return tuple(c // content for c in ints), Fraction(content, den)

    # -- dunder plumbing ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactPoly([other])
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        inner = ", ".join(format_rational(c) for c in self._coeffs)
        return f"ExactPoly([{inner}])"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = format_rational(abs(c))
            term = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if term and mag == "1":
                mag = ""
            joint = ("- " if c < 0 else "+ ") if parts else ("-" if c < 0 else "")
            parts.append(f"{joint}{mag}{term}" if (mag or term) else f"{joint}1")
        return " ".join(parts)

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero() -> "ExactPoly":
        return ExactPoly()

    @staticmethod
    def one() -> "ExactPoly":
        return ExactPoly([1])

    @staticmethod
    def x() -> "ExactPoly":
        return ExactPoly([0, 1])

    @staticmethod
    def monomial(coeff: Rat, k: int) -> "ExactPoly":
        return ExactPoly((Fraction(0),) * k + (Fraction(coeff),))


def _coerce(value) -> "ExactPoly":
    if isinstance(value, ExactPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactPoly([value])
    return NotImplemented


# -- structural transforms ----------------------------------------------------


def reverse(p: ExactPoly, n: int) -> ExactPoly:
    """Return x^n * p(1/x).  Requires deg(p) <= n."""
    if p.degree > n:
        raise ValueError(f"reverse needs deg(p) <= n, got {p.degree} > {n}")
    return ExactPoly(p[n - i] for i in range(n + 1))


def is_palindromic(p: ExactPoly, n: int) -> bool:
    """True iff the coefficient vector (f_0..f_n) satisfies f_k = f_{n-k}.

    The zero polynomial is palindromic for every n.
    """
    if p.degree > n:
        return False
    return reverse(p, n) == p


def even_odd_split(f: ExactPoly) -> tuple[ExactPoly, ExactPoly]:
    """Split f(x) = P(x^2) + x * Q(x^2); returns (P, Q)."""
    return ExactPoly(f.coeffs[0::2]), ExactPoly(f.coeffs[1::2])


def even_part_extract(q: ExactPoly) -> ExactPoly:
    """Return r with r(x^2) = q; rejects inputs with odd-degree terms."""
    if any(c != 0 for c in q.coeffs[1::2]):
        bad = next(i for i, c in enumerate(q.coeffs) if i % 2 and c != 0)
        raise ValueError(f"nonzero odd-degree coefficient at index {bad}")
    return ExactPoly(q.coeffs[0::2])


def exact_div(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Division that must be exact; nonzero remainder is an internal bug."""
    quo, rem = divmod(p, q)
    if not rem.is_zero:
        raise ExactnessError("expected exact polynomial division")
    return quo


# -- integer kernel: primitive pseudo-remainder sequences ---------------------
#
# Dense integer coefficient rows, ascending, no trailing zeros, in the kernel
# integer type (gmpy2.mpz when available).  Every remainder is reduced to its
# primitive part immediately; the accumulated scalar factors are kept positive
# so the rows remain positive multiples of the true remainders (which is what
# Sturm sign counting needs).


def _row_strip(row: list) -> list:
    while row and row[-1] == 0:
        row.pop()
    return row


def _row_primitive(row: list) -> list:
    if not row:
        return row
    content = 0
    for c in row:
        content = _int_gcd(content, c)
        if content == 1:
            return row
    return [c // content for c in row]


def _row_neg(row: list) -> list:
    return [-c for c in row]


def _row_derivative(row: list) -> list:
    return [i * c for i, c in enumerate(row) if i]


def _row_prem_posscaled(f: list, g: list) -> list:
    """Pseudo-remainder of f by g, scaled by a positive integer.

    Computes m^s * rem(f, g) for m = lc(g) and s reduction steps, then fixes
    the overall sign so the result is a positive multiple of rem(f, g).
    """
    dg = len(g) - 1
    m = g[-1]
    r = list(f)
    steps = 0
    while len(r) - 1 >= dg:
        if r and r[-1] == 0:
            r.pop()
            continue
        if not r:
            break
        lead = r[-1]
        shift = len(r) - 1 - dg
        r = [m * c for c in r]
        for i in range(dg):
            r[shift + i] -= lead * g[i]
        r[shift + dg] = 0
        _row_strip(r)
        steps += 1
    if m < 0 and steps % 2:
        r = _row_neg(r)
    return r


def _row_gcd(f: list, g: list) -> list:
    """Primitive gcd with positive leading coefficient."""
    a = _row_primitive(list(f))
    b = _row_primitive(list(g))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _row_primitive(_row_prem_posscaled(a, b))
        a, b = b, r
    if a and a[-1] < 0:
        a = _row_neg(a)
    return a


def _to_kernel_row(p: ExactPoly) -> tuple[list, Fraction]:
    ints, scale = p.to_int_primitive()
    return [_mpz(c) for c in ints], scale


def _row_to_poly(row: list) -> ExactPoly:
    return ExactPoly(int(c) for c in row)


def poly_gcd(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Gcd over the rationals, returned primitive with positive leading
    coefficient (``1`` for coprime inputs, per the usual convention)."""
    if p.is_zero and q.is_zero:
        return ExactPoly()
    if p.is_zero:
        return _row_to_poly(_row_primitive(_abs_lc(_to_kernel_row(q)[0])))
    if q.is_zero:
        return _row_to_poly(_row_primitive(_abs_lc(_to_kernel_row(p)[0])))
    return _row_to_poly(_row_gcd(_to_kernel_row(p)[0], _to_kernel_row(q)[0]))


def _abs_lc(row: list) -> list:
    return _row_neg(row) if row and row[-1] < 0 else row


def square_free_part(p: ExactPoly) -> ExactPoly:
    """p / gcd(p, p'); primitive with the sign of p's leading coefficient.

    Has the same distinct roots as p, each with multiplicity one.
    """
    if p.is_zero:
        raise ValueError("square-free part of the zero polynomial")
    row, _ = _to_kernel_row(p)
    if len(row) == 1:
        return ExactPoly([1]) if row[0] > 0 else ExactPoly([-1])
    d = _row_gcd(row, _row_derivative(row))
    sf = exact_div(_row_to_poly(row), _row_to_poly(d))
    ints, _ = sf.to_int_primitive()
    result = ExactPoly(ints)
    if (result.lc < 0) != (p.lc < 0):
        result = -result
    return result


def square_free_decomposition(p: ExactPoly) -> list[tuple[ExactPoly, int]]:
    """Yun decomposition: pairwise-coprime square-free factors with their
    multiplicities, such that the product of factor^mult equals p up to a
    nonzero rational constant.  Constant polynomials decompose to []."""
    if p.is_zero:
        raise ValueError("square-free decomposition of the zero polynomial")
    ints, _ = p.to_int_primitive()
    work = ExactPoly(ints)
    if work.degree < 1:
        return []
    d = poly_gcd(work, work.derivative())
    factors: list[tuple[ExactPoly, int]] = []
    w = exact_div(work, d)
    y = exact_div(work.derivative(), d)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if g.degree > 0:
            factors.append((g, i))
            w = exact_div(w, g)
            z = exact_div(z, g)
        y = z
        i += 1
    return factors


# -- dyadic intervals ----------------------------------------------------------


def is_dyadic(x: Rat) -> bool:
    den = Fraction(x).denominator
    return den & (den - 1) == 0


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval with exactly representable dyadic endpoints.

    A point interval (lo == hi) pins the enclosed value exactly; the width of
    a non-point interval is halvable without rounding."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not (is_dyadic(lo) and is_dyadic(hi)):
            raise ValueError("endpoints must be dyadic rationals")
        if lo > hi:
            raise ValueError("lo must not exceed hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __str__(self):
        if self.is_point:
            return f"[{format_rational(self.lo)}]"
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"
