"""Exact certification engine.

Everything here reduces to sign computations on integer polynomial rows:
Sturm chains decide real-rootedness and root counts, dyadic bisection
isolates and refines roots, gcds detect shared roots, and the even/odd
split reduces weak Hurwitz stability to real-rootedness plus interlacing.
Floating point appears only as *guidance* for choosing good bisection
points and as an independent corroboration oracle; every verdict is
established by exact arithmetic.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import oracles
from .errors import ConsistencyError, NotRealRootedError, RefinementError
from .exact_core import (
    DyadicInterval,
    ExactPoly,
    Rat,
    _mpz,
    _row_derivative,
    _row_neg,
    _row_prem_posscaled,
    _row_primitive,
    even_odd_split,
    exact_div,
    format_rational,
    poly_gcd,
    square_free_decomposition,
    square_free_part,
)

_PRE_REFINE_WIDTH = Fraction(1, 1 << 24)
_MAX_RESOLVE_STEPS = 4000


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable verdict: property name, subject, pass/fail, witness.

    A failing certificate always carries a finite re-checkable witness (an
    interval, an offending index, a minor location, ...).
    """

    property: str
    subject: str
    verdict: bool
    witness: dict
    params: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "property": self.property,
            "subject": self.subject,
            "verdict": "pass" if self.verdict else "fail",
            "witness": jsonify(self.witness),
            "params": jsonify(self.params),
        }


def jsonify(value):
    """Convert witness data to JSON-ready structures; rationals become exact
    'p/q' strings, intervals become [lo, hi] string pairs."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, DyadicInterval):
        return [format_rational(value.lo), format_rational(value.hi)]
    if isinstance(value, ExactPoly):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    return str(value)


# -- integer-row sign machinery ---------------------------------------------------


def _row_of(p: ExactPoly, positive_lc: bool = False) -> tuple:
    ints, _ = p.to_int_primitive()
    row = tuple(_mpz(c) for c in ints)
    if positive_lc and row and row[-1] < 0:
        row = tuple(-c for c in row)
    return row


def _row_sign_at(row: Sequence, x: Fraction) -> int:
    num = _mpz(x.numerator)
    den = _mpz(x.denominator)
    acc = _mpz(0)
    w = _mpz(1)
    for c in reversed(row):
        acc = acc * num + c * w
        if den != 1:
            w *= den
    return (acc > 0) - (acc < 0)


def _row_sign_at_inf(row: Sequence, positive: bool) -> int:
    lead = row[-1]
    s = (lead > 0) - (lead < 0)
    if not positive and (len(row) - 1) % 2:
        s = -s
    return s


def _variations(signs: Sequence[int]) -> int:
    flips = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            flips += 1
        prev = s
    return flips


@lru_cache(maxsize=512)
def _chain_rows(row: tuple) -> tuple:
    """Generalized Sturm chain rows of a square-free integer row.

    Every element is the primitive part of the textbook element scaled by a
    positive rational, which preserves all sign counts.
    """
    chain = [row, tuple(_row_primitive(_row_derivative(list(row))))]
    while True:
        rem = _row_prem_posscaled(list(chain[-2]), list(chain[-1]))
        if not rem:
            break
        chain.append(tuple(_row_neg(_row_primitive(rem))))
    return tuple(chain)


def _chain_variations(chain: tuple, x: Fraction | None, positive_inf: bool = True) -> int:
    if x is None:
        return _variations([_row_sign_at_inf(r, positive_inf) for r in chain])
    return _variations([_row_sign_at(r, x) for r in chain])


def _count_rows(row: tuple, lo: Fraction | None, hi: Fraction | None) -> int:
    """Distinct roots of the square-free row in (lo, hi]; None means infinite."""
    chain = _chain_rows(row)
    v_lo = _chain_variations(chain, lo, positive_inf=False)
    v_hi = _chain_variations(chain, hi, positive_inf=True)
    return v_lo - v_hi


def _cauchy_pow2_bound(row: Sequence) -> Fraction:
    lead = abs(Fraction(int(row[-1])))
    top = max((abs(Fraction(int(c))) for c in row[:-1]), default=Fraction(0))
    bound = 1 + top / lead
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


def _pick_nonroot(row: Sequence, a: Fraction, b: Fraction, proposal: Fraction | None = None) -> Fraction:
    """A dyadic point in the open interval (a, b) where the row is nonzero."""
    if proposal is not None and a < proposal < b and _row_sign_at(row, proposal):
        return proposal
    span = b - a
    for level in range(1, 64):
        step = Fraction(1, 1 << level)
        for k in range(1, 1 << level, 2):
            x = a + span * k * step
            if _row_sign_at(row, x):
                return x
    raise RefinementError("could not find a non-root dyadic point")  # pragma: no cover


# -- Sturm chains (public surface) -------------------------------------------------


@dataclass(frozen=True)
class SturmChain:
    """Sturm chain of the square-free part of a polynomial, content-normalized
    to integer coefficients.  Consecutive elements share no root; the last
    element is a nonzero constant."""

    polys: tuple[ExactPoly, ...]
    rows: tuple = field(repr=False)


def sturm_chain(p: ExactPoly) -> SturmChain:
    if p.is_zero:
        raise ValueError("Sturm chain of the zero polynomial")
    sf = square_free_part(p)
    row = _row_of(sf)
    if len(row) == 1:
        rows = (row,)
    else:
        rows = _chain_rows(row)
    return SturmChain(
        polys=tuple(ExactPoly(int(c) for c in r) for r in rows),
        rows=rows,
    )


def count_roots_in(chain: SturmChain, lo: Rat | None, hi: Rat | None) -> int:
    """Number of distinct real roots in (lo, hi]; None endpoints mean -/+oo."""
    flo = None if lo is None else Fraction(lo)
    fhi = None if hi is None else Fraction(hi)
    if flo is not None and fhi is not None and flo >= fhi:
        raise ValueError("need lo < hi")
    if len(chain.rows) == 1:
        return 0
    v_lo = _chain_variations(chain.rows, flo, positive_inf=False)
    v_hi = _chain_variations(chain.rows, fhi, positive_inf=True)
    return v_lo - v_hi


# -- real-rootedness ---------------------------------------------------------------


def _root_census(p: ExactPoly) -> dict:
    """Distinct-root counts of the square-free part, by sign region."""
    sf = square_free_part(p)
    row = _row_of(sf)
    if len(row) == 1:
        return {
            "square_free_degree": 0,
            "distinct_real_roots": 0,
            "positive_roots": 0,
            "negative_roots": 0,
            "zero_root": False,
        }
    chain = _chain_rows(row)
    v_neg_inf = _chain_variations(chain, None, positive_inf=False)
    v_zero = _chain_variations(chain, Fraction(0))
    v_pos_inf = _chain_variations(chain, None, positive_inf=True)
    distinct = v_neg_inf - v_pos_inf
    positive = v_zero - v_pos_inf
    zero_root = row[0] == 0
    return {
        "square_free_degree": len(row) - 1,
        "distinct_real_roots": distinct,
        "positive_roots": positive,
        "negative_roots": distinct - positive - (1 if zero_root else 0),
        "zero_root": zero_root,
    }


@lru_cache(maxsize=2048)
def _census_cached(p: ExactPoly) -> tuple:
    c = _root_census(p)
    return (
        c["square_free_degree"],
        c["distinct_real_roots"],
        c["positive_roots"],
        c["negative_roots"],
        c["zero_root"],
    )


def certify_real_rooted(
    p: ExactPoly, require_nonpositive: bool = False, subject: str | None = None
) -> Certificate:
    """Pass iff the number of distinct real roots of the square-free part
    equals its degree (equivalently: every root, with multiplicity, is real).

    With ``require_nonpositive`` the verdict additionally demands that no
    root lies on the open positive axis.  The zero polynomial passes
    vacuously, flagged in the witness.
    """
    params = {"require_nonpositive": require_nonpositive}
    if p.is_zero:
        return Certificate(
            "real_rooted",
            subject or "0",
            True,
            {"vacuous": True, "zero_polynomial": True},
            params,
        )
    sf_deg, distinct, pos, neg, zero_root = _census_cached(p)
    verdict = distinct == sf_deg
    if require_nonpositive:
        verdict = verdict and pos == 0
    witness = {
        "square_free_degree": sf_deg,
        "distinct_real_roots": distinct,
        "positive_roots": pos,
        "negative_roots": neg,
        "zero_root": zero_root,
    }
    return Certificate(
        "real_rooted", subject or f"poly(deg={p.degree})", verdict, witness, params
    )


# -- root isolation ------------------------------------------------------------------


@lru_cache(maxsize=512)
def _isolation_cached(row: tuple) -> tuple[DyadicInterval, ...]:
    """Disjoint isolating intervals for all real roots of a square-free row.

    Numeric approximations only *suggest* separating points; every cell is
    verified by exact Sturm counts, with pure dyadic bisection as fallback.
    Cell endpoints are never roots, so each non-point interval brackets a
    sign change of the row.
    """
    out: list[DyadicInterval] = []
    work = list(row)
    zero_root = bool(work) and work[0] == 0
    if zero_root:
        out.append(DyadicInterval(Fraction(0), Fraction(0)))
        work = work[1:]
    if len(work) <= 1:
        return tuple(out)
    wrow = tuple(work)
    chain = _chain_rows(wrow)
    bound = _cauchy_pow2_bound(wrow)
    vcache: dict[Fraction, int] = {}

    def var_at(x: Fraction) -> int:
        if x not in vcache:
            vcache[x] = _chain_variations(chain, x)
        return vcache[x]

    total = var_at(-bound) - var_at(bound)
    if total:
        proposals = _numeric_separators(wrow, bound)
        if zero_root:
            proposals = sorted(set(proposals) | {Fraction(0)})
        seps = [-bound]
        for prop in proposals:
            pt = _pick_nonroot(wrow, seps[-1], bound, proposal=prop)
            if pt > seps[-1]:
                seps.append(pt)
        if seps[-1] != bound:
            seps.append(bound)
        cells = []
        for a, b in zip(seps, seps[1:]):
            cnt = var_at(a) - var_at(b)
            if cnt:
                cells.append((a, b, cnt))
        while cells:
            a, b, cnt = cells.pop()
            if cnt == 1:
                out.append(DyadicInterval(a, b))
                continue
            m = _pick_nonroot(wrow, a, b, proposal=(a + b) / 2)
            left = var_at(a) - var_at(m)
            if left:
                cells.append((a, m, left))
            if cnt - left:
                cells.append((m, b, cnt - left))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    _shrink_to_disjoint(out, wrow)
    return tuple(out)


def _shrink_to_disjoint(intervals: list[DyadicInterval], row: tuple) -> None:
    """Shrink touching cells (shared separator endpoints) until the list is
    pairwise disjoint.  Non-point members enclose distinct simple roots of
    the row, so sign bisection separates them."""
    for _ in range(_MAX_RESOLVE_STEPS):
        intervals.sort(key=lambda iv: (iv.lo, iv.hi))
        dirty = False
        for i in range(len(intervals) - 1):
            a, b = intervals[i], intervals[i + 1]
            if not a.overlaps(b):
                continue
            dirty = True
            if not a.is_point:
                intervals[i] = _refine_on_row(row, a, a.width / 2)
            if not b.is_point:
                intervals[i + 1] = _refine_on_row(row, b, b.width / 2)
        if not dirty:
            return
    raise RefinementError("isolating cells did not separate")  # pragma: no cover


def _numeric_separators(row: tuple, bound: Fraction) -> list[Fraction]:
    """Dyadic separator proposals from floating-point root estimates."""
    try:
        poly = ExactPoly(int(c) for c in row)
        result = oracles.numeric_roots(poly, tol=1e-8)
    except Exception:
        return []
    reals = sorted({z.real for z in result.roots})
    seps = []
    fb = float(bound)
    for a, b in zip(reals, reals[1:]):
        mid = (a + b) / 2
        if -fb < mid < fb:
            frac = Fraction(mid)
            if -bound < frac < bound:
                seps.append(frac)
    return sorted(set(seps))


def _refine_on_row(row: tuple, iv: DyadicInterval, max_width: Fraction) -> DyadicInterval:
    """Shrink an isolating interval by sign bisection down to max_width.

    The enclosed root is simple and the endpoints are non-roots, so the row
    changes sign across the interval; hitting an exact dyadic root collapses
    to a point interval.
    """
    if iv.is_point or iv.width <= max_width:
        return iv
    lo, hi = iv.lo, iv.hi
    s_lo = _row_sign_at(row, lo)
    budget = (iv.width / max_width).numerator.bit_length() + 8
    for _ in range(budget):
        if hi - lo <= max_width:
            return DyadicInterval(lo, hi)
        mid = (lo + hi) / 2
        s_mid = _row_sign_at(row, mid)
        if s_mid == 0:
            return DyadicInterval(mid, mid)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    raise RefinementError(
        f"refinement budget exhausted at width {format_rational(hi - lo)}",
        achieved_width=hi - lo,
    )


def isolate_roots_with_multiplicity(
    p: ExactPoly, max_width: Rat | None = None
) -> list[tuple[DyadicInterval, int]]:
    """Distinct real roots with multiplicities, recovered from the square-free
    decomposition; intervals refined to ``max_width`` when given.  Ordering
    follows interval lower bounds (intervals of distinct factors may overlap
    until refined further; use :func:`certify_interlacing` machinery when a
    strict order matters)."""
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    width = None if max_width is None else Fraction(max_width)
    if width is not None and width <= 0:
        raise ValueError("max_width must be positive")
    out = []
    for row, _idx, iv, mult, stripped in _root_data(p):
        if width is not None and not iv.is_point:
            iv = _refine_on_row(stripped, iv, width)
        out.append((iv, mult))
    out.sort(key=lambda pair: (pair[0].lo, pair[0].hi))
    return out


def isolate_roots(p: ExactPoly, max_width: Rat | None = None) -> list[DyadicInterval]:
    """Pairwise-disjoint dyadic intervals, one per distinct real root.

    Requires certified real-rooted input; point intervals pin exact dyadic
    roots.  With ``max_width`` every interval is refined at least that far.
    """
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if not certify_real_rooted(p).verdict:
        raise NotRealRootedError("isolate_roots requires a real-rooted polynomial")
    row = _row_of(square_free_part(p), positive_lc=True)
    intervals = list(_isolation_cached(row))
    if max_width is not None:
        width = Fraction(max_width)
        if width <= 0:
            raise ValueError("max_width must be positive")
        work = list(row)
        zero_stripped = tuple(work[1:]) if work and work[0] == 0 else row
        intervals = [
            iv if iv.is_point else _refine_on_row(zero_stripped, iv, width)
            for iv in intervals
        ]
    return intervals


# -- root multisets and interlacing ---------------------------------------------------


@dataclass
class _Root:
    """One distinct real root: defining square-free row, enclosure, multiplicity."""

    owner: str
    row: tuple
    idx: int
    interval: DyadicInterval
    mult: int
    stripped_row: tuple

    def refine_step(self) -> None:
        if self.interval.is_point:
            return
        target = self.interval.width / 2
        self.interval = _refine_on_row(self.stripped_row, self.interval, target)


@lru_cache(maxsize=256)
def _root_data(p: ExactPoly) -> tuple:
    """Distinct real roots of p with multiplicities, as immutable tuples
    (row, idx, interval, mult, stripped_row).  Requires real-rooted p."""
    out = []
    for factor, mult in square_free_decomposition(p):
        row = _row_of(factor, positive_lc=True)
        stripped = tuple(list(row)[1:]) if row[0] == 0 else row
        for idx, iv in enumerate(_isolation_cached(row)):
            if not iv.is_point:
                iv = _refine_on_row(stripped, iv, _PRE_REFINE_WIDTH)
            out.append((row, idx, iv, mult, stripped))
    return tuple(out)


def _root_records(p: ExactPoly, owner: str) -> list[_Root]:
    return [
        _Root(owner, row, idx, iv, mult, stripped)
        for row, idx, iv, mult, stripped in _root_data(p)
    ]


@lru_cache(maxsize=512)
def _gcd_rows(row_a: tuple, row_b: tuple) -> tuple:
    a = ExactPoly(int(c) for c in row_a)
    b = ExactPoly(int(c) for c in row_b)
    return _row_of(poly_gcd(a, b), positive_lc=True)


def _interval_root_count(row: tuple, iv: DyadicInterval) -> int:
    """Roots of the row strictly inside a non-point interval whose endpoints
    are non-roots of the row."""
    return _count_rows(row, iv.lo, iv.hi)


def _resolve_order(records: list[_Root]) -> list[int]:
    """Assign each record a rank so that rank order equals root value order,
    with equal roots (detected exactly through gcds) sharing a rank."""
    n = len(records)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        parent[find(i)] = find(j)

    def overlapping_pair():
        for i in range(n):
            for j in range(i + 1, n):
                if find(i) != find(j) and records[i].interval.overlaps(
                    records[j].interval
                ):
                    return i, j
        return None

    steps = 0
    while True:
        pair = overlapping_pair()
        if pair is None:
            break
        steps += 1
        if steps > _MAX_RESOLVE_STEPS:
            raise RefinementError("root ordering did not resolve within budget")
        i, j = pair
        a, b = records[i], records[j]
        if a.row == b.row:
            if a.idx == b.idx:
                union(i, j)
            else:
                _refine_until_disjoint(a, b)
            continue
        d = _gcd_rows(a.row, b.row)
        if len(d) <= 1:
            _refine_until_disjoint(a, b)
            continue
        if _point_in_row(d, a.interval) and _point_in_row(d, b.interval):
            ka = _locate_in_isolation(a, d)
            kb = _locate_in_isolation(b, d)
            if ka is not None and ka == kb:
                union(i, j)
            else:
                _refine_until_disjoint(a, b)
        else:
            _refine_until_disjoint(a, b)

    reps: dict[int, DyadicInterval] = {}
    for i in range(n):
        reps.setdefault(find(i), records[i].interval)
    ordered = sorted(reps.items(), key=lambda kv: (kv[1].lo, kv[1].hi))
    rank_of_class = {cls: rank for rank, (cls, _) in enumerate(ordered)}
    return [rank_of_class[find(i)] for i in range(n)]


def _point_in_row(row: tuple, iv: DyadicInterval) -> bool:
    """Whether the root pinned by iv is also a root of the given row."""
    if iv.is_point:
        return _row_sign_at(row, iv.lo) == 0
    return _interval_root_count(row, iv) == 1


def _locate_in_isolation(rec: _Root, d_row: tuple) -> int | None:
    """Index of the d-isolating interval containing rec's root."""
    d_ivs = _isolation_cached(d_row)
    for _ in range(_MAX_RESOLVE_STEPS):
        iv = rec.interval
        if iv.is_point:
            # exact dyadic root: it either matches a point interval of d or
            # sits strictly inside one cell (cell endpoints are non-roots)
            r = iv.lo
            for k, j in enumerate(d_ivs):
                if j.is_point and j.lo == r:
                    return k
                if j.lo < r < j.hi:
                    return k
            return None
        # a point d-interval strictly inside iv pins the shared root exactly
        # (iv endpoints are non-roots, so strict containment is the only case)
        for k, j in enumerate(d_ivs):
            if j.is_point and iv.lo < j.lo < iv.hi:
                return k
        hits = [k for k, j in enumerate(d_ivs) if j.overlaps(iv)]
        if not hits:
            return None
        if len(hits) == 1:
            j = d_ivs[hits[0]]
            if j.lo <= iv.lo and iv.hi <= j.hi:
                return hits[0]
        rec.refine_step()
    raise RefinementError("could not localize a shared root")  # pragma: no cover


def _refine_until_disjoint(a: _Root, b: _Root) -> None:
    for _ in range(_MAX_RESOLVE_STEPS):
        if not a.interval.overlaps(b.interval):
            return
        if not a.interval.is_point:
            a.refine_step()
        if not a.interval.overlaps(b.interval):
            return
        if not b.interval.is_point:
            b.refine_step()
        if a.interval.is_point and b.interval.is_point:
            if a.interval.lo == b.interval.lo:
                raise ConsistencyError(
                    "distinct roots refined to the same point; gcd logic is broken"
                )
            return
    raise RefinementError("interval separation budget exhausted")


def certify_interlacing(g: ExactPoly, f: ExactPoly, subject: str | None = None) -> Certificate:
    """Certify the weak root-alternation order g before f.

    Roots are compared with multiplicity through refined isolating
    intervals; shared roots (detected via gcds) satisfy the weak
    inequalities by convention and are recorded in the witness.  Both
    inputs must be real-rooted; a degree gap outside {0, 1} fails with
    reason "degree".  A zero polynomial on either side passes vacuously.
    """
    subject = subject or f"deg {g.degree} vs deg {f.degree}"
    if f.is_zero or g.is_zero:
        return Certificate(
            "interlacing",
            subject,
            True,
            {"vacuous": True, "zero_polynomial_convention": True},
        )
    if not certify_real_rooted(f).verdict or not certify_real_rooted(g).verdict:
        raise NotRealRootedError("interlacing requires real-rooted inputs")
    gap = f.degree - g.degree
    if gap not in (0, 1):
        return Certificate(
            "interlacing",
            subject,
            False,
            {"reason": "degree", "deg_f": f.degree, "deg_g": g.degree},
        )
    f_records = _root_records(f, "f")
    g_records = _root_records(g, "g")
    records = f_records + g_records
    ranks = _resolve_order(records)

    f_vals: list[int] = []
    g_vals: list[int] = []
    for rec, rank in zip(records, ranks):
        target = f_vals if rec.owner == "f" else g_vals
        target.extend([rank] * rec.mult)
    f_vals.sort(reverse=True)
    g_vals.sort(reverse=True)

    violation = None
    for i, s in enumerate(g_vals):
        if s > f_vals[i]:
            violation = {"position": i, "side": "upper"}
            break
        if i + 1 < len(f_vals) and f_vals[i + 1] > s:
            violation = {"position": i, "side": "lower"}
            break

    merged = []
    equalities = 0
    by_rank: dict[int, dict] = {}
    for rec, rank in zip(records, ranks):
        entry = by_rank.setdefault(
            rank,
            {"interval": rec.interval, "approx": float(rec.interval.mid), "f_mult": 0, "g_mult": 0},
        )
        entry[f"{rec.owner}_mult"] += rec.mult
    for rank in sorted(by_rank):
        entry = by_rank[rank]
        if entry["f_mult"] and entry["g_mult"]:
            equalities += 1
        merged.append(entry)

    witness = {
        "merged_roots": merged,
        "shared_values": equalities,
        "violation": violation,
    }
    return Certificate("interlacing", subject, violation is None, witness)


# -- coefficient properties --------------------------------------------------------


def certify_coeff_properties(p: ExactPoly, subject: str | None = None) -> Certificate:
    """Palindromicity (about the support center), nonnegativity, unimodality,
    and log-concavity on the support window, with first-failure witnesses."""
    c = p.coeffs
    d = p.degree
    v = p.valuation
    failures: dict[str, object] = {}

    palindromic = all(c[v + i] == c[d - i] for i in range(d - v + 1)) if c else True
    if not palindromic:
        bad = next(i for i in range(d - v + 1) if c[v + i] != c[d - i])
        failures["palindromic"] = {"index": v + bad}

    nonneg = True
    for i, coeff in enumerate(c):
        if coeff < 0:
            nonneg = False
            failures["nonneg"] = {"index": i, "value": coeff}
            break

    unimodal = True
    i = 0
    while i < d and c[i] <= c[i + 1]:
        i += 1
    while i < d and c[i] >= c[i + 1]:
        i += 1
    if i < d:
        unimodal = False
        failures["unimodal"] = {"index": i}

    log_concave = True
    for k in range(v + 1, d):
        if c[k] * c[k] < c[k - 1] * c[k + 1]:
            log_concave = False
            failures["log_concave"] = {
                "index": k,
                "lhs": c[k] * c[k],
                "rhs": c[k - 1] * c[k + 1],
            }
            break

    witness = {
        "palindromic": palindromic,
        "nonneg": nonneg,
        "unimodal": unimodal,
        "log_concave": log_concave,
        "failures": failures,
    }
    verdict = palindromic and nonneg and unimodal and log_concave
    return Certificate(
        "coeff_properties", subject or f"poly(deg={d})", verdict, witness
    )


def certify_gamma_positive(p: ExactPoly, n: int, subject: str | None = None) -> Certificate:
    """Pass iff the gamma coordinates of a palindromic polynomial are all
    nonnegative integers; the witness carries the full vector."""
    from .families import gamma_vector  # deferred: families is a sibling layer

    gv = gamma_vector(p, n)
    bad = None
    for k, g in enumerate(gv.gammas):
        if g < 0:
            bad = {"index": k, "value": g, "reason": "negative"}
            break
        if g.denominator != 1:
            bad = {"index": k, "value": g, "reason": "non-integer"}
            break
    witness = {"gamma": list(gv.gammas), "first_bad": bad}
    return Certificate(
        "gamma_positive",
        subject or f"poly(deg={p.degree}), n={n}",
        bad is None,
        witness,
        {"n": n},
    )


# -- weak Hurwitz stability ----------------------------------------------------------


def certify_weak_hurwitz(
    f: ExactPoly,
    subject: str | None = None,
    cross_check: bool = True,
    numeric_max_deg: int = 80,
) -> Certificate:
    """Pass iff every complex root lies in the closed left half-plane.

    Roots at the origin are stripped (weakly stable); the remainder is
    decided by the even/odd split criterion: a nonconstant common factor of
    the split pair must be real-rooted with nonpositive roots (its lift
    contributes imaginary-axis pairs) and the coprime cofactor, which can
    have no imaginary-axis roots at all, must have strictly positive
    coefficients and split into real-rooted, nonpositive-rooted halves with
    the odd half weakly interlacing the even half.  The exact verdict is
    corroborated by the numeric root oracle up to ``numeric_max_deg``;
    disagreement beyond the oracle tolerance is a hard error.
    """
    subject = subject or f"poly(deg={f.degree})"
    params = {"cross_check": cross_check, "numeric_max_deg": numeric_max_deg}
    if f.is_zero:
        return Certificate(
            "weak_hurwitz", subject, True, {"zero_polynomial": True}, params
        )
    v = f.valuation
    g = f.div_xpow(v)
    if g.lc < 0:
        g = -g
    stages: list[dict] = []
    verdict = _hb_stable(g, stages)
    witness: dict = {"roots_at_zero": v, "stages": stages}

    if cross_check and 1 <= f.degree <= numeric_max_deg:
        # corroborate on the square-free part: same root locations, but
        # simple roots, so eigenvalue scatter stays far inside the band
        # (a multiplicity-m root is only located to about eps^(1/m))
        result = oracles.numeric_roots(square_free_part(f), tol=1e-9)
        if result.converged:
            max_re = max(z.real for z in result.roots)
            witness["numeric_max_real_part"] = max_re
            if verdict and max_re > 1e-6:
                raise ConsistencyError(
                    f"exact verdict PASS but numeric max real part {max_re}"
                )
            if not verdict and max_re < -1e-6:
                raise ConsistencyError(
                    f"exact verdict FAIL but numeric roots all left of {max_re}"
                )
        else:
            witness["numeric_oracle"] = "did not converge; exact path authoritative"
    return Certificate("weak_hurwitz", subject, verdict, witness, params)


def _hb_stable(g: ExactPoly, stages: list[dict]) -> bool:
    """Stability of g with g(0) != 0 and positive leading coefficient."""
    while True:
        if g.degree == 0:
            stages.append({"case": "constant"})
            return True
        half_even, half_odd = even_odd_split(g)
        if half_odd.is_zero:
            ok = certify_real_rooted(half_even, require_nonpositive=True).verdict
            stages.append({"case": "even_polynomial", "half_ok": ok})
            return ok
        d = poly_gcd(half_even, half_odd)
        if d.degree > 0:
            ok = certify_real_rooted(d, require_nonpositive=True).verdict
            stages.append(
                {"case": "imaginary_axis_factor", "gcd_degree": d.degree, "gcd_ok": ok}
            )
            if not ok:
                return False
            p1 = exact_div(half_even, d)
            q1 = exact_div(half_odd, d)
            g = p1.compose_x2() + q1.compose_x2().mul_xpow(1)
            if g.lc < 0:
                g = -g
            continue
        bad = next((i for i, c in enumerate(g.coeffs) if c <= 0), None)
        if bad is not None:
            stages.append({"case": "coprime", "nonpositive_coefficient_index": bad})
            return False
        even_ok = certify_real_rooted(half_even, require_nonpositive=True).verdict
        odd_ok = certify_real_rooted(half_odd, require_nonpositive=True).verdict
        if not (even_ok and odd_ok):
            stages.append(
                {"case": "coprime", "even_half_ok": even_ok, "odd_half_ok": odd_ok}
            )
            return False
        inter = certify_interlacing(half_odd, half_even)
        stages.append({"case": "coprime", "halves_interlace": inter.verdict})
        return inter.verdict


# -- multiplier sequences --------------------------------------------------------------


def check_multiplier_nseq(
    weights: Sequence[Rat], n: int, subject: str | None = None
) -> Certificate:
    """Binomial-transform test for weight sequences: pass iff the polynomial
    sum of C(n,k) * w_k * x^k is real-rooted with all roots of one weak sign."""
    if len(weights) != n + 1:
        raise ValueError(f"need {n + 1} weights, got {len(weights)}")
    ws = [Fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        raise ValueError("weights must be nonnegative")
    transform = ExactPoly(math.comb(n, k) * w for k, w in enumerate(ws))
    subject = subject or f"weights(n={n})"
    if transform.is_zero:
        return Certificate(
            "multiplier_nseq", subject, True, {"vacuous": True}, {"n": n}
        )
    sf_deg, distinct, pos, neg, zero_root = _census_cached(transform)
    real_rooted = distinct == sf_deg
    same_sign = pos == 0 or neg == 0
    witness = {
        "transform_degree": transform.degree,
        "distinct_real_roots": distinct,
        "square_free_degree": sf_deg,
        "positive_roots": pos,
        "negative_roots": neg,
        "zero_root": zero_root,
    }
    return Certificate(
        "multiplier_nseq", subject, real_rooted and same_sign, witness, {"n": n}
    )
