"""Batch driver: generate families, run certification suites, render reports.

Certificate files are JSON lines: one header object carrying the timestamp
and invocation (excluded from reproducibility comparisons), then one object
per (suite, n) case with fields suite, n, verdict, witness, params,
duration_ms.  Identical invocations produce identical certificate lines up
to the measured durations.  Exit codes: 0 all certificates pass, 1 any
failure, 2 usage or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, replace
from datetime import datetime, timezone
from fractions import Fraction
from multiprocessing import Pool

from . import __version__, certify, exact_core, families, oracles, stats, totalpos
from .certify import Certificate, jsonify
from .errors import MinusculeError
from .exact_core import ExactPoly, format_rational

CONFIG_ENV_VAR = "MINUSCULE_CONFIG"

GENERATE_FAMILIES = ("N", "f", "U", "D", "gamma", "h", "g", "coeffN", "coeffT")

SUITE_MIN_N = {
    "realroot": 1,
    "interlace": 1,
    "gamma": 1,
    "identity": 1,
    "stats": 2,
    "xlogconcave": 2,
    "hurwitz": 2,
    "tp": 1,
    "powerset": 0,
}


@dataclass(frozen=True)
class Config:
    """Runtime limits; a JSON config file (flag --config or the environment
    variable MINUSCULE_CONFIG) overrides the defaults, flags override both."""

    degree_cap: int = 2000
    matrix_size_cap: int = 64
    minor_budget: int = 2_000_000
    jobs: int = 1
    refine_width_bits: int = 40
    numeric_max_deg: int = 80
    stats_enclosure_max_n: int = 32
    closed_route_max_n: int = 60
    powerset_max_n: int = 12


def load_config(path: str | None) -> Config:
    cfg_path = path or os.environ.get(CONFIG_ENV_VAR)
    if not cfg_path:
        return Config()
    with open(cfg_path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    unknown = set(data) - set(Config.__dataclass_fields__)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return Config(**data)


def parse_range(text: str) -> tuple[int, int]:
    """Parse 'A..B' or a single 'A' into an inclusive integer range."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise ValueError(f"invalid range {text!r}; expected 'A..B' or 'A'") from exc
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


# -- generate --------------------------------------------------------------------


def _poly_rows(n: int, poly: ExactPoly) -> list[tuple[int, int, str]]:
    if poly.is_zero:
        return [(n, 0, "0")]
    return [(n, k, format_rational(c)) for k, c in enumerate(poly.coeffs) if c != 0]


def generate_rows(family: str, lo: int, hi: int) -> list[tuple[int, int, str]]:
    rows: list[tuple[int, int, str]] = []
    for n in range(lo, hi + 1):
        if family == "N":
            rows.extend(_poly_rows(n, families.minuscule_sum(n)))
        elif family == "f":
            rows.extend(_poly_rows(n, families.f_poly(n)))
        elif family == "U":
            rows.extend(_poly_rows(n, families.chebyshev_U(n)))
        elif family == "D":
            rows.extend(_poly_rows(n, families.D_direct(n)))
        elif family == "h":
            rows.extend(_poly_rows(n, families.h_poly(n)))
        elif family == "g":
            rows.extend(_poly_rows(n, families.g_poly(n)))
        elif family == "gamma":
            gv = families.gamma_vector(families.minuscule_sum(n), n)
            rows.extend((n, k, format_rational(g)) for k, g in enumerate(gv.gammas))
        elif family == "coeffN":
            poly = families.minuscule_sum(n) if n >= 1 else ExactPoly()
            rows.extend((n, k, format_rational(poly[k])) for k in range(n + 1))
        elif family == "coeffT":
            rows.extend(
                (n, k, format_rational(families.factorial_ratio_entry(n - k)))
                for k in range(n + 1)
            )
        else:  # pragma: no cover - guarded by argparse choices
            raise ValueError(f"unknown family {family!r}")
    return rows


def cmd_generate(args, cfg: Config) -> int:
    lo, hi = parse_range(args.range)
    floor = 1 if args.family in ("N", "D", "gamma") else 0
    if args.family == "D":
        floor = 2
    if lo < floor:
        print(f"error: family {args.family} starts at n={floor}", file=sys.stderr)
        return 2
    rows = generate_rows(args.family, lo, hi)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "k", "value"])
        writer.writerows(rows)
        payload = buf.getvalue()
    else:
        payload = json.dumps(
            {"family": args.family, "rows": [list(r) for r in rows]},
            sort_keys=True,
            indent=2,
        )
        payload += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


# -- certification suites ----------------------------------------------------------


def _merge(property_name: str, subject: str, parts: dict[str, Certificate | bool]) -> Certificate:
    verdict = True
    witness = {}
    for name, part in parts.items():
        if isinstance(part, Certificate):
            verdict = verdict and part.verdict
            witness[name] = {"verdict": part.verdict, "witness": part.witness}
        else:
            verdict = verdict and bool(part)
            witness[name] = bool(part)
    return Certificate(property_name, subject, verdict, witness)


def run_suite_case(suite: str, n: int, cfg: Config) -> Certificate:
    """One certificate per (suite, n); sub-checks are merged into the witness."""
    if suite == "realroot":
        return certify.certify_real_rooted(
            families.minuscule_sum(n), require_nonpositive=True, subject=f"N_{n}"
        )
    if suite == "interlace":
        return certify.certify_interlacing(
            families.minuscule_sum(n),
            families.minuscule_sum(n + 1),
            subject=f"N_{n} vs N_{n + 1}",
        )
    if suite == "gamma":
        return certify.certify_gamma_positive(
            families.minuscule_sum(n), n, subject=f"N_{n}"
        )
    if suite == "identity":
        value = families.minuscule_sum(n)(1)
        expected = Fraction(n - 1) * Fraction(2) ** (2 * n - 3)
        return _merge(
            "family_identity",
            f"N_{n}",
            {
                "closed_route_equal": families.minuscule_closed(n)
                == families.minuscule_sum(n),
                "value_at_one": value == expected,
            },
        )
    if suite == "stats":
        parts: dict[str, Certificate | bool] = {}
        stats.coeff_stats(n)  # raises on falsity of the exact mean/variance
        parts["exact_mean_variance"] = True
        parts["second_derivative"] = stats.second_derivative_identity(n)
        if 3 <= n <= cfg.stats_enclosure_max_n:
            width = Fraction(1, 2**cfg.refine_width_bits)
            mu, var = stats.roots_stats(n, width)
            parts["mean_enclosure"] = stats.exact_mean(n) in mu
            parts["variance_enclosure"] = stats.exact_variance(n) in var
        return _merge("coefficient_stats", f"N_{n}", parts)
    if suite == "xlogconcave":
        poly = families.D_direct(n)
        bad = next((k for k, c in enumerate(poly.coeffs) if c < 0), None)
        parts = {"coefficients_nonnegative": bad is None}
        if n <= cfg.closed_route_max_n:
            parts["closed_route_equal"] = families.D_closed(n) == poly
            parts["coefficient_formula_equal"] = all(
                families.D_closed_coefficient(n, k) == poly[k]
                for k in range(poly.degree + 1)
            )
        return _merge("x_log_concave", f"D_{n}", parts)
    if suite == "hurwitz":
        return certify.certify_weak_hurwitz(
            families.D_direct(n),
            subject=f"D_{n}",
            numeric_max_deg=cfg.numeric_max_deg,
        )
    if suite == "tp":
        size = n
        if size > cfg.matrix_size_cap:
            raise ValueError(
                f"size {size} exceeds matrix_size_cap {cfg.matrix_size_cap}"
            )
        parts = {}
        coeff_n = families.build_matrices("coeffN", size)
        parts["coeffN_neville"] = totalpos.neville_TP(coeff_n)
        parts["coeffT_neville"] = totalpos.pf_truncation_check("minusculeT", size)
        if size <= 8:
            minors_cert = totalpos.minors_all_TP(coeff_n, budget=cfg.minor_budget)
            parts["coeffN_minors_agree"] = (
                minors_cert.verdict == parts["coeffN_neville"].verdict
            )
        weights = [
            Fraction(k * math.factorial(k), math.factorial(2 * k + 1))
            for k in range(size + 1)
        ]
        parts["multiplier_weights"] = certify.check_multiplier_nseq(
            weights, size, subject=f"k*k!/(2k+1)! up to n={size}"
        )
        families.h_poly(size)  # construction verifies the recurrence exactly
        parts["h_recurrence"] = True
        return _merge("total_positivity", f"size {size}", parts)
    if suite == "powerset":
        if n > cfg.powerset_max_n:
            raise ValueError(f"n {n} exceeds powerset_max_n {cfg.powerset_max_n}")
        checks = {}
        for label, (a, b, c, d) in {
            "weights_1111": (1, 1, 1, 1),
            "weights_2111": (2, 1, 1, 1),
            "weights_1234": (1, 2, 3, 4),
        }.items():
            checks[label] = oracles.powerset_refined_gf(n, a, b, c, d) == Fraction(
                a + b + c + d
            ) ** n
        checks["symdiff_total"] = oracles.symmetric_difference_sum(
            n
        ) == n * 2 ** max(2 * n - 1, 0)
        checks["symdiff_gf"] = (
            oracles.symmetric_difference_gf(n)
            == ExactPoly([1, 1]) ** n * 2**n
        )
        checks["family_value_match"] = (
            families.minuscule_sum(n + 1)(1) == oracles.symmetric_difference_sum(n)
        )
        return _merge("powerset_identities", f"n={n}", checks)
    raise ValueError(f"unknown suite {suite!r}")


def _case_worker(task) -> tuple[int, dict]:
    suite, n, cfg_dict = task
    cfg = Config(**cfg_dict)
    exact_core.set_degree_cap(cfg.degree_cap)
    start = time.perf_counter()
    try:
        cert = run_suite_case(suite, n, cfg)
    except MinusculeError as exc:
        cert = Certificate(
            property=f"{suite}_hard_error",
            subject=f"n={n}",
            verdict=False,
            witness={"hard_error": str(exc), "type": type(exc).__name__},
        )
    duration_ms = int(round((time.perf_counter() - start) * 1000))
    obj = cert.to_json_obj()
    obj.update({"suite": suite, "n": n, "duration_ms": duration_ms})
    return n, obj


def _run_cases(suite: str, ns: list[int], cfg: Config) -> list[dict]:
    tasks = [(suite, n, asdict(cfg)) for n in ns]
    if cfg.jobs > 1 and len(tasks) > 1:
        with Pool(processes=cfg.jobs) as pool:
            results = pool.map(_case_worker, tasks, chunksize=1)
    else:
        results = [_case_worker(t) for t in tasks]
    return [obj for _, obj in sorted(results, key=lambda pair: pair[0])]


def _write_certificates(path: str | None, command: list[str], objs: list[dict]) -> None:
    lines = [
        json.dumps(
            {
                "_header": True,
                "created_utc": datetime.now(timezone.utc).isoformat(),
                "command": command,
                "version": __version__,
            },
            sort_keys=True,
        )
    ]
    lines.extend(json.dumps(obj, sort_keys=True) for obj in objs)
    payload = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _summarize(objs: list[dict]) -> int:
    failures = [o for o in objs if o["verdict"] != "pass"]
    total = len(objs)
    print(f"{total - len(failures)}/{total} certificates passed", file=sys.stderr)
    for obj in failures:
        print(
            f"FAIL {obj['suite']} n={obj['n']}: {json.dumps(obj['witness'])[:400]}",
            file=sys.stderr,
        )
    return 1 if failures else 0


def cmd_certify(args, cfg: Config) -> int:
    lo, hi = parse_range(args.range)
    if lo < SUITE_MIN_N[args.suite]:
        print(
            f"error: suite {args.suite} starts at n={SUITE_MIN_N[args.suite]}",
            file=sys.stderr,
        )
        return 2
    if args.jobs is not None:
        cfg = replace(cfg, jobs=args.jobs)
    exact_core.set_degree_cap(cfg.degree_cap)
    objs = _run_cases(args.suite, list(range(lo, hi + 1)), cfg)
    _write_certificates(args.output, args.invocation, objs)
    return _summarize(objs)


def cmd_scan(args, cfg: Config) -> int:
    """Open-ended stability scan of the difference family under a wall-clock
    budget; equivalent to `certify hurwitz` with an unbounded range."""
    if args.jobs is not None:
        cfg = replace(cfg, jobs=args.jobs)
    exact_core.set_degree_cap(cfg.degree_cap)
    deadline = time.monotonic() + args.budget_seconds
    objs: list[dict] = []
    n = args.start
    while time.monotonic() < deadline and (args.max_n is None or n <= args.max_n):
        _, obj = _case_worker(("hurwitz", n, asdict(cfg)))
        objs.append(obj)
        n += 1
    _write_certificates(args.output, args.invocation, objs)
    print(f"scanned n={args.start}..{n - 1}", file=sys.stderr)
    return _summarize(objs)


# -- report ----------------------------------------------------------------------


def _load_certificates(path: str) -> tuple[dict | None, list[dict]]:
    header = None
    certs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if obj.get("_header"):
                header = obj
            else:
                if "suite" not in obj or "verdict" not in obj:
                    raise ValueError(f"line {line_no}: not a certificate object")
                certs.append(obj)
    return header, certs


def _render_markdown(header: dict | None, certs: list[dict]) -> str:
    out = ["# Certification report", ""]
    if header:
        out.append(f"- generated: {header.get('created_utc', 'unknown')}")
        out.append(f"- command: `{' '.join(header.get('command', []))}`")
        out.append("")
    if not certs:
        out.append("No certificates.")
        return "\n".join(out) + "\n"
    suites: dict[str, list[dict]] = {}
    for cert in certs:
        suites.setdefault(cert["suite"], []).append(cert)
    out.append("| suite | cases | pass | fail | n range | total ms |")
    out.append("|-------|-------|------|------|---------|----------|")
    for suite in sorted(suites):
        rows = suites[suite]
        ns = [r["n"] for r in rows]
        passed = sum(1 for r in rows if r["verdict"] == "pass")
        total_ms = sum(r.get("duration_ms", 0) for r in rows)
        out.append(
            f"| {suite} | {len(rows)} | {passed} | {len(rows) - passed} "
            f"| {min(ns)}..{max(ns)} | {total_ms} |"
        )
    out.append("")
    failures = [c for c in certs if c["verdict"] != "pass"]
    if failures:
        out.append("## First failures per suite")
        seen = set()
        for cert in failures:
            if cert["suite"] in seen:
                continue
            seen.add(cert["suite"])
            out.append("")
            out.append(f"### {cert['suite']} at n={cert['n']}")
            out.append("```json")
            out.append(json.dumps(cert["witness"], indent=2, sort_keys=True)[:2000])
            out.append("```")
    else:
        out.append("All certificates passed.")
    return "\n".join(out) + "\n"


def _render_figures(certs: list[dict], outdir: str) -> list[str]:
    """Verdict heatmap and per-suite timing chart, plus a CSV summary next to
    them; returns the written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    os.makedirs(outdir, exist_ok=True)
    written = []

    csv_path = os.path.join(outdir, "summary.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "n", "verdict", "duration_ms"])
        for cert in certs:
            writer.writerow(
                [cert["suite"], cert["n"], cert["verdict"], cert.get("duration_ms", 0)]
            )
    written.append(csv_path)

    suites = sorted({c["suite"] for c in certs})
    ns = sorted({c["n"] for c in certs})
    if suites and ns:
        grid = np.full((len(suites), len(ns)), np.nan)
        for cert in certs:
            i = suites.index(cert["suite"])
            j = ns.index(cert["n"])
            grid[i, j] = 1.0 if cert["verdict"] == "pass" else 0.0
        fig, ax = plt.subplots(
            figsize=(max(4.0, 0.18 * len(ns) + 2), max(2.5, 0.5 * len(suites) + 1))
        )
        ax.imshow(grid, aspect="auto", cmap="RdYlGn", vmin=0.0, vmax=1.0)
        ax.set_yticks(range(len(suites)), suites)
        step = max(1, len(ns) // 20)
        ax.set_xticks(range(0, len(ns), step), [str(ns[j]) for j in range(0, len(ns), step)])
        ax.set_xlabel("n")
        ax.set_title("certificate verdicts (green = pass)")
        fig.tight_layout()
        verdict_path = os.path.join(outdir, "verdicts.png")
        fig.savefig(verdict_path, dpi=150)
        plt.close(fig)
        written.append(verdict_path)

        totals = [
            sum(c.get("duration_ms", 0) for c in certs if c["suite"] == s)
            for s in suites
        ]
        fig, ax = plt.subplots(figsize=(max(4.0, 0.8 * len(suites) + 2), 3.0))
        ax.bar(suites, totals)
        ax.set_ylabel("total ms")
        ax.set_title("suite timing")
        plt.setp(ax.get_xticklabels(), rotation=30, ha="right")
        fig.tight_layout()
        timing_path = os.path.join(outdir, "durations.png")
        fig.savefig(timing_path, dpi=150)
        plt.close(fig)
        written.append(timing_path)
    return written


def cmd_report(args, cfg: Config) -> int:
    try:
        header, certs = _load_certificates(args.certfile)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: cannot read certificates: {exc}", file=sys.stderr)
        return 2
    markdown = _render_markdown(header, certs)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(markdown)
    else:
        sys.stdout.write(markdown)
    if args.figures:
        for path in _render_figures(certs, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return 0


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minuscule",
        description="Exact construction and certification of the minuscule polynomial family.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON config file (overrides $MINUSCULE_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write coefficient tables")
    p_gen.add_argument("family", choices=GENERATE_FAMILIES)
    p_gen.add_argument("range", help="n range, e.g. 2..6 or 4")
    p_gen.add_argument("--format", choices=("csv", "json"), default="csv")
    p_gen.add_argument("--output", help="output file (default: stdout)")
    p_gen.set_defaults(func=cmd_generate)

    p_cert = sub.add_parser("certify", help="run a certification suite over a range")
    p_cert.add_argument("suite", choices=sorted(SUITE_MIN_N))
    p_cert.add_argument("range", help="n range, e.g. 2..50")
    p_cert.add_argument("--jobs", type=int, help="worker processes")
    p_cert.add_argument("--output", help="certificate JSONL file (default: stdout)")
    p_cert.set_defaults(func=cmd_certify)

    p_rep = sub.add_parser("report", help="summarize a certificate file")
    p_rep.add_argument("certfile")
    p_rep.add_argument("--output", help="markdown output file (default: stdout)")
    p_rep.add_argument(
        "--figures",
        metavar="DIR",
        help="render verdict/timing figures and a CSV summary into DIR",
    )
    p_rep.set_defaults(func=cmd_report)

    p_scan = sub.add_parser(
        "scan", help="open-ended stability scan under a wall-clock budget"
    )
    p_scan.add_argument("--start", type=int, default=2)
    p_scan.add_argument("--budget-seconds", type=float, default=60.0)
    p_scan.add_argument("--max-n", type=int, default=None)
    p_scan.add_argument("--jobs", type=int, help="worker processes")
    p_scan.add_argument("--output", help="certificate JSONL file (default: stdout)")
    p_scan.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.invocation = list(argv) if argv is not None else sys.argv[1:]
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
