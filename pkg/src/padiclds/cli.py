"""Command-line front end.

Subcommands: classify, generate, discrepancy, paircorr, verify-tables,
search, bridge.  Exact fractions are the primary output representation
(printed as num/den, always in lowest terms); decimal columns are convenience
approximations and carry an ``_approx`` suffix.  Exit codes: 0 success,
1 usage/parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .catalog import (
    SearchConstraints,
    dickson_entries,
    exhaustive_search,
    match_against_table,
    verification_primes,
    verify_entry,
)
from .discrepancy import (
    meijer_bound_check,
    padic_discrepancy,
    real_extreme_discrepancy,
)
from .padic import check_prime, monna_of_int
from .paircorr import ppc_sweep
from .permcheck import classify_low_discrepancy, classify_via_reduction, noebauer_mod_p2
from .polynomials import parse_poly, render, unit_derivative_poly, unit_value_poly
from .sequence import SequenceSpec

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _frac(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"invalid rational {text!r} (expected forms like 2 or 1/3)") from None


def parse_schedule(text: str, p: int) -> list[int]:
    """N-schedule forms: "a..b" (inclusive), "a,b,c" (list), "pk:k1..k2" (powers p^k)."""
    text = text.strip()
    if text.startswith("pk:"):
        body = text[3:]
        if ".." not in body:
            raise ValueError('power schedule must look like "pk:k1..k2"')
        lo, hi = body.split("..", 1)
        k1, k2 = int(lo), int(hi)
        if k1 < 0 or k2 < k1:
            raise ValueError("power schedule bounds must satisfy 0 <= k1 <= k2")
        return [p ** k for k in range(k1, k2 + 1)]
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = int(lo), int(hi)
        if a < 1 or b < a:
            raise ValueError("range schedule bounds must satisfy 1 <= a <= b")
        return list(range(a, b + 1))
    out = [int(part) for part in text.split(",") if part.strip()]
    if not out or any(n < 1 for n in out):
        raise ValueError("schedule entries must be integers >= 1")
    return out


def _sequence_spec(args) -> SequenceSpec:
    if args.linear is not None and args.poly is not None:
        raise ValueError("give either a polynomial or --linear, not both")
    if args.linear is not None:
        a, b = args.linear
        return SequenceSpec.linear(a, b, args.p)
    if args.poly is None:
        raise ValueError("a polynomial expression or --linear a b is required")
    return SequenceSpec.polynomial(parse_poly(args.poly), args.p)


def _out_stream(args):
    if args.out and args.out != "-":
        return open(args.out, "w", newline="")
    return sys.stdout


def _emit_rows(args, header: list[str], rows: list[list], command: str) -> None:
    stream = _out_stream(args)
    close = stream is not sys.stdout
    try:
        if args.format == "json":
            payload = {
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "rows": [dict(zip(header, row)) for row in rows],
            }
            json.dump(payload, stream, indent=2)
            stream.write("\n")
        else:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    finally:
        if close:
            stream.close()


def _emit_json(args, payload: dict) -> None:
    stream = _out_stream(args)
    close = stream is not sys.stdout
    try:
        json.dump(payload, stream, indent=2)
        stream.write("\n")
    finally:
        if close:
            stream.close()


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_classify(args) -> int:
    p = args.p
    f = parse_poly(args.poly)
    brute = classify_low_discrepancy(f, p)
    noeb = noebauer_mod_p2(f, p)
    reduction = None
    divergence = None
    if p >= 3:
        formula = classify_via_reduction(f, p)
        reduction = {
            "value_poly": render(unit_value_poly(f, p)),
            "derivative_poly": render(unit_derivative_poly(f, p)),
            "verdict": formula.as_dict(),
        }
        divergence = formula.low_discrepancy != brute.low_discrepancy
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "p": p,
        "polynomial": render(f),
        "coefficients": list(f.coeffs),
        "brute_force": brute.as_dict(),
        "noebauer": noeb.as_dict(),
        "unit_reduction": reduction,
        "divergence": divergence,
    }
    if args.format == "csv":
        header = [
            "p", "polynomial", "low_discrepancy", "perm_mod_p", "perm_mod_p2",
            "derivative_root", "missing_level", "missing_residue",
            "formula_low_discrepancy", "divergence",
        ]
        missing = brute.missing_residue or (None, None)
        row = [
            p, render(f), brute.low_discrepancy, brute.perm_mod_p, brute.perm_mod_p2,
            brute.derivative_root, missing[0], missing[1],
            None if reduction is None else reduction["verdict"]["low_discrepancy"],
            divergence,
        ]
        _emit_rows(args, header, [row], "classify")
    else:
        _emit_json(args, payload)
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = _sequence_spec(args)
    N = args.n
    if N < 1:
        raise ValueError("--n must be >= 1")
    if args.mode == "digits":
        if args.K is None:
            raise ValueError("--K is required for digit output")
        values = spec.padic_values(N, args.K)
        header = ["n"] + [f"digit_{i}" for i in range(args.K)]
        rows = [[n + 1, *values[n].digits] for n in range(N)]
    elif args.mode == "monna":
        ints = spec.integer_values(N)
        if args.K is None and any(v < 0 for v in ints):
            raise ValueError("negative values have no finite expansion; pass --K")
        header = ["n", "monna"]
        rows = [[n + 1, _frac(monna_of_int(v, spec.p, args.K))]
                for n, v in enumerate(ints)]
    else:
        header = ["n", "value"]
        rows = [[n + 1, v] for n, v in enumerate(spec.integer_values(N))]
    _emit_rows(args, header, rows, "generate")
    return EXIT_OK


def cmd_discrepancy(args) -> int:
    spec = _sequence_spec(args)
    schedule = parse_schedule(args.N, args.p)
    values = spec.integer_values(max(schedule))
    header = ["N", "D_N", "N_times_D_N", "witness_level", "witness_residue",
              "separation_depth", "D_N_approx"]
    rows = []
    for N in schedule:
        res = padic_discrepancy(values[:N], args.p)
        rows.append([
            N, _frac(res.value), _frac(res.value * N),
            res.witness_level,
            "" if res.witness_residue is None else res.witness_residue,
            res.separation_depth,
            float(res.value),
        ])
    _emit_rows(args, header, rows, "discrepancy")
    return EXIT_OK


def cmd_paircorr(args) -> int:
    spec = _sequence_spec(args)
    schedule = parse_schedule(args.N, args.p)
    alpha = parse_fraction(args.alpha)
    s_list = [parse_fraction(s) for s in args.s.split(",")]
    values = spec.integer_values(max(schedule))
    rows_raw = ppc_sweep(values, args.p, alpha, s_list, schedule)
    header = ["N", "s", "F", "F_approx"]
    rows = [[N, _frac(s), _frac(F), float(F)] for N, s, F in rows_raw]
    _emit_rows(args, header, rows, "paircorr")
    return EXIT_OK


def cmd_verify_tables(args) -> int:
    which = args.which
    entries = []
    for entry in dickson_entries():
        if which == "dickson" and entry.source_table != 2:
            continue
        if which == "lds" and entry.source_table != 1:
            continue
        if which == "derivatives":
            if entry.source_table != 2:
                continue
            if entry.expected_derivative_roots is None and entry.derivative_root_exists is None:
                continue
        entries.append(entry)

    if args.dump:
        _emit_json(args, {
            "schema_version": SCHEMA_VERSION,
            "command": "verify-tables",
            "dump": [e.as_dict() for e in entries],
        })
        return EXIT_OK

    failures: list[str] = []
    report_rows: list[list] = []
    for entry in entries:
        if args.p is not None:
            primes = (args.p,) if entry.matches_prime(args.p) else ()
        else:
            primes = verification_primes(entry)
        for q in primes:
            ver = verify_entry(entry, q, check_lds=(which == "lds"))
            status = "ok" if ver.ok else "FAIL"
            if not entry.asserted:
                status = "info"
            roots = sorted({r for res in ver.results for r in res.derivative_roots})
            report_rows.append([
                entry.name, entry.source_table, q, entry.sign_variant or "",
                len(ver.results), ",".join(map(str, roots)), status,
                "; ".join(ver.failures + ver.notes),
            ])
            failures.extend(ver.failures)
    header = ["entry", "table", "p", "signs", "parameters", "derivative_roots",
              "status", "detail"]
    _emit_rows(args, header, report_rows, "verify-tables")
    return EXIT_VERIFICATION if failures else EXIT_OK


def cmd_search(args) -> int:
    constraints = SearchConstraints(
        monic=args.monic,
        zero_constant=args.zero_constant,
        nonzero_linear=args.nonzero_linear,
    )
    found = exhaustive_search(
        args.p, args.degree, constraints, workers=args.workers
    )
    report = match_against_table(found, args.p)
    category = report.category_of()
    header = ["degree", "polynomial", "category"]
    rows = [[f.degree, render(f), category[f.coeffs]] for f in found]
    _emit_rows(args, header, rows, "search")
    return EXIT_VERIFICATION if report.unexplained else EXIT_OK


def cmd_bridge(args) -> int:
    spec = _sequence_spec(args)
    schedule = parse_schedule(args.N, args.p)
    values = spec.integer_values(max(schedule))
    if args.K is None and any(v < 0 for v in values):
        raise ValueError("negative values have no finite expansion; pass --K")
    header = ["N", "delta_N", "d_N", "upper", "holds"]
    rows = []
    for N in schedule:
        prefix = values[:N]
        delta = padic_discrepancy(prefix, args.p).value
        points = [monna_of_int(v, args.p, args.K) for v in prefix]
        d = real_extreme_discrepancy(points)
        holds, upper = meijer_bound_check(delta, d, args.p)
        rows.append([
            N, _frac(delta), _frac(d), repr(upper),
            "indeterminate" if holds is None else str(holds).lower(),
        ])
    _emit_rows(args, header, rows, "bridge")
    return EXIT_OK


# --------------------------------------------------------------------------
# Parser assembly
# --------------------------------------------------------------------------

def _add_common(sp, poly_arg: bool = True, linear: bool = True,
                fmt_default: str = "csv") -> None:
    sp.add_argument("--p", type=int, required=True, help="prime base")
    if poly_arg:
        sp.add_argument("poly", nargs="?", default=None,
                        help='polynomial, e.g. "x^3+x" or "[1,0,1,0]"')
    if linear:
        sp.add_argument("--linear", nargs=2, type=int, metavar=("A", "B"),
                        help="linear sequence n*A + B instead of a polynomial")
    sp.add_argument("--format", choices=("json", "csv"), default=fmt_default,
                    help=f"output format (default {fmt_default})")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.add_argument("--workers", type=int, default=1,
                    help="worker processes (honored by search; others are single-threaded)")


def build_parser() -> _Parser:
    parser = _Parser(prog="padiclds", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser(
        "classify", help="classify a polynomial at a prime",
        description="CSV columns: p, polynomial, low_discrepancy, perm_mod_p, "
                    "perm_mod_p2, derivative_root, missing_level, missing_residue, "
                    "formula_low_discrepancy, divergence.",
    )
    _add_common(sp, linear=False, fmt_default="json")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser(
        "generate", help="emit sequence values",
        description="CSV columns: n plus the payload -- digit_0..digit_{K-1} "
                    "(mode digits), monna (exact fraction, mode monna), or value "
                    "(mode integers).",
    )
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True, help="number of terms")
    sp.add_argument("--K", type=int, default=None, help="digit precision")
    sp.add_argument("--mode", choices=("digits", "monna", "integers"),
                    default="integers")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser(
        "discrepancy", help="exact p-adic discrepancy over a schedule",
        description="CSV columns: N, D_N (exact fraction), N_times_D_N, "
                    "witness_level (ball depth or 'tail'), witness_residue, "
                    "separation_depth, D_N_approx (decimal convenience).",
    )
    _add_common(sp)
    sp.add_argument("--N", required=True,
                    help='schedule: "a..b", "a,b,c", or "pk:k1..k2" (powers of p)')
    sp.set_defaults(func=cmd_discrepancy)

    sp = sub.add_parser(
        "paircorr", help="pair-correlation statistic sweep",
        description="CSV columns: N, s (fraction), F (exact fraction), "
                    "F_approx (decimal convenience).",
    )
    _add_common(sp)
    sp.add_argument("--N", required=True, help="N schedule")
    sp.add_argument("--alpha", required=True, help='exponent as a rational "u/v"')
    sp.add_argument("--s", required=True, help="comma-separated list of rational radii")
    sp.set_defaults(func=cmd_paircorr)

    sp = sub.add_parser(
        "verify-tables", help="re-derive the catalog tables",
        description="CSV columns: entry, table, p, signs, parameters, "
                    "derivative_roots, status (ok/FAIL/info), detail. "
                    "Exits 2 when any asserted row fails.",
    )
    sp.add_argument("--which", choices=("dickson", "derivatives", "lds"), required=True)
    sp.add_argument("--p", type=int, default=None, help="restrict to one prime")
    sp.add_argument("--dump", action="store_true", help="dump table data as JSON")
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.add_argument("--out", default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_verify_tables)

    sp = sub.add_parser(
        "search", help="exhaustive low-discrepancy generator search",
        description="CSV columns: degree, polynomial, category (table1 / "
                    "prop_family / affine / linear / unexplained). "
                    "Exits 2 when unexplained generators exist.",
    )
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True, help="maximum degree")
    sp.add_argument("--monic", action="store_true")
    sp.add_argument("--zero-constant", dest="zero_constant", action="store_true")
    sp.add_argument("--nonzero-linear", dest="nonzero_linear", action="store_true")
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.add_argument("--out", default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser(
        "bridge", help="p-adic vs real discrepancy transfer table",
        description="CSV columns: N, delta_N (p-adic, exact), d_N (real, exact), "
                    "upper (float bound), holds (true/false/indeterminate).",
    )
    _add_common(sp)
    sp.add_argument("--N", required=True, help="N schedule")
    sp.add_argument("--K", type=int, default=None,
                    help="truncation precision for the digit-reversal map")
    sp.set_defaults(func=cmd_bridge)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "p", None) is not None:
            check_prime(args.p)
        return args.func(args)
    except ValueError as exc:
        print(f"padiclds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
