"""Command-line front end for the growth workbench.

Subcommands map one-to-one onto the library modules: growth tables,
Alexander polynomials, spectral classification, witness certificates,
periodic-class scans, and kernel rewriting.  Outputs are deterministic
(TSV for tables, JSON with sorted keys for structured results) so runs
diff cleanly; errors become a single stderr record `ERR <code>
<message>` with exit status 2 for bad input and 3 for an exhausted
search budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from growthlab import VERSION_STRING
from growthlab.engines import GroupSpecError, UnknownGeneratorError, UnsupportedFamilyError, build_engine
from growthlab.growth import DEFAULT_BUDGET, GrowthError, ball_sizes
from growthlab.laurent import (
    LaurentError,
    NOT_FG,
    abelianize,
    alexander_polynomial,
    fg_kernel_obstruction,
    monic_both_ends,
    rs_rewrite,
)
from growthlab.spectra import (
    EXPONENTIAL,
    LOG_BASE,
    SpectraError,
    VIRTUALLY_NILPOTENT,
    IntPoly,
    all_roots_of_unity,
    char_poly,
    mahler_gap_threshold,
    spectral_radius,
)
from growthlab.witness import WitnessError, analyze, pcc_scan
from growthlab.words import Word, WordSyntaxError


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse validation failures must still produce the ERR record
    def error(self, message):
        print(f"ERR 2 {message}", file=sys.stderr)
        raise SystemExit(2)


def _load_engine(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(2, f"cannot read group file: {exc}") from None
    return build_engine(text)


def _parse_words(text: str, sep: str) -> list:
    words = []
    for part in text.split(sep):
        part = part.strip()
        if part:
            words.append(Word.parse(part))
    if not words:
        raise CliError(2, "no words given")
    return words


def _parse_matrix(text: str):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(2, f"bad matrix literal: {exc}") from None
    if (not isinstance(rows, list) or not rows
            or not all(isinstance(r, list) and len(r) == len(rows) for r in rows)):
        raise CliError(2, "matrix must be a square list of row lists")
    for r in rows:
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise CliError(2, "matrix entries must be integers")
    return [list(r) for r in rows]


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_growth(args) -> int:
    engine = _load_engine(args.group)
    words = _parse_words(args.gens, ",")
    try:
        elems = [engine.evaluate_word(w) for w in words]
    except UnknownGeneratorError as exc:
        raise CliError(2, f"unknown generator {exc}") from None
    table = ball_sizes(engine, elems, args.radius, budget=args.budget,
                       threads=args.threads)
    _emit(table.to_tsv(), args.out)
    if table.truncated:
        raise CliError(3, f"budget exhausted after radius {table.radius}")
    return 0


def _cmd_alexander(args) -> int:
    relators = [p.strip() for p in args.relators.split(";") if p.strip()]
    if not relators:
        raise CliError(2, "no relators given")
    delta = alexander_polynomial(relators)
    not_fg = fg_kernel_obstruction(delta) == NOT_FG
    line = (f"Delta = {delta.format()}; "
            f"monic_both_ends={str(monic_both_ends(delta)).lower()}; "
            f"degree={delta.degree}; "
            f"not_fg={str(not_fg).lower()}\n")
    _emit(line, args.out)
    return 0


def _cmd_spectra(args) -> int:
    if (args.matrix is None) == (args.poly is None):
        raise CliError(2, "give exactly one of --matrix or --poly")
    if args.matrix is not None:
        p = char_poly(_parse_matrix(args.matrix))
    else:
        p = IntPoly.parse(args.poly)
    if p.degree < 1:
        raise CliError(2, "polynomial must have degree at least 1")
    if not p.is_monic():
        raise CliError(2, "polynomial must be monic")
    unity = all_roots_of_unity(p)
    payload = {
        "char_poly": p.format(),
        "roots_of_unity": unity,
        "spectral_radius": spectral_radius(p),
        "threshold": mahler_gap_threshold(p.degree),
        "classification": VIRTUALLY_NILPOTENT if unity else EXPONENTIAL,
        "log_base": LOG_BASE,
    }
    _emit(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_witness(args) -> int:
    engine = _load_engine(args.group)
    words = _parse_words(args.gens, ",")
    try:
        cert = analyze(engine, words, args.u, args.d, threads=args.threads)
    except UnknownGeneratorError as exc:
        raise CliError(2, f"unknown generator {exc}") from None
    payload = cert.to_json()
    if args.json:
        text = json.dumps(payload, sort_keys=True) + "\n"
    else:
        text = "".join(f"{k} = {payload[k]}\n" for k in payload)
    _emit(text, args.out)
    return 0


def _cmd_pcc(args) -> int:
    engine = _load_engine(args.group)
    result = pcc_scan(engine, args.max_period, args.max_length)
    payload = {
        "certificate": None if result.certificate is None
        else result.certificate.to_json(),
        "exact": result.exact,
        "note": result.note,
    }
    _emit(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_rewrite(args) -> int:
    rewritten = rs_rewrite(args.relator)
    poly = abelianize(rewritten)
    text = f"rewritten = {rewritten.format()}\nabelianized = {poly.format()}\n"
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# wiring


def _add_common_out(sub):
    sub.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="growthlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=VERSION_STRING)
    parser.add_argument("--seed", type=int, default=0,
                        help="sampling seed for test harnesses; core "
                             "computations ignore it")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("growth", help="ball-size table for a generating set")
    p.add_argument("--group", required=True, help="group description file (JSON)")
    p.add_argument("--gens", required=True, help="comma-separated generator words")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="visited-element cap (exit 3 when exhausted)")
    p.add_argument("--threads", type=int, default=1)
    _add_common_out(p)
    p.set_defaults(func=_cmd_growth)

    p = subs.add_parser("alexander", help="Alexander polynomial of t-balanced relators")
    p.add_argument("--relators", required=True,
                   help="semicolon-separated relator words in t and x")
    _add_common_out(p)
    p.set_defaults(func=_cmd_alexander)

    p = subs.add_parser("spectra", help="spectral classification of a matrix or polynomial")
    p.add_argument("--matrix", default=None, help='integer matrix, e.g. "[[2,1],[1,1]]"')
    p.add_argument("--poly", default=None, help='monic integer polynomial, e.g. "t^2-3t+1"')
    _add_common_out(p)
    p.set_defaults(func=_cmd_spectra)

    p = subs.add_parser("witness", help="growth certificate search for a split extension")
    p.add_argument("--group", required=True, help="group description file (JSON)")
    p.add_argument("--gens", required=True, help="comma-separated generator words")
    p.add_argument("--u", type=float, required=True,
                   help="uniform growth hypothesis for kernel subgroups")
    p.add_argument("--d", type=int, required=True,
                   help="abelian small-subgroup cap")
    p.add_argument("--json", action="store_true", help="emit the certificate as JSON")
    p.add_argument("--threads", type=int, default=1)
    _add_common_out(p)
    p.set_defaults(func=_cmd_witness)

    p = subs.add_parser("pcc", help="periodic conjugacy class scan")
    p.add_argument("--group", required=True, help="group description file (JSON)")
    p.add_argument("--max-period", type=int, required=True)
    p.add_argument("--max-length", type=int, required=True)
    _add_common_out(p)
    p.set_defaults(func=_cmd_pcc)

    p = subs.add_parser("rewrite", help="kernel rewriting of a single relator")
    p.add_argument("--relator", required=True, help="relator word in t and x")
    _add_common_out(p)
    p.set_defaults(func=_cmd_rewrite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("ERR 2 thread count must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ERR {exc.code} {exc}", file=sys.stderr)
        return exc.code
    except (GroupSpecError, WordSyntaxError, UnknownGeneratorError,
            UnsupportedFamilyError, GrowthError, LaurentError, SpectraError,
            WitnessError) as exc:
        print(f"ERR 2 {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
