"""Command-line entry point: ``dickedepth <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 parse/validation error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .certify import NOISE_MODELS, REPORT_CSV_COLUMNS, certify
from .errors import DomainError, NumericalError, ParseError, ValidationError
from .figures import FIGURES, emit_figure
from .mixture import BRACKET_CSV_COLUMNS, DickeWindow, qx_bracket
from .rdm import RDM_CSV_COLUMNS, rdm_scan_row
from .records import FORMATS, parse_record
from .schmidt import THRESHOLD_CSV_COLUMNS, threshold_table

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _write_csv(out, columns, rows):
    writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})


def _target(text, N):
    text = text.strip()
    if text.lstrip("-").isdigit():
        return int(text)
    return DickeWindow.parse(N, text).X


def cmd_threshold(args, out):
    rs = None if args.r is None else [args.r]
    _write_csv(out, THRESHOLD_CSV_COLUMNS, threshold_table(args.N, rs))


def cmd_qx(args, out):
    window = DickeWindow.parse(args.N, args.X)
    bracket = qx_bracket(args.N, window, restarts=args.restarts, tol=args.tol, seed=args.seed, gap=args.gap)
    if not bracket.lower <= bracket.upper:
        raise NumericalError(f"bracket inverted: {bracket.lower} > {bracket.upper}")
    _write_csv(out, BRACKET_CSV_COLUMNS, [bracket.csv_row()])
    if args.witness:
        with open(args.witness, "w") as fh:
            fh.write(bracket.witness_state.to_json() + "\n")


def cmd_rdm(args, out):
    row = rdm_scan_row(args.N, args.r, args.pop)
    if not math.isfinite(row["min_eig_pt"]):
        raise NumericalError("non-finite eigenvalue")
    _write_csv(out, RDM_CSV_COLUMNS, [row])


def cmd_certify(args, out):
    if args.input == "-":
        record = parse_record(sys.stdin, args.format)
    else:
        with open(args.input) as fh:
            record = parse_record(fh, args.format)
    if args.N is not None and args.N != record.N:
        raise ValidationError(f"--N {args.N} disagrees with the record header N={record.N}")
    report = certify(record, _target(args.target, record.N), args.confidence, args.noise)
    _write_csv(out, REPORT_CSV_COLUMNS, [report.csv_row()])


def cmd_figure(args, out):
    emit_figure(args.which, args.n_max, out, n_min=args.n_min)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dickedepth", description="Entanglement-depth thresholds for Dicke states.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--output", "-o", default="-", help="output file (default: stdout)")
        p.set_defaults(func=func)
        return p

    p = add("threshold", cmd_threshold, "exact p_{N,r} table")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, help="single excitation number (default: all)")

    p = add("qx", cmd_qx, "bracket the window threshold q_X")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--X", required=True, help="window, e.g. 2,3,4 or 2-4")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gap", type=float, default=1e-6, help="target width of the bracket")
    p.add_argument("--witness", help="write the best product state as JSON")

    p = add("rdm", cmd_rdm, "2-RDM of a white-noise Dicke state")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--pop", type=_fraction, required=True, help="population n_r, e.g. 0.6 or 3/5")

    p = add("certify", cmd_certify, "certify depth N from a measurement record")
    p.add_argument("--input", required=True, help="record file, '-' for stdin")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--N", type=int, default=None, help="expected particle number")
    p.add_argument("--target", required=True, help="r, or a window such as 49,50,51")
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--noise", choices=NOISE_MODELS, default="arbitrary")

    p = add("figure", cmd_figure, "emit figure data as CSV")
    p.add_argument("--which", choices=FIGURES, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=None)
    return parser


@contextlib.contextmanager
def _open_output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        with _open_output(args.output) as out:
            args.func(args, out)
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
