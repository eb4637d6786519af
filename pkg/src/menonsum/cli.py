"""Command-line front end.

Exit status: 0 success, 1 verification mismatch, 2 usage error, 3 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from .characters import DEFAULT_GROUP_CAP, character_from_index, character_group
from .errors import DomainError, ResourceError
from .menon import DEFAULT_WORK_CAP, MODES, menon, menon_grouped_batch
from .verify import ALL_PAIRS, run_verification

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

INDEX_HELP = """\
Character indices are mixed-radix integers over the local exponent digits.
The unit group mod p^m has one generator (the smallest primitive root; 3 mod 4;
1 mod 2) except for 2^m with m >= 3, which uses -1 and 5. A character is fixed
by the exponent it assigns to each generator. Digits are ordered by prime,
ascending, with the exponent on -1 before the one on 5, and the first digit is
the most significant. Index 0 is the trivial character.
Example: mod 12 = 4 * 3, index 2*e4 + e3, so index 2 is nontrivial mod 4 and
trivial mod 3."""


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _int_list(conv):
    def parse(text: str) -> list[int]:
        items = [t for t in text.replace(" ", "").split(",") if t]
        if not items:
            raise argparse.ArgumentTypeError("empty list")
        return [conv(t) for t in items]
    return parse


def _pair_list(text: str) -> list[tuple[str, str]]:
    pairs = []
    for item in text.split(","):
        a, sep, b = item.strip().partition(":")
        if not sep or a not in MODES or b not in MODES or a == b:
            raise argparse.ArgumentTypeError(
                f"bad mode pair {item!r}; use e.g. grouped:closed with modes {', '.join(MODES)}")
        pairs.append((a, b))
    return pairs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="menonsum",
        description="Dirichlet characters and the twisted Menon gcd sum, in exact arithmetic.",
        epilog=INDEX_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("characters", help="list the characters mod n",
                       epilog=INDEX_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--modulus", type=_positive_int, required=True)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("eval", help="evaluate the sum for one character, print JSON",
                       epilog=INDEX_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--modulus", type=_positive_int, required=True)
    p.add_argument("--char-index", type=_nonneg_int, default=0)
    p.add_argument("--k", type=_nonneg_int, default=0)
    p.add_argument("--mode", choices=MODES, default="closed")
    p.add_argument("--work-cap", type=_positive_int, default=DEFAULT_WORK_CAP,
                   help="step budget for naive mode (default %(default)s)")

    p = sub.add_parser("verify", help="cross-check evaluation modes over all n <= max-n")
    p.add_argument("--max-n", type=_positive_int, required=True)
    p.add_argument("--k-list", type=_int_list(_nonneg_int), default=[0, 1, 2])
    p.add_argument("--pairs", type=_pair_list, default=list(ALL_PAIRS),
                   help="comma-separated mode pairs like grouped:closed (default: all pairs)")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--work-cap", type=_positive_int, default=DEFAULT_WORK_CAP)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("table", help="values for every character of each modulus")
    p.add_argument("--n-list", type=_int_list(_positive_int), required=True)
    p.add_argument("--k", type=_nonneg_int, default=0)
    p.add_argument("--mode", choices=MODES, default="closed")
    p.add_argument("--work-cap", type=_positive_int, default=DEFAULT_WORK_CAP)
    p.add_argument("--format", choices=("table", "json", "csv"), default="csv")
    return parser


def _print_rows(header: Sequence[str], rows: list[list], fmt: str, out) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(dict(zip(header, row))) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        for r in cells:
            out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def cmd_characters(args, out) -> int:
    rows = []
    for chi in character_group(args.modulus, DEFAULT_GROUP_CAP):
        digits = list(chi.digits)
        if args.format != "json":
            digits = " ".join(map(str, digits)) or "-"
        rows.append([chi.index, digits, chi.order, chi.conductor])
    _print_rows(["index", "digits", "order", "conductor"], rows, args.format, out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    chi = character_from_index(args.modulus, args.char_index)
    result = menon(chi, args.k, args.mode, args.work_cap)
    out.write(json.dumps(result.as_dict()) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_verification(args.max_n, args.k_list, args.pairs,
                              parallel=args.parallel, work_cap=args.work_cap)
    if args.format == "json":
        out.write(json.dumps(report.as_dict()) + "\n")
    else:
        pairs = ", ".join(f"{a}:{b}" for a, b in report.pairs)
        out.write(f"n <= {report.max_n}, k in {report.k_list}, pairs {pairs}\n")
        out.write(f"cases run: {report.cases_run}\n")
        out.write(f"mismatches: {len(report.mismatches)}\n")
        out.write(f"elapsed: {report.elapsed:.2f}s\n")
    if report.mismatches:
        m = report.mismatches[0]
        print(f"first counterexample: n={m.n} char_index={m.char_index} k={m.k} "
              f"{m.mode_a}={m.value_a} {m.mode_b}={m.value_b}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_table(args, out) -> int:
    rows = []
    for n in args.n_list:
        chars = character_group(n)
        if args.mode == "grouped":
            results = menon_grouped_batch(chars, [args.k])[args.k]
        else:
            results = [menon(chi, args.k, args.mode, args.work_cap) for chi in chars]
        for r in results:
            value = str(r.value) if args.format == "json" else r.value
            rows.append([r.n, r.char_index, r.conductor, value])
    _print_rows(["n", "char_index", "conductor", "value"], rows, args.format, out)
    return EXIT_OK


COMMANDS = {
    "characters": cmd_characters,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except DomainError as exc:
        print(f"menonsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"menonsum: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
