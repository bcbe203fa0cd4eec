"""Command-line interface: censuses, spectra, tables, and verifications.

Exit codes: 0 success, 1 usage error, 2 golden/conjecture mismatch,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .abelian import parse_group
from .brace import brace_from_subgroup, verify_brace, ybe_solution
from .counts import (
    CountReport,
    census,
    conjecture_report,
    table1_report,
    table3_report,
    table4_report,
)
from .endo import enumerate_aut
from .errors import CapacityError, HolobraceError, InvalidInputError
from .holomorph import order_spectrum
from .presentations import parse_kind
from .regular import search_regular

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_CAPACITY = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_census(args) -> int:
    group = parse_group(args.N)
    kind = parse_kind(args.G)
    if args.structured:
        method = "structured"
    elif args.via_reduction:
        method = "reduction"
    elif args.sylow:
        method = "sylow"
    elif args.direct:
        method = "direct"
    else:
        method = "auto"
    res = census(group, kind, method=method, cross_check=args.cross_check)
    payload = {
        "schema": "v1",
        "N": group.display_name(),
        "G": kind.display_name(),
        "c": res.c,
        "r": res.r,
        "h": res.h,
        "method": res.method,
        "classes": [
            {"orbit": size, "stabilizer": _stabilizer(group, size)} for size in res.class_sizes
        ],
    }
    _emit(_dump(payload))
    return EXIT_OK


def _stabilizer(group, orbit_size: int) -> int:
    from .endo import aut_order as group_aut_order

    total = group_aut_order(group)
    stab, rem = divmod(total, orbit_size)
    return stab if not rem else 0


def _cmd_spectrum(args) -> int:
    group = parse_group(args.N)
    spec = order_spectrum(group, workers=args.workers)
    if args.csv:
        lines = ["order,count"] + [f"{k},{v}" for k, v in spec.items()]
        text = "\n".join(lines) + "\n"
        if args.csv == "-":
            _emit(text)
        else:
            with open(args.csv, "w") as fh:
                fh.write(text)
    if args.dump_aut:
        autgroup = enumerate_aut(group)
        blocks = [[m.to_json() for m in block] for block in autgroup.blocks]
        with open(args.dump_aut, "w") as fh:
            fh.write(_dump({"schema": "v1", "N": group.display_name(), "blocks": blocks}) + "\n")
    payload = {
        "schema": "v1",
        "N": group.display_name(),
        "orders": {str(k): v for k, v in spec.items()},
        "max_order": max(spec),
    }
    _emit(_dump(payload))
    return EXIT_OK


def _report_for(which: int, n_max: int, s: int) -> CountReport:
    if which == 1:
        return table1_report()
    svals = (1, s) if s != 1 else (1,)
    if which == 3:
        return table3_report(n_max, svals)
    if which == 4:
        return table4_report(n_max, svals)
    raise InvalidInputError(f"no table {which}")


def _cmd_tables(args) -> int:
    report = _report_for(args.which, args.n_max, args.s)
    if args.format == "csv":
        text = report.to_csv()
    elif args.format == "json":
        text = report.to_json()
    else:
        text = report.to_text()
    _emit(text)
    if args.golden:
        with open(args.golden, "r", encoding="utf-8") as fh:
            expected = fh.read()
        if expected != text:
            sys.stderr.write("golden mismatch\n")
            return EXIT_MISMATCH
    return EXIT_OK


def _cmd_verify_conjecture(args) -> int:
    report = conjecture_report(args.m_max)
    _emit(report.to_text())
    ok = all(row[4] and row[7] for row in report.rows)
    return EXIT_OK if ok else EXIT_MISMATCH


def _class_braces(args):
    group = parse_group(args.N)
    kind = parse_kind(args.G)
    res = search_regular(group, kind)
    # class representatives in deterministic order
    return group, kind, [cls.representative for cls in res.classes]


def _cmd_brace_export(args) -> int:
    group, kind, reps = _class_braces(args)
    braces = [brace_from_subgroup(rep) for rep in reps]
    payload = {
        "schema": "v1",
        "N": group.display_name(),
        "G": kind.display_name(),
        "braces": [bt.to_json() for bt in braces],
    }
    text = _dump(payload) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
        _emit(_dump({"schema": "v1", "written": args.out, "count": len(braces)}))
    else:
        _emit(text)
    return EXIT_OK


def _cmd_ybe_check(args) -> int:
    group, kind, reps = _class_braces(args)
    checked = []
    for rep in reps:
        bt = brace_from_subgroup(rep)
        if not verify_brace(bt):
            raise HolobraceError("brace axioms failed")
        sol = ybe_solution(bt)  # raises on braid/involutivity failure
        checked.append(
            {"left_nondegenerate": sol.left_bijective, "right_nondegenerate": sol.right_bijective}
        )
    _emit(
        _dump(
            {
                "schema": "v1",
                "N": group.display_name(),
                "G": kind.display_name(),
                "braces_checked": len(checked),
                "involutive": True,
                "braid": True,
                "nondegeneracy": checked,
            }
        )
    )
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="holobrace", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("census", help="count regular subgroups / braces / HGS for (N, G)")
    p.add_argument("--N", required=True, help='additive group, e.g. "c2xc8" or "[3,2,8]"')
    p.add_argument("--G", required=True, help='target kind, e.g. "q16" or "d32"')
    p.add_argument("--structured", action="store_true", help="use the closed-form family solver")
    p.add_argument("--via-reduction", action="store_true", help="use the odd-part reduction")
    p.add_argument("--direct", action="store_true", help="force the generic search")
    p.add_argument("--sylow", action="store_true", help="force the Sylow-restricted search")
    p.add_argument("--cross-check", action="store_true", help="also run a second path and compare")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("spectrum", help="element-order census of Hol(N)")
    p.add_argument("--N", required=True)
    p.add_argument("--csv", help='write "order,count" rows to a file ("-" for stdout)')
    p.add_argument("--dump-aut", help="write the enumerated Aut(N) matrices to a JSON file")
    p.add_argument(
        "--workers",
        type=int,
        default=os.cpu_count() or 1,
        help="parallel workers for the order census (results are identical)",
    )
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("tables", help="reproduce the counting tables")
    p.add_argument("--which", type=int, required=True, choices=(1, 3, 4))
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--golden", help="diff the text output against this file")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("verify-conjecture", help="closed forms vs computed censuses")
    p.add_argument("--m-max", type=int, default=8)
    p.set_defaults(func=_cmd_verify_conjecture)

    p = sub.add_parser("brace-export", help="export class-representative braces as JSON")
    p.add_argument("--N", required=True)
    p.add_argument("--G", required=True)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_brace_export)

    p = sub.add_parser("ybe-check", help="verify YBE solutions for the braces of (N, G)")
    p.add_argument("--N", required=True)
    p.add_argument("--G", required=True)
    p.set_defaults(func=_cmd_ybe_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except InvalidInputError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_USAGE
    except CapacityError as exc:
        sys.stderr.write(f"capacity exceeded: {exc}\n")
        return EXIT_CAPACITY
    except HolobraceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
