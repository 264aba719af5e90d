"""Command line front door.

Subcommands: ``build`` emits a named construction in the triangulation
text format, ``enumerate`` prints the vertex normal surfaces of a
triangulation file, ``census`` runs the closed census at one size,
``bounds`` prints the bound report, and ``verify`` runs the acceptance
suites.  ``-`` stands for standard input/output everywhere a path is
taken.  Exit status: 0 success, 1 verification failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import bound_report
from .census import (
    CensusLimitError,
    census_records,
    conjecture_checks,
    stats_from_records,
    write_csv,
)
from .constructions import four_block, pillow, s2xs1, x_k
from .coords import MatchingError, boundary_profile, euler_char
from .dd import EnumerationLimitError, enumerate_vertex_surfaces
from .triangulation import GluingError, Triangulation
from .verify import run_suite

BUILDERS = {
    "pillow": lambda k: pillow(),
    "four-block": lambda k: four_block().triangulation,
    "x-k": lambda k: x_k(k),
    "s2xs1": lambda k: s2xs1(),
}


def _open_in(path: str):
    return sys.stdin if path == "-" else open(path, "r", encoding="utf-8")


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8")


def _read_triangulation(path: str) -> Triangulation:
    stream = _open_in(path)
    try:
        return Triangulation.from_text(stream.read())
    finally:
        if stream is not sys.stdin:
            stream.close()


def _cmd_build(args) -> int:
    tri = BUILDERS[args.name](args.k)
    out = _open_out(args.output)
    try:
        out.write(tri.to_text())
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_enumerate(args) -> int:
    tri = _read_triangulation(args.file)
    extra = None
    if args.extra:
        rows = []
        stream = _open_in(args.extra)
        try:
            for line in stream:
                line = line.strip()
                if line:
                    rows.append(tuple(int(tok) for tok in line.split()))
        finally:
            if stream is not sys.stdin:
                stream.close()
        extra = rows
    result = enumerate_vertex_surfaces(tri, extra=extra)
    if args.json:
        payload = {
            "sigma": result.sigma,
            "surfaces": [list(r.vector) for r in result.surfaces],
        }
        if args.annotate:
            payload["euler"] = [
                euler_char(r.vector, tri) for r in result.surfaces
            ]
            payload["boundary"] = [
                boundary_profile(r.vector, tri).multiplicity
                for r in result.surfaces
            ]
        json.dump(payload, sys.stdout)
        sys.stdout.write("\n")
        return 0
    print(f"sigma {result.sigma}")
    for ray in result.surfaces:
        line = " ".join(str(v) for v in ray.vector)
        if args.annotate:
            chi = euler_char(ray.vector, tri)
            line += f"  # chi={chi}"
            profile = boundary_profile(ray.vector, tri)
            if profile.multiplicity:
                mult = ",".join(
                    f"{cls}:{m}" for cls, m in sorted(profile.multiplicity.items())
                )
                line += f" boundary={mult}"
        print(line)
    return 0


def _cmd_census(args) -> int:
    records = census_records(args.n, threads=args.threads)
    stats = stats_from_records(records)
    if args.csv:
        out = _open_out(args.csv)
        try:
            write_csv(records, out)
        finally:
            if out is not sys.stdout:
                out.close()
    if args.stats:
        out = _open_out(args.stats)
        try:
            if args.json:
                json.dump(
                    {
                        "n": stats.n,
                        "count": stats.count,
                        "mean": float(stats.mean),
                        "stddev": stats.stddev,
                        "min": stats.min_sigma,
                        "max": stats.max_sigma,
                    },
                    out,
                )
                out.write("\n")
            else:
                out.write(stats.display() + "\n")
        finally:
            if out is not sys.stdout:
                out.close()
    if not args.csv and not args.stats:
        print(stats.display())
    return 0


def _cmd_bounds(args) -> int:
    report = bound_report(args.n)
    if args.json:
        json.dump(
            {
                "n": report.n,
                "fib_bound": report.fib_bound,
                "hass_bound": report.hass_bound,
                "worst_case": report.worst_case,
            },
            sys.stdout,
        )
        sys.stdout.write("\n")
    else:
        print(report.display())
    return 0


def _cmd_verify(args) -> int:
    try:
        results = run_suite(args.suite, slow=args.slow, threads=args.threads)
    except KeyError:
        print(f"unknown suite: {args.suite}", file=sys.stderr)
        return 2
    for result in results:
        print(result.line())
    failed = sum(1 for r in results if not r.ok)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsenum",
        description="Vertex normal surface enumeration, constructions, bounds and census.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a named construction")
    p.add_argument("name", choices=sorted(BUILDERS))
    p.add_argument("-k", type=int, default=1, help="block count for x-k")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("enumerate", help="enumerate vertex normal surfaces")
    p.add_argument("file", help="triangulation file, - for stdin")
    p.add_argument("--extra", help="file of extra equation rows (7n integers per line)")
    p.add_argument("--annotate", action="store_true",
                   help="append euler characteristic and boundary multiplicities")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("census", help="closed census at one size")
    p.add_argument("n", type=int)
    p.add_argument("--csv", help="write records as CSV to this path")
    p.add_argument("--stats", help="write the aggregate record to this path")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_census)

    p = sub.add_parser("bounds", help="bound report at one size")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("suite", help="table1, table2, xk, bounds, oracle, or all")
    p.add_argument("--slow", action="store_true",
                   help="include the multi-minute checks")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(fn=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        # Downstream closed early (e.g. piped into head); not an error.
        sys.stderr.close()
        return 0
    except (GluingError, MatchingError, CensusLimitError,
            EnumerationLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
