"""Command-line front end: ``chromagraph poly|verify|scan|audit``.

Exit codes: 0 clean, 1 check failure, 2 usage or parse error, 3 open-region
finding under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from functools import partial
from pathlib import Path

from chromagraph import __version__
from chromagraph.audit import DEFAULT_K, audit_theorem_bound, rows_to_csv
from chromagraph.graph import (
    FAMILIES,
    GraphError,
    enumerate_labeled_connected,
    generate_family,
    parse_edge_list,
    parse_graph6,
)
from chromagraph.report import SCHEMA, poly_record, scan_record, summarize, verify_record

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FINDING = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_k_list(text: str) -> list[int]:
    ks: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        try:
            if "-" in part[1:]:
                lo, hi = part.split("-", 1)
                ks.update(range(int(lo), int(hi) + 1))
            else:
                ks.add(int(part))
        except ValueError:
            raise UsageError(f"bad --k entry {part!r}") from None
    if not ks or min(ks) < 1 or max(ks) > 64:
        raise UsageError("--k values must lie in 1..64")
    return sorted(ks)


def parse_range(text: str, name: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"{name} must look like LO:HI") from None
    if lo > hi:
        raise UsageError(f"{name} is inverted: {text}")
    return range(lo, hi + 1)


def load_graphs(args) -> list:
    """Return ``[(id, Graph)]`` from exactly one input source."""
    sources = [s for s in (args.input, args.family, args.exhaustive) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --input, --family, --exhaustive")
    if args.family is not None:
        kind, _, n = args.family.partition(":")
        if kind not in FAMILIES or not n.isdigit():
            raise UsageError(f"--family must be KIND:N with KIND in {', '.join(FAMILIES)}")
        return [(f"{kind}{n}", generate_family(kind, int(n), seed=args.seed))]
    if args.exhaustive is not None:
        return [(f"g{i}", g) for i, g in enumerate(enumerate_labeled_connected(args.exhaustive))]
    return read_graph_file(Path(args.input))


def read_graph_file(path: Path) -> list:
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        return []
    if lines[0][1].isdigit():
        try:
            return [(path.stem, parse_edge_list(text))]
        except GraphError as exc:
            raise UsageError(f"{path}: {exc}") from None
    out = []
    for lineno, line in lines:
        try:
            out.append((f"{path.stem}:{lineno}", parse_graph6(line)))
        except GraphError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return out


def _run(func, graphs: list, jobs: int) -> list:
    if jobs <= 1 or len(graphs) <= 1:
        return [func(gid, g) for gid, g in graphs]
    ids, gs = zip(*graphs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, ids, gs, chunksize=max(1, len(graphs) // (4 * jobs))))


def _envelope(args, command: str, records: list) -> dict:
    out = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": command,
        "config": {
            "input": args.input,
            "family": args.family,
            "exhaustive": args.exhaustive,
            "k": args.k,
            "K": str(args.K),
            "grid": getattr(args, "grid", None),
            "seed": args.seed,
            "strict": args.strict,
        },
        "summary": summarize(records),
        "records": records,
    }
    if not args.reproducible:
        out["timestamp"] = datetime.now(timezone.utc).isoformat()
    return out


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_poly(args) -> int:
    graphs = load_graphs(args)
    records = _run(poly_record, graphs, args.jobs)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "graph6", "coeffs", "chi", "epsilon"])
        for r in records:
            w.writerow([r["id"], r["graph6"], " ".join(r["coeffs"]), r["chi"], r["epsilon"]])
        _emit(args, buf.getvalue())
    else:
        _emit(args, json.dumps(_envelope(args, "poly", records), indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    ks = parse_k_list(args.k)
    if ks[0] < 2:
        raise UsageError("verify needs k >= 2")
    graphs = load_graphs(args)
    records = _run(partial(verify_record, ks=ks, K=args.K), graphs, args.jobs)
    report = _envelope(args, "verify", records)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "graph6", "check", "pass"])
        for r in records:
            for name, c in r["checks"].items():
                w.writerow([r["id"], r["graph6"], name, "true" if c["pass"] else "false"])
        _emit(args, buf.getvalue())
    else:
        _emit(args, json.dumps(report, indent=2) + "\n")
    return EXIT_FAIL if report["summary"]["failures"] else EXIT_OK


def cmd_scan(args) -> int:
    ks = parse_k_list(args.k)
    x_min, _, step = args.grid.partition(":")
    x_min, step = parse_rational(x_min), parse_rational(step)
    if not (x_min < 0 < step):
        raise UsageError("--grid needs XMIN < 0 < STEP")
    graphs = load_graphs(args)
    results = _run(partial(scan_record, ks=ks, x_min=x_min, step=step), graphs, args.jobs)
    records = [r for r, _ in results]
    report = _envelope(args, "scan", records)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph", "x", "k", "sign"])
        for _, grid in results:
            w.writerows(grid)
        _emit(args, buf.getvalue())
    else:
        _emit(args, json.dumps(report, indent=2) + "\n")
    if args.grid_csv:
        with open(args.grid_csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["graph", "x", "k", "sign"])
            for _, grid in results:
                w.writerows(grid)
    if report["summary"]["failures"]:
        return EXIT_FAIL
    if report["summary"]["findings"] and args.strict:
        return EXIT_FINDING
    return EXIT_OK


def cmd_audit(args) -> int:
    deltas = parse_range(args.delta_range, "--delta-range")
    ks = parse_range(args.k_range, "--k-range")
    if deltas[0] < 1 or ks[0] < 2:
        raise UsageError("audit needs Δ >= 1 and k >= 2")
    rows = audit_theorem_bound(deltas, ks, K=args.K)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": "audit",
            "K": str(args.K),
            "rows": [
                {"delta": r.delta, "k": r.k, "x": str(r.x), "f1": str(r.f1), "f": str(r.f), "pass": r.passed}
                for r in rows
            ],
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, rows_to_csv(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--input", metavar="FILE", help="graph6 file (one per line) or edge-list file")
    src.add_argument("--family", metavar="KIND:N", help=f"named family, KIND in {', '.join(FAMILIES)}")
    src.add_argument("--exhaustive", metavar="N", type=int, help="all labeled connected graphs on N <= 6 vertices")
    common.add_argument("--k", default="2,3,4,5,6", help="derivative orders, e.g. 2,3,4 or 2-6")
    common.add_argument("--K", type=Fraction, default=DEFAULT_K, help="root-bound constant (default 17/4)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--strict", action="store_true", help="exit 3 on open-region findings")
    common.add_argument("--reproducible", action="store_true", help="omit the timestamp")
    common.add_argument("--output", metavar="FILE")

    parser = argparse.ArgumentParser(prog="chromagraph", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"chromagraph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("poly", parents=[common], help="chromatic polynomial, Whitney numbers, χ and ε")
    p.set_defaults(func=cmd_poly, default_format="json")
    p = sub.add_parser("verify", parents=[common], help="exact checks of the negativity theorem and lemmas")
    p.set_defaults(func=cmd_verify, default_format="json")
    p = sub.add_parser("scan", parents=[common], help="exact sign scan on a rational grid")
    p.add_argument("--grid", default="-20:1/10", metavar="XMIN:STEP")
    p.add_argument("--grid-csv", metavar="FILE", help="also write the (graph, x, k, sign) grid here")
    p.set_defaults(func=cmd_scan, default_format="json")
    p = sub.add_parser("audit", parents=[common], help="exact audit of the region inequalities")
    p.add_argument("--delta-range", default="1:20", metavar="LO:HI")
    p.add_argument("--k-range", default="2:64", metavar="LO:HI")
    p.set_defaults(func=cmd_audit, default_format="csv")
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--grid -10:1/4`` into ``--grid=-10:1/4``.

    argparse refuses option values that start with '-' unless they parse as
    plain numbers, and every useful grid starts at a negative x.
    """
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--grid", "--K"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else list(argv)))
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"chromagraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
