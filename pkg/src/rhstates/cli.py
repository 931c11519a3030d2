"""Command-line driver: sweeps, threshold extraction, GMN, preset search.

Exit codes: 0 success, 1 configuration error, 2 fatal numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from .gmn import SolverError, WitnessProblem, certify_solution, gmn_solution
from .hypergraph import Bipartition, HypergraphError, parse_hypergraph
from .measures import TOL_ZERO, find_thresholds, negativity, reduced_concurrence
from .presets import PRESETS, identify_presets
from .randomize import RandomizationError, randomize
from .sweep import (
    Range,
    SweepConfig,
    SweepConfigError,
    emit_csv,
    emit_gnuplot,
    run_sweep,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


class ConfigError(Exception):
    pass


def load_hypergraph(source):
    """Resolve a preset name or a hypergraph file path."""
    if source in PRESETS:
        return PRESETS[source], source
    path = Path(source)
    if not path.exists():
        raise ConfigError(
            f"{source!r} is neither a preset ({', '.join(sorted(PRESETS))}) nor a file")
    try:
        return parse_hypergraph(path.read_text(encoding="utf-8")), str(path)
    except HypergraphError as err:
        raise ConfigError(f"cannot parse {source}: {err}") from err


def parse_bipartition(text, n):
    try:
        left = text.split("|")[0]
        part = tuple(int(v) for v in left.split(",") if v)
    except ValueError:
        raise ConfigError(f"cannot parse bipartition {text!r}; use e.g. '1,2|3,4'") from None
    pieces = text.split("|")
    if len(pieces) == 2 and pieces[1]:
        try:
            right = tuple(int(v) for v in pieces[1].split(",") if v)
        except ValueError:
            raise ConfigError(f"cannot parse bipartition {text!r}") from None
        if sorted(part + right) != list(range(1, n + 1)):
            raise ConfigError(f"bipartition {text!r} does not split qubits 1..{n}")
    try:
        return Bipartition(n, part)
    except HypergraphError as err:
        raise ConfigError(str(err)) from err


def parse_pair(text, n):
    try:
        pair = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ConfigError(f"cannot parse pair {text!r}; use e.g. '1,3'") from None
    if len(pair) != 2 or pair[0] == pair[1] or any(q < 1 or q > n for q in pair):
        raise ConfigError(f"pair {text!r} must be two distinct qubits in 1..{n}")
    return pair


def build_context(args, h):
    if args.measure == "negativity":
        if not args.bipartition:
            raise ConfigError("--measure negativity requires --bipartition")
        return parse_bipartition(args.bipartition, h.n_vertices)
    if args.measure == "concurrence":
        if not args.pair:
            raise ConfigError("--measure concurrence requires --pair")
        return parse_pair(args.pair, h.n_vertices)
    return None


def add_common(p, measure=True):
    p.add_argument("--hypergraph", required=True, help="preset name or file path")
    if measure:
        p.add_argument("--measure", required=True,
                       choices=("negativity", "concurrence", "gmn"))
        p.add_argument("--bipartition", help='e.g. "1,2|3,4" (negativity)')
        p.add_argument("--pair", help='e.g. "1,3" (concurrence)')
    p.add_argument("--p2", default="0:1:0.01", help="value or start:stop:step")
    p.add_argument("--p3", default="1", help="value or start:stop:step")
    p.add_argument("--tol-zero", type=float, default=TOL_ZERO)


def cmd_sweep(args):
    h, name = load_hypergraph(args.hypergraph)
    try:
        cfg = SweepConfig(h, name, args.measure, build_context(args, h),
                          Range.parse(args.p2), Range.parse(args.p3),
                          tol_zero=args.tol_zero)
    except SweepConfigError as err:
        raise ConfigError(str(err)) from err
    res = run_sweep(cfg)
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    emit_csv(res, args.out, timestamp=stamp)
    if args.gnuplot:
        emit_gnuplot(res, args.out, str(args.out) + ".gp")
    failed = [r for r in res.records if r[3] != "ok"]
    print(f"wrote {args.out}: {len(res.records)} grid points"
          + (f", {len(failed)} solver failures flagged" if failed else ""))
    return EXIT_OK


def cmd_threshold(args):
    h, name = load_hypergraph(args.hypergraph)
    context = build_context(args, h)
    p2, p3 = Range.parse(args.p2), Range.parse(args.p3)
    sweeps = [k for k, r in ((2, p2), (3, p3)) if r.stop > r.start]
    if len(sweeps) != 1:
        raise ConfigError("threshold needs exactly one swept axis "
                          "(give one range and one scalar among --p2/--p3)")
    k = sweeps[0]
    fixed = {2: p2.start, 3: p3.start}
    del fixed[k]
    if args.measure == "negativity":
        measure = lambda rho: negativity(rho, context)
    elif args.measure == "concurrence":
        measure = lambda rho: reduced_concurrence(rho, *context)
    else:
        from .gmn import gmn
        measure = gmn
    fixed = {c: v for c, v in fixed.items() if c in h.cardinalities()}
    try:
        rep = find_thresholds(h, fixed, k, measure, tol_zero=args.tol_zero)
    except SolverError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(f"{name} {args.measure} — {rep.path}")
    print("ESD:", ", ".join(f"{p:.4f}" for p in rep.esd_points) or "none")
    print("ESB:", ", ".join(f"{p:.4f}" for p in rep.esb_points) or "none")
    return EXIT_OK


def cmd_gmn(args):
    h, name = load_hypergraph(args.hypergraph)
    p2, p3 = Range.parse(args.p2), Range.parse(args.p3)
    if p2.stop > p2.start or p3.stop > p3.start:
        raise ConfigError("gmn evaluates one point; give scalar --p2/--p3")
    params = {k: v for k, v in ((2, p2.start), (3, p3.start))
              if k in h.cardinalities()}
    rho = randomize(h, params)
    try:
        value, sol = gmn_solution(rho)
    except SolverError as err:
        print(f"solver did not converge: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    cert = certify_solution(sol, WitnessProblem.from_state(rho))
    print(f"{name} GMN at p2={p2.start:g}, p3={p3.start:g}: {value:.9f}")
    print(f"status: {sol.status}, duality gap <= {sol.gap:.2e}, "
          f"certified: {cert.valid}")
    return EXIT_OK if cert.valid else EXIT_NUMERICAL


def cmd_identify_presets(args):
    report = identify_presets()
    for name, matches in report.matches.items():
        print(f"{name}: {len(matches)} matching hypergraph(s)")
        for h in matches:
            edges = " ".join("{" + ",".join(map(str, e)) + "}" for e in h.edges)
            marker = "  [shipped]" if h == PRESETS[name] else ""
            print(f"    {edges}{marker}")
    ambiguous = report.ambiguous()
    if ambiguous:
        print(f"ambiguous rows (multiple candidates): {', '.join(sorted(ambiguous))}")
    missing = [k for k, v in report.matches.items() if not v]
    if missing:
        print(f"UNMATCHED rows: {', '.join(missing)}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_show(args):
    if args.preset not in PRESETS:
        raise ConfigError(f"unknown preset {args.preset!r}; "
                          f"available: {', '.join(sorted(PRESETS))}")
    h = PRESETS[args.preset]
    print(h.to_text(), end="")
    cards = sorted(h.cardinalities())
    print(f"# {h.n_vertices} vertices, {len(h.edges)} hyperedges, "
          f"cardinalities {cards}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rhstates",
        description="Randomized hypergraph states: entanglement sweeps and thresholds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate a measure on a (p2, p3) grid")
    add_common(p)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--gnuplot", action="store_true",
                   help="also write a gnuplot script next to the CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="locate ESD/ESB points along one axis")
    add_common(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("gmn", help="genuine multipartite negativity of one state")
    add_common(p, measure=False)
    p.set_defaults(func=cmd_gmn)

    p = sub.add_parser("identify-presets",
                       help="search hypergraphs matching the threshold table")
    p.set_defaults(func=cmd_identify_presets)

    p = sub.add_parser("show", help="print a preset hypergraph")
    p.add_argument("preset")
    p.set_defaults(func=cmd_show)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SweepConfigError, RandomizationError, HypergraphError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
