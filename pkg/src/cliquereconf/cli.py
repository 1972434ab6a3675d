"""Command-line front end.

Exit codes: 0 for YES (or a valid sequence, or a clean crosscheck), 1 for NO
(or a violation, or discrepancies), 2 for errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import crosscheck as cc
from .chordal import NotChordalError, check_chordal, solve_chordal
from .exhaustive import DEFAULT_BUDGET, BudgetExceeded, ExactSolver, parse_td
from .generators import gnp, grid, random_chordal, random_instance, random_interval
from .graph import Graph, GraphFormatError, format_graph, parse_graph
from .mcg import DEFAULT_MAXIMAL_BUDGET, enumerate_maximal_cliques, solve_mcg
from .result import SolveResult
from .rules import RuleKind, format_instance, format_sequence, parse_instance, parse_sequence, validate_sequence

SOLVERS = ("auto", "chordal", "mcg", "exact")
GEN_KINDS = ("chordal", "interval", "gnp", "grid")


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load(graph_path: str, instance_path: str):
    g = parse_graph(_read(graph_path))
    return g, parse_instance(_read(instance_path), g)


def run_solver(inst, solver: str = "auto", budget: int | None = None, td=None,
               want_sequence: bool = True) -> SolveResult:
    """Dispatch to one solver; ``auto`` tries chordal, then MCG, then exhaustive search."""
    if solver == "auto":
        if td is not None:
            solver = "exact"
        elif check_chordal(inst.graph):
            solver = "chordal"
        else:
            try:
                ms = enumerate_maximal_cliques(inst.graph, budget or DEFAULT_MAXIMAL_BUDGET)
            except BudgetExceeded:
                solver = "exact"
            else:
                return solve_mcg(inst, ms=ms)
    if solver == "chordal":
        return solve_chordal(inst, want_sequence=want_sequence)
    if solver == "mcg":
        return solve_mcg(inst, budget or DEFAULT_MAXIMAL_BUDGET)
    if solver == "exact":
        return ExactSolver(inst.graph, budget or DEFAULT_BUDGET, td).solve(inst)
    raise CliError(f"unknown solver {solver!r}")


def cmd_solve(args: argparse.Namespace) -> int:
    g, inst = _load(args.graph, args.instance)
    td = parse_td(_read(args.td)) if args.td else None
    if td is not None:
        td.validate(g)
    res = run_solver(inst, args.solver, args.budget, td, want_sequence=not args.no_sequence)
    with_seq = not args.no_sequence
    if args.json:
        out = res.to_dict(with_sequence=with_seq)
        out["rule"] = str(inst.rule)
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        dist = "inf" if not res.reachable else str(res.distance)
        print(f"answer: {res.answer.value}")
        print(f"distance: {dist}")
        print(f"solver: {res.solver}")
        print(f"rule: {inst.rule}")
        if res.tar_k is not None and inst.rule.kind is not RuleKind.TAR:
            print(f"tar_k: {res.tar_k}")
        if not res.shortest:
            print("shortest: no (distance is the witness length)")
        if res.reason:
            print(f"reason: {res.reason}")
        if with_seq and res.sequence is not None:
            print("sequence:")
            sys.stdout.write(format_sequence(res.sequence))
    return 0 if res.reachable else 1


def cmd_check(args: argparse.Namespace) -> int:
    g, inst = _load(args.graph, args.instance)
    try:
        seq = parse_sequence(_read(args.sequence))
    except ValueError as exc:
        raise CliError(f"sequence file: {exc}") from None
    for i, c in enumerate(seq):
        if any(not 0 <= v < g.n for v in c):
            raise CliError(f"sequence line {i + 1}: vertex out of range 1..{g.n}")
    bad = validate_sequence(inst, seq)
    if bad is None:
        print(f"ok: valid {inst.rule} sequence of length {len(seq) - 1}")
        return 0
    print(f"violation at index {bad.index}: {bad.reason}")
    return 1


def generate(kind: str, n: int, seed: int, p: float = 0.3, rows: int = 3, cols: int = 3,
             width: float = 3.0, rule: str = "tar", max_attach: int = 4) -> tuple[Graph, object]:
    """Deterministic graph plus random instance for ``seed``."""
    rng = random.Random(seed)
    if kind == "chordal":
        g = random_chordal(n, rng, max_attach=max_attach)
    elif kind == "interval":
        g = random_interval(n, rng, width)
    elif kind == "gnp":
        g = gnp(n, p, rng)
    elif kind == "grid":
        g = grid(rows, cols)
    else:
        raise CliError(f"unknown graph kind {kind!r}")
    return g, random_instance(g, rng, RuleKind(rule))


def cmd_gen(args: argparse.Namespace) -> int:
    if args.n < 1 or args.rows < 1 or args.cols < 1:
        raise CliError("sizes must be positive")
    if not 0.0 <= args.p <= 1.0:
        raise CliError("--p must lie in [0, 1]")
    if args.max_attach < 1 or args.width <= 0:
        raise CliError("--max-attach must be positive and --width positive")
    g, inst = generate(args.kind, args.n, args.seed, args.p, args.rows, args.cols, args.width,
                       args.rule, args.max_attach)
    header = f"c {args.kind} seed={args.seed}\n"
    gpath, ipath = Path(args.prefix + ".graph"), Path(args.prefix + ".inst")
    gpath.write_text(header + format_graph(g))
    ipath.write_text(header + format_instance(inst))
    print(f"wrote {gpath} ({g.n} vertices, {g.m} edges) and {ipath}")
    return 0


def cmd_crosscheck(args: argparse.Namespace) -> int:
    report = cc.crosscheck(args.count, args.seed, args.battery or cc.BATTERIES, args.max_n,
                           args.inject, args.workers)
    print(report.summary())
    if args.dump_dir:
        for d in report.discrepancies[:args.dump_limit]:
            gpath, ipath = cc.dump_reproducer(d, args.dump_dir)
            print(f"reproducer: {gpath} {ipath}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliquereconf", description="Clique reconfiguration under TAR, TJ and TS.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide reachability and find a sequence")
    s.add_argument("graph")
    s.add_argument("instance")
    s.add_argument("--solver", choices=SOLVERS, default="auto")
    s.add_argument("--json", action="store_true", help="machine-readable output")
    s.add_argument("--budget", type=int, default=None,
                   help="node budget (cliques for exact, maximal cliques for mcg)")
    s.add_argument("--td", help="tree decomposition (.td) used to enumerate cliques for the exact solver")
    s.add_argument("--no-sequence", action="store_true", help="omit the sequence")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="validate a sequence file")
    c.add_argument("graph")
    c.add_argument("instance")
    c.add_argument("sequence")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", help="write a random graph and instance")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("prefix", help="output path prefix; writes PREFIX.graph and PREFIX.inst")
    g.add_argument("--n", type=int, default=12)
    g.add_argument("--p", type=float, default=0.3, help="edge probability (gnp)")
    g.add_argument("--rows", type=int, default=3)
    g.add_argument("--cols", type=int, default=3)
    g.add_argument("--width", type=float, default=3.0, help="maximum interval length (interval)")
    g.add_argument("--max-attach", type=int, default=4, help="attachment size cap (chordal)")
    g.add_argument("--rule", choices=[k.value for k in RuleKind], default="tar")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    x = sub.add_parser("crosscheck", help="run the randomized validation batteries")
    x.add_argument("--count", type=int, default=500)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--max-n", type=int, default=None, help="largest graph size (default per battery)")
    x.add_argument("--battery", action="append", choices=cc.BATTERIES)
    x.add_argument("--inject", choices=cc.INJECTIONS, help="deliberate fault, for testing the batteries")
    x.add_argument("--workers", type=int, default=1)
    x.add_argument("--dump-dir", help="write minimized reproducers here")
    x.add_argument("--dump-limit", type=int, default=5)
    x.set_defaults(func=cmd_crosscheck)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GraphFormatError, ValueError, BudgetExceeded, NotChordalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
