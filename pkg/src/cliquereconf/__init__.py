"""Clique reconfiguration: reachability and shortest sequences under TAR, TJ and TS."""
from .chordal import (
    CliquePath,
    CliqueTree,
    NotChordalError,
    build_clique_tree,
    check_chordal,
    compute_lr,
    greedy_solve,
    reduce_to_interval,
    solve_chordal,
)
from .exhaustive import (
    BudgetExceeded,
    ExactSolver,
    TreeDecomposition,
    build_reconfiguration_graph,
    enumerate_cliques,
    enumerate_cliques_from_td,
    parse_td,
    solve_exact,
)
from .graph import Graph, GraphFormatError, complement, format_graph, is_clique, parse_graph
from .mcg import build_mcg, enumerate_maximal_cliques, materialize_sequence, solve_mcg
from .result import INF, Answer, SolveResult
from .rules import (
    ReconfSequence,
    Rule,
    RuleInstance,
    RuleKind,
    parse_instance,
    parse_sequence,
    tar_to_tj,
    tar_to_ts,
    tj_to_tar,
    ts_to_tar,
    validate_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "INF", "Answer", "BudgetExceeded", "CliquePath", "CliqueTree", "ExactSolver", "Graph",
    "GraphFormatError", "NotChordalError", "ReconfSequence", "Rule", "RuleInstance", "RuleKind",
    "SolveResult", "TreeDecomposition", "build_clique_tree", "build_mcg", "build_reconfiguration_graph",
    "check_chordal", "complement", "compute_lr", "enumerate_cliques", "enumerate_cliques_from_td",
    "enumerate_maximal_cliques", "format_graph", "greedy_solve", "is_clique", "materialize_sequence",
    "parse_graph", "parse_instance", "parse_sequence", "parse_td", "reduce_to_interval", "solve_chordal",
    "solve_exact", "solve_mcg", "tar_to_tj", "tar_to_ts", "tj_to_tar", "ts_to_tar", "validate_sequence",
]
