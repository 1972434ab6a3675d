"""Exact shortest reconfiguration by breadth-first search over all cliques.

The reconfiguration graph has one node per clique of admissible size and an
edge per rule step. With clique number ``w`` there are at most
``sum(C(n, i) for i in k..w)`` nodes, so this is only practical when ``w`` is
small; a node budget makes misuse fail fast instead of exhausting memory.

Cliques are handled internally as integer bitmasks.
"""
from __future__ import annotations

import time
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

from .graph import Clique, Graph
from .result import Answer, SolveResult
from .rules import ReconfSequence, Rule, RuleInstance, RuleKind

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int, what: str = "cliques"):
        self.budget = budget
        super().__init__(f"enumeration exceeded the budget of {budget} {what}")


class TreeDecompositionError(ValueError):
    pass


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _adj_masks(g: Graph) -> list[int]:
    return [_mask(g.adj[v]) for v in range(g.n)]


def _clique_masks(
    adj: list[int],
    universe: int,
    min_size: int,
    max_size: int | None,
    budget: int,
) -> list[int]:
    """All cliques inside ``universe`` with sizes in range, by higher-index extension."""
    out = []
    visited = 0
    # (clique, size, candidates with index above every member)
    stack = [(0, 0, universe)]
    while stack:
        c, size, cand = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceeded(budget)
        if size >= min_size:
            out.append(c)
        if max_size is not None and size >= max_size:
            continue
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            # cand now holds only indices above v
            stack.append((c | low, size + 1, cand & adj[v]))
    return out


def _canonical(masks: Iterable[int]) -> list[Clique]:
    cl = [tuple(_members(m)) for m in masks]
    cl.sort(key=lambda t: (len(t), t))
    return [frozenset(t) for t in cl]


def enumerate_cliques(
    g: Graph, min_size: int = 0, max_size: int | None = None, budget: int = DEFAULT_BUDGET
) -> list[Clique]:
    """Every clique of ``g`` with ``min_size <= |C| (<= max_size)``, each once.

    Ordered by size, then lexicographically by sorted members. ``budget`` caps
    the number of cliques visited (smaller cliques are visited on the way to
    larger ones).
    """
    return _canonical(_clique_masks(_adj_masks(g), (1 << g.n) - 1, min_size, max_size, budget))


@dataclass
class ReconfigurationGraph:
    rule: Rule
    nodes: list[int]
    index: dict[int, int]
    adjacency: list[list[int]]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def node_of(self, c: Iterable[int]) -> int | None:
        return self.index.get(_mask(c))

    def clique(self, i: int) -> Clique:
        return frozenset(_members(self.nodes[i]))

    def edges(self) -> list[tuple[Clique, Clique]]:
        return [
            (self.clique(i), self.clique(j))
            for i, nb in enumerate(self.adjacency)
            for j in nb
            if i < j
        ]


def _build(masks: list[int], rule: Rule, adj: list[int]) -> ReconfigurationGraph:
    index = {m: i for i, m in enumerate(masks)}
    nbrs: list[list[int]] = [[] for _ in masks]
    if rule.kind is RuleKind.TAR:
        # link each clique to its one-smaller sub-cliques
        for i, m in enumerate(masks):
            rest = m
            while rest:
                low = rest & -rest
                rest ^= low
                j = index.get(m ^ low)
                if j is not None:
                    nbrs[i].append(j)
                    nbrs[j].append(i)
    else:
        sliding = rule.kind is RuleKind.TS
        everything = (1 << len(adj)) - 1
        for i, m in enumerate(masks):
            vs = _members(m)
            for v in vs:
                base = m ^ (1 << v)
                common = everything
                for u in vs:
                    if u != v:
                        common &= adj[u]
                cand = common & ~m
                if sliding:
                    cand &= adj[v]
                while cand:
                    low = cand & -cand
                    cand ^= low
                    j = index.get(base | low)
                    if j is not None and j > i:
                        nbrs[i].append(j)
                        nbrs[j].append(i)
    return ReconfigurationGraph(rule, masks, index, nbrs)


def build_reconfiguration_graph(g: Graph, cliques: Iterable[Iterable[int]], rule: Rule) -> ReconfigurationGraph:
    """Reconfiguration graph over the given cliques (normally from ``enumerate_cliques``).

    TAR links each clique to its one-vertex-smaller sub-cliques in the node set;
    TJ/TS enumerate, per clique and per member, the replacement vertices.
    """
    masks = [_mask(c) for c in cliques]
    return _build(masks, rule, _adj_masks(g))


def _bfs(rg: ReconfigurationGraph, s: int, t: int) -> list[int] | None:
    parent = {s: s}
    q = deque([s])
    while q:
        x = q.popleft()
        if x == t:
            break
        for y in rg.adjacency[x]:
            if y not in parent:
                parent[y] = x
                q.append(y)
    if t not in parent:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return path


class ExactSolver:
    """Exhaustive solver bound to one graph; caches cliques and reconfiguration graphs.

    ``td`` routes clique enumeration through a supplied tree decomposition.
    """

    def __init__(self, g: Graph, budget: int = DEFAULT_BUDGET, td: TreeDecomposition | None = None):
        self.graph = g
        self.budget = budget
        self.td = td
        self._adj = _adj_masks(g)
        self._all: list[int] | None = None
        self._graphs: dict[tuple, ReconfigurationGraph] = {}

    def _cliques(self) -> list[int]:
        if self._all is None:
            if self.td is not None:
                found = [_mask(c) for c in enumerate_cliques_from_td(self.graph, self.td, 0, self.budget)]
            else:
                found = _clique_masks(self._adj, (1 << self.graph.n) - 1, 0, None, self.budget)
            found.sort(key=lambda m: (m.bit_count(), m))
            self._all = found
        return self._all

    def reconfiguration_graph(self, rule: Rule, size: int | None = None,
                              max_size: int | None = None) -> ReconfigurationGraph:
        """TAR graphs take ``rule.k`` as the lower size bound; TJ/TS graphs need ``size``."""
        if rule.kind is RuleKind.TAR:
            size = None
        key = (rule, size, max_size)
        rg = self._graphs.get(key)
        if rg is None:
            if rule.kind is RuleKind.TAR:
                lo, hi = rule.k, max_size
            else:
                lo = hi = size
            masks = [m for m in self._cliques() if m.bit_count() >= lo and (hi is None or m.bit_count() <= hi)]
            rg = _build(masks, rule, self._adj)
            self._graphs[key] = rg
        return rg

    def solve(self, inst: RuleInstance, max_size: int | None = None) -> SolveResult:
        """Shortest sequence by BFS. ``max_size`` restricts TAR to cliques no larger than it."""
        t0 = time.perf_counter()
        rule = inst.rule
        if inst.source == inst.target:
            return SolveResult(Answer.YES, 0, ReconfSequence(rule, [inst.source]), solver="exact",
                               tar_k=rule.k)
        reason = inst.definitional_no()
        if reason:
            return SolveResult.no("exact", reason, tar_k=rule.k)
        rg = self.reconfiguration_graph(rule, len(inst.source), max_size)
        s, t = rg.node_of(inst.source), rg.node_of(inst.target)
        stats = {"nodes": len(rg.nodes), "edges": rg.edge_count}
        path = None if s is None or t is None else _bfs(rg, s, t)
        stats["seconds"] = time.perf_counter() - t0
        if path is None:
            return SolveResult.no("exact", "unreachable", tar_k=rule.k, stats=stats)
        seq = ReconfSequence(rule, [rg.clique(i) for i in path])
        return SolveResult(Answer.YES, seq.length, seq, solver="exact", tar_k=rule.k, stats=stats)

    def distance(self, source: Iterable[int], target: Iterable[int], rule: Rule) -> float | int:
        return self.solve(RuleInstance(self.graph, frozenset(source), frozenset(target), rule)).distance


def solve_exact(inst: RuleInstance, budget: int = DEFAULT_BUDGET,
                td: TreeDecomposition | None = None) -> SolveResult:
    return ExactSolver(inst.graph, budget, td).solve(inst)


@dataclass
class TreeDecomposition:
    """Bags (0-based vertex sets) joined by tree edges over bag indices."""

    bags: list[frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def validate(self, g: Graph) -> None:
        """Raise TreeDecompositionError naming the first violated condition."""
        nb = len(self.bags)
        if nb == 0:
            if g.n:
                raise TreeDecompositionError("no bags for a non-empty graph")
            return
        tree: list[list[int]] = [[] for _ in range(nb)]
        for a, b in self.edges:
            if not (0 <= a < nb and 0 <= b < nb) or a == b:
                raise TreeDecompositionError(f"bad tree edge ({a + 1}, {b + 1})")
            tree[a].append(b)
            tree[b].append(a)
        if len(self.edges) != nb - 1 or len(_reach(tree, range(nb), 0)) != nb:
            raise TreeDecompositionError("bag edges do not form a tree")
        holders: list[list[int]] = [[] for _ in range(g.n)]
        for i, bag in enumerate(self.bags):
            for v in bag:
                if not 0 <= v < g.n:
                    raise TreeDecompositionError(f"bag {i + 1} has out-of-range vertex {v + 1}")
                holders[v].append(i)
        for v in range(g.n):
            if not holders[v]:
                raise TreeDecompositionError(f"vertex {v + 1} is in no bag")
            if len(_reach(tree, holders[v], holders[v][0])) != len(holders[v]):
                raise TreeDecompositionError(f"bags containing vertex {v + 1} are not connected")
        for u, v in g.edges():
            if not any(v in self.bags[i] for i in holders[u]):
                raise TreeDecompositionError(f"edge ({u + 1}, {v + 1}) is in no bag")


def _reach(tree: list[list[int]], allowed: Iterable[int], start: int) -> set[int]:
    ok = set(allowed)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in tree[x]:
            if y in ok and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def parse_td(text: str) -> TreeDecomposition:
    """Parse the PACE ``.td`` format (``s td``, ``b`` bag lines, bag edge lines; 1-based)."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if len(parts) != 5 or parts[1] != "td":
                    raise ValueError("malformed 's td' line")
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] == "b":
                if header is None:
                    raise ValueError("bag line before 's td' line")
                bags[int(parts[1])] = frozenset(int(x) - 1 for x in parts[2:])
            else:
                if len(parts) != 2:
                    raise ValueError(f"unexpected line {raw.strip()!r}")
                edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        except ValueError as exc:
            raise TreeDecompositionError(f"line {lineno}: {exc}") from None
    if header is None:
        raise TreeDecompositionError("missing 's td' line")
    nbags = header[0]
    if sorted(bags) != list(range(1, nbags + 1)):
        raise TreeDecompositionError(f"expected bags numbered 1..{nbags}")
    return TreeDecomposition([bags[i] for i in range(1, nbags + 1)], edges)


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines.extend(f"{a + 1} {b + 1}" for a, b in td.edges)
    return "\n".join(lines) + "\n"


def enumerate_cliques_from_td(
    g: Graph, td: TreeDecomposition, min_size: int = 0, budget: int = DEFAULT_BUDGET
) -> list[Clique]:
    """Same output as ``enumerate_cliques``, found bag by bag.

    Every clique of a graph lies inside some bag, so enumerating cliques within
    each bag and de-duplicating finds them all.
    """
    td.validate(g)
    adj = _adj_masks(g)
    found: set[int] = set()
    visited = 0
    for bag in td.bags:
        masks = _clique_masks(adj, _mask(bag), min_size, None, max(budget - visited, 0))
        visited += len(masks)
        found.update(masks)
    if min_size == 0 and not td.bags:
        found.add(0)
    return _canonical(found)
