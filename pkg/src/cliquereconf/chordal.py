"""Linear-time shortest TAR reconfiguration on chordal graphs.

Pipeline:

1. Attach a dummy vertex to each endpoint clique, so that ``source + d1`` and
   ``target + d2`` become maximal cliques that no other maximal clique shares a
   dummy with.
2. Build a clique tree of the augmented graph (maximum cardinality search, then
   a perfect elimination ordering walk) and keep the tree path between the two
   dummy cliques. Stripping the dummies leaves a clique path of an interval
   subgraph ``H`` with the same TAR distance as the input graph.
3. Walk the clique path greedily: drop the source-only vertex whose interval
   ends first while the size allows it, otherwise add a target vertex from the
   current bag, or failing that the bag vertex whose interval reaches furthest.
"""
from __future__ import annotations

import gc
import heapq
import time
from contextlib import contextmanager
from collections.abc import Collection, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .graph import Clique, Graph, induced_subgraph
from .result import Answer, SolveResult
from .rules import (
    MAXIMAL_ENDPOINT,
    ImmediateNo,
    ReconfSequence,
    Rule,
    RuleInstance,
    RuleKind,
    maximal_endpoint_no,
    tar_to_token_sequence,
    token_to_tar,
)


class NotChordalError(ValueError):
    """The graph has an induced cycle longer than three; use the MCG or exact solver."""

    def __init__(self, witness: tuple[int, int, int] | None = None):
        self.witness = witness
        msg = "graph is not chordal; use the mcg or exact solver instead"
        if witness:
            v, p, x = witness
            msg += f" (vertices {p} and {x} are non-adjacent neighbours of {v} later in the ordering)"
        super().__init__(msg)


@dataclass
class ChordalCheck:
    """Either a perfect elimination ordering or a violating triple ``(v, p, x)``.

    In the triple, ``p`` and ``x`` are neighbours of ``v`` eliminated after it
    but not adjacent to each other.
    """

    peo: list[int] | None
    witness: tuple[int, int, int] | None = None

    @property
    def is_chordal(self) -> bool:
        return self.peo is not None

    def __bool__(self) -> bool:
        return self.is_chordal


def _positions(order: Sequence[int]) -> list[int]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def _peo_violation(adj: Sequence[Collection[int]], peo: Sequence[int]) -> tuple[int, int, int] | None:
    pos = _positions(peo)
    for v in peo:
        pv = pos[v]
        later = [u for u in adj[v] if pos[u] > pv]
        if len(later) < 2:
            continue
        p = min(later, key=pos.__getitem__)
        ap = adj[p]
        for x in later:
            if x != p and x not in ap:
                return (v, p, x)
    return None


def check_chordal(g: Graph) -> ChordalCheck:
    """Maximum cardinality search, verified as a perfect elimination ordering."""
    tree = _mcs_tree(g.adj)
    if isinstance(tree, tuple):
        return ChordalCheck(None, tree)
    return ChordalCheck(tree.order[::-1])


@dataclass
class CliqueTree:
    """Maximal cliques joined into a tree; each vertex's cliques form a subtree.

    ``home[v]`` is the node ``v`` was first placed in.
    """

    nodes: list[Clique]
    edges: list[tuple[int, int]]
    home: list[int] = field(repr=False)

    @cached_property
    def adjacency(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.nodes]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def nodes_containing(self, v: int) -> list[int]:
        return [i for i, c in enumerate(self.nodes) if v in c]

    def path(self, a: int, b: int) -> list[int]:
        """Node indices on the unique tree path from ``a`` to ``b``."""
        parent = {a: a}
        stack = [a]
        while stack and b not in parent:
            x = stack.pop()
            for y in self.adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        out = [b]
        while out[-1] != a:
            out.append(parent[out[-1]])
        return out[::-1]


def _clique_tree(adj: Sequence[Collection[int]], peo: Sequence[int]) -> CliqueTree:
    # Visit in reverse elimination order. A vertex whose earlier-visited
    # neighbours fill its parent's node exactly joins that node; otherwise it
    # opens a new node hanging off the parent's node.
    pos = _positions(peo)
    members: list[list[int]] = []
    home = [-1] * len(peo)
    edges = []
    for v in reversed(peo):
        pv = pos[v]
        madj = [u for u in adj[v] if pos[u] > pv]
        if not madj:
            members.append([v])
            home[v] = len(members) - 1
            if home[v]:
                # new component: any attachment keeps the subtree property
                edges.append((0, home[v]))
            continue
        p = min(madj, key=pos.__getitem__)
        q = home[p]
        if len(madj) == len(members[q]):
            members[q].append(v)
            home[v] = q
        else:
            madj.append(v)
            members.append(madj)
            home[v] = len(members) - 1
            edges.append((q, home[v]))
    return CliqueTree([frozenset(m) for m in members], edges, home)


@dataclass
class _SearchTree:
    """Clique tree produced during maximum cardinality search (nodes as lists)."""

    order: list[int]
    members: list[list[int]]
    parent: list[int]
    depth: list[int]
    home: list[int]

    def path(self, a: int, b: int) -> list[int]:
        up, down = [], []
        depth, parent = self.depth, self.parent
        while depth[a] > depth[b]:
            up.append(a)
            a = parent[a]
        while depth[b] > depth[a]:
            down.append(b)
            b = parent[b]
        while a != b:
            up.append(a)
            down.append(b)
            a, b = parent[a], parent[b]
        up.append(a)
        return up + down[::-1]


def _mcs_tree(adj: Sequence[Collection[int]]) -> _SearchTree | tuple[int, int, int]:
    """One maximum cardinality search pass that also builds the clique tree.

    Returns the tree, or a triple ``(v, p, x)`` proving the search order is not
    a perfect elimination ordering (hence the graph is not chordal).
    """
    n = len(adj)
    weight = [0] * n
    # Lazy buckets: a vertex is re-appended whenever its weight grows, and
    # stale entries (visited, or weight moved on) are skipped when popped.
    buckets: list[list[int]] = [[] for _ in range(max(map(len, adj), default=0) + 2)]
    buckets[0] = list(range(n - 1, -1, -1))
    seen = [-1] * n
    order: list[int] = []
    members: list[list[int]] = []
    parent: list[int] = []
    depth: list[int] = []
    home = [-1] * n
    top = 0
    for i in range(n):
        while True:
            bucket = buckets[top]
            if not bucket:
                top -= 1
                continue
            v = bucket.pop()
            if seen[v] < 0 and weight[v] == top:
                break
        seen[v] = i
        order.append(v)
        madj = []
        p = -1
        last = -1
        for w in adj[v]:
            sw = seen[w]
            if sw >= 0:
                madj.append(w)
                if sw > last:
                    last = sw
                    p = w
            else:
                ww = weight[w] + 1
                weight[w] = ww
                buckets[ww].append(w)
                if ww > top:
                    top = ww
        if p < 0:
            home[v] = len(members)
            members.append([v])
            # new component: any attachment keeps the subtree property
            parent.append(0 if members[:-1] else -1)
            depth.append(1 if members[:-1] else 0)
            continue
        ap = adj[p]
        for x in madj:
            if x != p and x not in ap:
                return (v, p, x)
        q = home[p]
        if len(madj) == len(members[q]):
            members[q].append(v)
            home[v] = q
        else:
            madj.append(v)
            home[v] = len(members)
            members.append(madj)
            parent.append(q)
            depth.append(depth[q] + 1)
    return _SearchTree(order, members, parent, depth, home)


def build_clique_tree(g: Graph, peo: Sequence[int]) -> CliqueTree:
    """Clique tree from a perfect elimination ordering (first-eliminated first)."""
    if sorted(peo) != list(range(g.n)):
        raise RuntimeError("ordering is not a permutation of the vertices")
    if _peo_violation(g.adj, peo) is not None:
        raise RuntimeError("ordering is not a perfect elimination ordering")
    return _clique_tree(g.adj, peo)


@dataclass
class CliquePath:
    bags: list[Clique]

    @cached_property
    def lr(self) -> tuple[dict[int, int], dict[int, int]]:
        return compute_lr(self)

    def vertices(self) -> set[int]:
        return set().union(*self.bags) if self.bags else set()


def compute_lr(cp: CliquePath | Sequence[Collection[int]]) -> tuple[dict[int, int], dict[int, int]]:
    """First and last bag index holding each vertex.

    Raises RuntimeError if some vertex's bags are not consecutive.
    """
    bags = cp.bags if isinstance(cp, CliquePath) else cp
    l: dict[int, int] = {}
    r: dict[int, int] = {}
    for i, bag in enumerate(bags):
        for v in bag:
            if v in r:
                if r[v] != i - 1:
                    raise RuntimeError(f"vertex {v} leaves the clique path and comes back")
            else:
                l[v] = i
            r[v] = i
    return l, r


def contiguous_membership(cliques: Sequence[Collection[int]]) -> int | None:
    """First vertex whose membership indices along ``cliques`` are not one run, else None."""
    last: dict[int, int] = {}
    for i, c in enumerate(cliques):
        for v in c:
            j = last.get(v)
            if j is not None and j != i - 1:
                return v
            last[v] = i
    return None


def path_containment(path: CliquePath, cliques: Sequence[Collection[int]]) -> int | None:
    """Index of the first clique breaking monotone containment in the bags, else None.

    Each clique must lie in some bag, and the first such bag index must never
    decrease along the sequence.
    """
    l, r = path.lr
    prev = 0
    for i, c in enumerate(cliques):
        if not c:
            continue
        lo = max(l.get(v, len(path.bags)) for v in c)
        hi = min(r.get(v, -1) for v in c)
        if lo > hi or lo < prev:
            return i
        prev = lo
    return None


@dataclass
class IntervalInstance:
    """TAR instance restricted to the interval subgraph spanned by a clique path.

    Vertex labels are those of ``graph``.
    """

    graph: Graph
    path: CliquePath
    source: Clique
    target: Clique
    k: int

    def vertices(self) -> set[int]:
        return self.path.vertices() | self.source | self.target

    def subgraph(self) -> tuple[Graph, list[int]]:
        return induced_subgraph(self.graph, self.vertices())


@contextmanager
def _gc_paused():
    # The pipeline allocates millions of small acyclic lists; generational
    # collection would rescan them repeatedly and make the run superlinear.
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def reduce_to_interval(inst: RuleInstance) -> IntervalInstance:
    """Cut a chordal TAR instance down to a clique path between the endpoints.

    Chordality is checked on the dummy-augmented graph, which is chordal
    exactly when the input graph is.
    """
    if inst.rule.kind is not RuleKind.TAR:
        raise ValueError("expected a TAR instance")
    g = inst.graph
    n = g.n
    d1, d2 = n, n + 1
    adj: list[frozenset[int]] = list(g.adj)
    for v in inst.source:
        adj[v] = adj[v] | {d1}
    for v in inst.target:
        adj[v] = adj[v] | {d2}
    adj.append(inst.source)
    adj.append(inst.target)
    tree = _mcs_tree(adj)
    if isinstance(tree, tuple):
        raise NotChordalError(check_chordal(g).witness)
    dummies = {d1, d2}
    bags = [frozenset(tree.members[i]) - dummies for i in tree.path(tree.home[d1], tree.home[d2])]
    # An end bag stripped of its dummy may sit inside its neighbour; then it is
    # not a maximal clique of H and the clique path starts one bag later.
    if len(bags) > 1 and bags[0] <= bags[1]:
        bags.pop(0)
    if len(bags) > 1 and bags[-1] <= bags[-2]:
        bags.pop()
    return IntervalInstance(g, CliquePath(bags), inst.source, inst.target, inst.rule.k)


def greedy_solve(inst: IntervalInstance, want_sequence: bool = True, tie_break: str = "low") -> SolveResult:
    """Greedy shortest TAR(k) sequence along a clique path.

    Bags before the first one that must still hold the whole current clique,
    and after the first one holding the whole target, are ignored. Ties are
    broken towards the lowest vertex index (``tie_break="high"`` reverses
    this; any choice is optimal).
    """
    source, target, k = inst.source, inst.target, inst.k
    rule = Rule.tar(k)
    if source == target:
        return SolveResult(Answer.YES, 0, ReconfSequence(rule, [source]) if want_sequence else None,
                           solver="chordal", tar_k=k)
    if min(len(source), len(target)) < k:
        return SolveResult.no("chordal", "below-threshold", tar_k=k)
    bags = inst.path.bags
    l, r = inst.path.lr
    if not source <= bags[0] or not target <= bags[-1]:
        raise RuntimeError("clique path does not start at the source and end at the target")
    last = len(bags) - 1
    end = max((l[v] for v in target), default=last)
    sign = 1 if tie_break == "low" else -1

    def reach(v: int) -> int:
        rv = r[v]
        return rv if rv < end else end

    C = set(source)
    anchor = min(min((reach(v) for v in C), default=end), end)
    pending = sorted(target - source, key=l.__getitem__)
    ptr = 0
    avail: list[int] = []
    shared = len(C & target)
    cliques = [source] if want_sequence else None
    steps = 0
    limit = 2 * (len(inst.vertices()) + 1)
    while not (shared == len(C) == len(target)):
        if shared < len(C) and len(C) > k:
            u = min((v for v in C if v not in target), key=lambda v: (reach(v), sign * v))
            C.discard(u)
        else:
            while ptr < len(pending) and l[pending[ptr]] <= anchor:
                heapq.heappush(avail, sign * pending[ptr])
                ptr += 1
            if avail:
                u = sign * heapq.heappop(avail)
            else:
                outside = [v for v in bags[anchor] if v not in C]
                if not outside:
                    return SolveResult.no("chordal", "stuck", tar_k=k)
                u = max(outside, key=lambda v: (reach(v), -sign * v))
                if reach(u) <= anchor < end:
                    # every bag vertex stops here and the separator holds fewer than k
                    return SolveResult.no("chordal", "separator-too-small", tar_k=k)
            C.add(u)
            if u in target:
                shared += 1
        anchor = min((reach(v) for v in C), default=end)
        steps += 1
        if cliques is not None:
            cliques.append(frozenset(C))
        if steps > limit:
            raise RuntimeError("greedy walk failed to terminate")
    seq = ReconfSequence(rule, cliques) if cliques is not None else None
    return SolveResult(Answer.YES, steps, seq, solver="chordal", tar_k=k)


def solve_chordal(inst: RuleInstance, want_sequence: bool = True, tie_break: str = "low") -> SolveResult:
    """Exact shortest distance (and sequence) for any rule on a chordal graph.

    TS/TJ instances run as TAR(k) / TAR(k - 1) and report half the TAR distance.
    Raises NotChordalError on non-chordal input.
    """
    t0 = time.perf_counter()
    rule = inst.rule
    if rule.kind is not RuleKind.TAR:
        reduced = token_to_tar(inst)
        if isinstance(reduced, ImmediateNo):
            return SolveResult.no("chordal", reduced.reason)
        res = solve_chordal(reduced, want_sequence, tie_break)
        if res.reachable:
            res.distance //= 2
            if res.sequence is not None:
                res.sequence = tar_to_token_sequence(res.sequence, rule)
        return res
    k = rule.k
    if inst.source == inst.target:
        return SolveResult(Answer.YES, 0, ReconfSequence(rule, [inst.source]) if want_sequence else None,
                           solver="chordal", tar_k=k)
    reason = inst.definitional_no()
    if reason:
        return SolveResult.no("chordal", reason, tar_k=k)
    if maximal_endpoint_no(inst):
        return SolveResult.no("chordal", MAXIMAL_ENDPOINT, tar_k=k)
    with _gc_paused():
        interval = reduce_to_interval(inst)
        res = greedy_solve(interval, want_sequence, tie_break)
    res.stats.update(bags=len(interval.path.bags), seconds=time.perf_counter() - t0)
    return res
