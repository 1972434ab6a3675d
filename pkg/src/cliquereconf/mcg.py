"""Reachability through the k-intersection graph of maximal cliques.

Two cliques of size at least k are TAR(k)-reconfigurable exactly when some (any)
maximal clique containing the first and some (any) maximal clique containing
the second are joined by a path whose consecutive maximal cliques share at
least k vertices. This yields a polynomial decision procedure whenever the
graph has polynomially many maximal cliques.
"""
from __future__ import annotations

import time
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .exhaustive import BudgetExceeded, _adj_masks, _mask, _members
from .graph import Clique, Graph
from .result import Answer, SolveResult
from .rules import (
    MAXIMAL_ENDPOINT,
    ImmediateNo,
    ReconfSequence,
    Rule,
    RuleInstance,
    RuleKind,
    lowest,
    maximal_endpoint_no,
    maximal_extension,
    tar_to_token_sequence,
    token_to_tar,
)

DEFAULT_MAXIMAL_BUDGET = 10**6


@dataclass
class MaximalCliqueSet:
    cliques: list[Clique]

    def __post_init__(self) -> None:
        self.masks = [_mask(c) for c in self.cliques]
        self._lookup = {m: i for i, m in enumerate(self.masks)}

    def __len__(self) -> int:
        return len(self.cliques)

    def index_of(self, c: Iterable[int]) -> int | None:
        return self._lookup.get(_mask(c))

    def containing(self, c: Iterable[int]) -> int | None:
        """Index of the first maximal clique that contains ``c``."""
        m = _mask(c)
        for i, big in enumerate(self.masks):
            if m & big == m:
                return i
        return None

    def all_containing(self, c: Iterable[int]) -> list[int]:
        m = _mask(c)
        return [i for i, big in enumerate(self.masks) if m & big == m]


def _degeneracy_order(adj: list[int], n: int) -> list[int]:
    deg = [a.bit_count() for a in adj]
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v in range(n):
        buckets[deg[v]].add(v)
    removed = [False] * n
    order = []
    d = 0
    for _ in range(n):
        d = max(d - 1, 0)
        while not buckets[d]:
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        removed[v] = True
        order.append(v)
        for w in _members(adj[v]):
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return order


def enumerate_maximal_cliques(g: Graph, budget: int = DEFAULT_MAXIMAL_BUDGET) -> MaximalCliqueSet:
    """All maximal cliques, by Bron-Kerbosch with pivoting over a degeneracy order.

    Raises BudgetExceeded once more than ``budget`` maximal cliques are found;
    on such graphs the exhaustive solver is hopeless too.
    """
    adj = _adj_masks(g)
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                found.append(r)
                if len(found) > budget:
                    raise BudgetExceeded(budget, "maximal cliques")
            return
        pivot = max(_members(p | x), key=lambda u: (p & adj[u]).bit_count())
        for v in _members(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    seen = 0
    for v in _degeneracy_order(adj, g.n):
        bit = 1 << v
        expand(bit, adj[v] & ~seen, adj[v] & seen)
        seen |= bit
    if g.n == 0:
        found.append(0)
    cl = sorted(tuple(_members(m)) for m in found)
    return MaximalCliqueSet([frozenset(t) for t in cl])


@dataclass
class KIntersectionMCG:
    k: int
    adjacency: list[list[int]]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nb in enumerate(self.adjacency) for j in nb if i < j]

    def path(self, s: int, t: int) -> list[int] | None:
        parent = {s: s}
        q = deque([s])
        while q and t not in parent:
            x = q.popleft()
            for y in self.adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    q.append(y)
        if t not in parent:
            return None
        out = [t]
        while out[-1] != s:
            out.append(parent[out[-1]])
        return out[::-1]


def build_mcg(ms: MaximalCliqueSet, k: int) -> KIntersectionMCG:
    """Join two maximal cliques iff they share at least ``k`` vertices."""
    masks = ms.masks
    nbrs: list[list[int]] = [[] for _ in masks]
    for i, a in enumerate(masks):
        for j in range(i + 1, len(masks)):
            if (a & masks[j]).bit_count() >= k:
                nbrs[i].append(j)
                nbrs[j].append(i)
    return KIntersectionMCG(k, nbrs)


def _within(cur: Clique, goal: Clique) -> list[Clique]:
    """Add the missing vertices of ``goal``, then drop the extras (cur ∪ goal must be a clique)."""
    out = []
    for v in sorted(goal - cur):
        cur = cur | {v}
        out.append(cur)
    for v in sorted(cur - goal):
        cur = cur - {v}
        out.append(cur)
    return out


def materialize_sequence(
    path: Sequence[Iterable[int]], source: Iterable[int], target: Iterable[int], k: int
) -> ReconfSequence:
    """TAR(k) sequence along a path of maximal cliques.

    Moves from the source to the ``k`` lowest-indexed vertices shared by the
    first two cliques of the path, then on to the next shared set, and finally
    to the target. Valid, not necessarily shortest.
    """
    path = [frozenset(m) for m in path]
    cur, target = frozenset(source), frozenset(target)
    if not path or not cur <= path[0] or not target <= path[-1]:
        raise RuntimeError("MCG path does not contain the endpoints")
    seq = [cur]
    for a, b in zip(path, path[1:]):
        shared = a & b
        if len(shared) < k:
            raise RuntimeError("consecutive maximal cliques share fewer than k vertices")
        step = lowest(shared, k)
        seq.extend(_within(cur, step))
        cur = step
    seq.extend(_within(cur, target))
    return ReconfSequence(Rule.tar(k), seq)


def solve_mcg(inst: RuleInstance, budget: int = DEFAULT_MAXIMAL_BUDGET,
              ms: MaximalCliqueSet | None = None) -> SolveResult:
    """Decide reachability via the maximal-clique graph; YES answers carry a witness.

    TJ/TS instances are reduced to TAR first, and the witness is converted back.
    The witness is not guaranteed shortest (``shortest`` is False).
    """
    t0 = time.perf_counter()
    rule = inst.rule
    if rule.kind is not RuleKind.TAR:
        reduced = token_to_tar(inst)
        if isinstance(reduced, ImmediateNo):
            return SolveResult.no("mcg", reduced.reason, shortest=False)
        res = solve_mcg(reduced, budget, ms)
        res.tar_k = reduced.rule.k
        if res.sequence is not None:
            res.sequence = tar_to_token_sequence(res.sequence, rule)
            res.distance = res.sequence.length
        return res
    k = rule.k
    if inst.source == inst.target:
        return SolveResult(Answer.YES, 0, ReconfSequence(rule, [inst.source]), solver="mcg",
                           shortest=False, tar_k=k)
    reason = inst.definitional_no()
    if reason:
        return SolveResult.no("mcg", reason, shortest=False, tar_k=k)
    if maximal_endpoint_no(inst):
        return SolveResult.no("mcg", MAXIMAL_ENDPOINT, shortest=False, tar_k=k)
    if ms is None:
        ms = enumerate_maximal_cliques(inst.graph, budget)
    g = inst.graph
    ends = []
    for c in (inst.source, inst.target):
        i = ms.index_of(maximal_extension(g, c))
        if i is None:
            i = ms.containing(c)
        ends.append(i)
    mcg = build_mcg(ms, k)
    path = mcg.path(*ends)
    stats = {"maximal_cliques": len(ms), "mcg_edges": mcg.edge_count,
             "seconds": time.perf_counter() - t0}
    if path is None:
        return SolveResult.no("mcg", "disconnected", shortest=False, tar_k=k, stats=stats)
    seq = materialize_sequence([ms.cliques[i] for i in path], inst.source, inst.target, k)
    return SolveResult(Answer.YES, seq.length, seq, solver="mcg", shortest=False, tar_k=k, stats=stats)
