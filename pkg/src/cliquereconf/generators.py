"""Seeded random graphs and instances for testing and benchmarking."""
from __future__ import annotations

import random

from .graph import Clique, Graph
from .rules import Rule, RuleInstance, RuleKind


def random_chordal(n: int, rng: random.Random, max_attach: int = 4, p_isolated: float = 0.0,
                   min_attach: int = 1) -> Graph:
    """Chordal graph grown by simplicial vertices.

    Each new vertex joins a random subset (size at most ``max_attach``) of the
    clique formed by a random earlier vertex and the set that vertex joined.
    Every maximal clique of the result has that form, so any clique can be hit.
    Raising ``min_attach`` (capped by the home clique size) makes graphs denser.
    """
    attach: list[list[int]] = [[] for _ in range(n)]
    edges = []
    for v in range(1, n):
        if rng.random() < p_isolated:
            continue
        u = rng.randrange(v)
        home = attach[u] + [u]
        hi = min(len(home), max_attach)
        size = rng.randint(min(min_attach, hi), hi)
        chosen = rng.sample(home, size)
        attach[v] = chosen
        edges.extend((v, w) for w in chosen)
    return Graph.from_edges(n, edges)


def random_interval(n: int, rng: random.Random, width: float = 3.0) -> Graph:
    """Intersection graph of ``n`` random intervals with left ends in ``[0, n)``."""
    iv = []
    for v in range(n):
        a = rng.random() * n
        iv.append((a, a + rng.random() * width, v))
    iv.sort()
    edges = []
    active: list[tuple[float, int]] = []
    for a, b, v in iv:
        active = [(e, w) for e, w in active if e >= a]
        edges.extend((v, w) for _, w in active)
        active.append((b, v))
    return Graph.from_edges(n, edges)


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def grid(rows: int, cols: int) -> Graph:
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def random_maximal_clique(g: Graph, rng: random.Random, start: int | None = None) -> Clique:
    if g.n == 0:
        return frozenset()
    v = rng.randrange(g.n) if start is None else start
    members = {v}
    cand = set(g.adj[v])
    while cand:
        w = rng.choice(sorted(cand))
        members.add(w)
        cand &= g.adj[w]
    return frozenset(members)


def random_clique(g: Graph, rng: random.Random, min_size: int = 1, size: int | None = None) -> Clique | None:
    """Random subset of a random maximal clique; None if no clique is large enough."""
    lo = min_size if size is None else size
    for _ in range(20):
        m = random_maximal_clique(g, rng)
        if len(m) >= lo:
            s = rng.randint(lo, len(m)) if size is None else size
            return frozenset(rng.sample(sorted(m), s))
    return None


def random_instance(g: Graph, rng: random.Random, kind: RuleKind = RuleKind.TAR,
                    k: int | None = None) -> RuleInstance:
    """Random endpoints (equal sizes for TJ/TS) and, for TAR, a feasible ``k``."""
    source = random_clique(g, rng) or frozenset()
    if kind is RuleKind.TAR:
        target = random_clique(g, rng) or frozenset()
        if k is None:
            k = rng.randint(0, min(len(source), len(target)))
        return RuleInstance(g, source, target, Rule.tar(k))
    target = random_clique(g, rng, size=len(source))
    if target is None:
        target = source
    return RuleInstance(g, source, target, Rule(kind))
