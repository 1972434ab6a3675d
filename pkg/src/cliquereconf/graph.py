"""Simple undirected graphs, the DIMACS-like text format, and clique predicates.

Vertices are the integers ``0..n-1``. The text format is 1-based, following the
DIMACS ``p edge`` convention::

    c optional comment
    p edge 4 3
    e 1 2
    e 2 3
    e 3 4
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import TypeAlias

Clique: TypeAlias = frozenset[int]


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood ``N(v)`` as a frozenset, so adjacency tests
    are O(1) and neighbourhood iteration is O(deg(v)).
    """

    n: int
    adj: tuple[frozenset[int], ...]
    m: int = field(init=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency list length does not match n")
        object.__setattr__(self, "m", sum(len(a) for a in self.adj) // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph from 0-based edge pairs; duplicates collapse."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def same_edges(self, other: Graph) -> bool:
        return self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _check_members(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for a graph on {g.n} vertices")
    return s


def parse_graph(text: str) -> Graph:
    """Parse graph-file contents (``p edge n m`` header, 1-based ``e u v`` lines).

    The declared edge count is not enforced; duplicate edge lines collapse.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError(f"malformed header {raw.strip()!r}", lineno)
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise GraphFormatError(f"non-integer header field in {raw.strip()!r}", lineno) from None
            if n < 0:
                raise GraphFormatError("negative vertex count", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge line before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError(f"malformed edge line {raw.strip()!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"non-integer vertex in {raw.strip()!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"vertex index out of range 1..{n}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge' header")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"p edge {g.n} {len(edges)}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    """True iff every two distinct members of ``s`` are adjacent in ``g``."""
    members = sorted(_check_members(g, s))
    for i, u in enumerate(members):
        nu = g.adj[u]
        for v in members[i + 1:]:
            if v not in nu:
                return False
    return True


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    members = sorted(_check_members(g, s))
    for i, u in enumerate(members):
        if not g.adj[u].isdisjoint(members[i + 1:]):
            return False
    return True


def is_maximal_clique(g: Graph, c: Iterable[int]) -> bool:
    """True iff ``c`` is a clique with no vertex adjacent to all of its members."""
    c = _check_members(g, c)
    if not is_clique(g, c):
        return False
    if not c:
        return g.n == 0
    common = set(g.adj[min(c, key=g.degree)])
    for v in c:
        common &= g.adj[v]
        if not common:
            return True
    return not common


def complement(g: Graph) -> Graph:
    everything = frozenset(range(g.n))
    return Graph(g.n, tuple(everything - g.adj[v] - {v} for v in range(g.n)))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``s``, relabelled to ``0..|s|-1`` in increasing order.

    Returns the subgraph and a list mapping each new index to its original vertex.
    """
    members = sorted(_check_members(g, s))
    index = {v: i for i, v in enumerate(members)}
    adj = tuple(
        frozenset(index[w] for w in g.adj[v] if w in index) for v in members
    )
    return Graph(len(members), adj), members
