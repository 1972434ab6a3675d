"""Reconfiguration rules, sequence validation, and the reductions between rules.

Three rules move a clique one step at a time:

* ``TAR(k)``: add or remove a single vertex, never dropping below ``k`` vertices.
* ``TJ``: swap one vertex for any other vertex, keeping the size.
* ``TS``: like ``TJ``, but the outgoing and incoming vertices must be adjacent.

TS and TJ instances reduce to TAR instances with thresholds ``k`` and ``k - 1``
(``k`` being the common endpoint size), and those reductions double distances.
The opposite reductions only preserve the YES/NO answer.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .graph import Clique, Graph, is_clique, is_independent_set, is_maximal_clique


class RuleKind(str, Enum):
    TAR = "tar"
    TJ = "tj"
    TS = "ts"


@dataclass(frozen=True)
class Rule:
    kind: RuleKind
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind is RuleKind.TAR:
            if self.k is None or self.k < 0:
                raise ValueError("TAR needs a threshold k >= 0")
        elif self.k is not None:
            raise ValueError(f"{self.kind.value.upper()} takes no threshold")

    @classmethod
    def tar(cls, k: int) -> Rule:
        return cls(RuleKind.TAR, k)

    @classmethod
    def tj(cls) -> Rule:
        return cls(RuleKind.TJ)

    @classmethod
    def ts(cls) -> Rule:
        return cls(RuleKind.TS)

    def __str__(self) -> str:
        if self.kind is RuleKind.TAR:
            return f"TAR({self.k})"
        return self.kind.value.upper()


class ImmediateNo(NamedTuple):
    """Returned by a reduction when the instance is NO without any search."""

    reason: str


# reason codes
SIZE_MISMATCH = "size-mismatch"
BELOW_THRESHOLD = "below-threshold"
MAXIMAL_ENDPOINT = "maximal-endpoint"


@dataclass(frozen=True)
class RuleInstance:
    graph: Graph
    source: Clique
    target: Clique
    rule: Rule

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", frozenset(self.source))
        object.__setattr__(self, "target", frozenset(self.target))
        for name in ("source", "target"):
            c = getattr(self, name)
            if not is_clique(self.graph, c):
                raise ValueError(f"{name} {sorted(c)} is not a clique")

    def definitional_no(self) -> str | None:
        """Reason code if the instance is NO by definition alone, else None."""
        if self.source == self.target:
            return None
        if self.rule.kind is RuleKind.TAR:
            if min(len(self.source), len(self.target)) < self.rule.k:
                return BELOW_THRESHOLD
        elif len(self.source) != len(self.target):
            return SIZE_MISMATCH
        return None

    def with_rule(self, rule: Rule, source: Iterable[int] | None = None,
                  target: Iterable[int] | None = None) -> RuleInstance:
        return RuleInstance(
            self.graph,
            self.source if source is None else frozenset(source),
            self.target if target is None else frozenset(target),
            rule,
        )


@dataclass
class ReconfSequence:
    rule: Rule
    cliques: list[Clique]

    def __post_init__(self) -> None:
        self.cliques = [frozenset(c) for c in self.cliques]

    @property
    def length(self) -> int:
        return len(self.cliques) - 1

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


class Violation(NamedTuple):
    index: int
    reason: str


def _step_ok(g: Graph | None, rule: Rule, c1: Clique, c2: Clique) -> bool:
    if rule.kind is RuleKind.TAR:
        return (
            len(c1) >= rule.k
            and len(c2) >= rule.k
            and abs(len(c1) - len(c2)) == 1
            and (c1 < c2 or c2 < c1)
        )
    if len(c1) != len(c2):
        return False
    out = c1 - c2
    if len(out) != 1:
        return False
    if rule.kind is RuleKind.TJ:
        return True
    (v,) = out
    (w,) = c2 - c1
    return g.has_edge(v, w)


def adjacent(g: Graph, rule: Rule, c1: Iterable[int], c2: Iterable[int]) -> bool:
    """True iff ``c2`` is reachable from ``c1`` in one step under ``rule``."""
    c1, c2 = frozenset(c1), frozenset(c2)
    for c in (c1, c2):
        if not is_clique(g, c):
            raise ValueError(f"{sorted(c)} is not a clique")
    return _step_ok(g, rule, c1, c2)


def validate_sequence(inst: RuleInstance, seq: ReconfSequence | Sequence[Iterable[int]]) -> Violation | None:
    """Check ``seq`` as a reconfiguration sequence for ``inst``.

    Returns None when valid, otherwise the first violation found. The index of a
    step violation is the index of the later clique of the offending pair.
    """
    cliques = seq.cliques if isinstance(seq, ReconfSequence) else [frozenset(c) for c in seq]
    rule = inst.rule
    if not cliques:
        return Violation(0, "empty sequence")
    if cliques[0] != inst.source:
        return Violation(0, "does not start at the source clique")
    g = inst.graph
    for i, c in enumerate(cliques):
        if any(not 0 <= v < g.n for v in c):
            return Violation(i, "vertex out of range")
        if not is_clique(g, c):
            return Violation(i, "not a clique")
        if rule.kind is RuleKind.TAR:
            if len(c) < rule.k:
                return Violation(i, f"size {len(c)} below threshold {rule.k}")
        elif len(c) != len(inst.source):
            return Violation(i, "size differs from the source clique")
        if i and not _step_ok(g, rule, cliques[i - 1], c):
            return Violation(i, f"not a single {rule} step from the previous clique")
    if cliques[-1] != inst.target:
        return Violation(len(cliques) - 1, "does not end at the target clique")
    return None


def validate_independent_sequence(g: Graph, sets: Sequence[Iterable[int]], k: int) -> Violation | None:
    """TAR(k) check for a sequence of independent sets of ``g``.

    A list is a TAR(k) sequence of cliques in a graph exactly when it is one of
    independent sets in the complement, which this function lets callers test.
    """
    sets = [frozenset(s) for s in sets]
    rule = Rule.tar(k)
    for i, s in enumerate(sets):
        if not is_independent_set(g, s):
            return Violation(i, "not an independent set")
        if len(s) < k:
            return Violation(i, f"size {len(s)} below threshold {k}")
        if i and not _step_ok(None, rule, sets[i - 1], s):
            return Violation(i, f"not a single {rule} step from the previous set")
    return None


def maximal_extension(g: Graph, c: Iterable[int]) -> Clique:
    """Grow ``c`` into a maximal clique, always adding the lowest-indexed candidate."""
    c = frozenset(c)
    if not is_clique(g, c):
        raise ValueError(f"{sorted(c)} is not a clique")
    members = set(c)
    if members:
        cand = set(g.adj[min(members, key=g.degree)])
        for v in members:
            cand &= g.adj[v]
    else:
        cand = set(range(g.n))
    while cand:
        v = min(cand)
        members.add(v)
        cand &= g.adj[v]
    return frozenset(members)


def lowest(c: Iterable[int], size: int) -> Clique:
    return frozenset(sorted(c)[:size])


def ts_to_tar(inst: RuleInstance) -> RuleInstance | ImmediateNo:
    """TS instance with endpoints of size k -> TAR(k) instance on the same cliques."""
    if inst.rule.kind is not RuleKind.TS:
        raise ValueError("expected a TS instance")
    if len(inst.source) != len(inst.target):
        return ImmediateNo(SIZE_MISMATCH)
    return inst.with_rule(Rule.tar(len(inst.source)))


def tj_to_tar(inst: RuleInstance) -> RuleInstance | ImmediateNo:
    """TJ instance with endpoints of size k -> TAR(k - 1) instance on the same cliques."""
    if inst.rule.kind is not RuleKind.TJ:
        raise ValueError("expected a TJ instance")
    if len(inst.source) != len(inst.target):
        return ImmediateNo(SIZE_MISMATCH)
    # size-0 endpoints are both empty, hence equal
    return inst.with_rule(Rule.tar(max(len(inst.source) - 1, 0)))


def token_to_tar(inst: RuleInstance) -> RuleInstance | ImmediateNo:
    if inst.rule.kind is RuleKind.TS:
        return ts_to_tar(inst)
    if inst.rule.kind is RuleKind.TJ:
        return tj_to_tar(inst)
    return inst


def tar_to_ts(inst: RuleInstance) -> RuleInstance | ImmediateNo:
    """TAR(k) instance -> TS instance on the k lowest-indexed vertices of each endpoint.

    Only the YES/NO answer is preserved, not the distance.
    """
    k = inst.rule.k
    if inst.rule.kind is not RuleKind.TAR:
        raise ValueError("expected a TAR instance")
    if inst.definitional_no():
        return ImmediateNo(BELOW_THRESHOLD)
    return inst.with_rule(Rule.ts(), lowest(inst.source, k), lowest(inst.target, k))


def maximal_endpoint_no(inst: RuleInstance) -> bool:
    """True if a distinct endpoint of size exactly k is a maximal clique (so no move exists)."""
    k = inst.rule.k
    if inst.source == inst.target:
        return False
    return any(len(c) == k and is_maximal_clique(inst.graph, c) for c in (inst.source, inst.target))


def tar_to_tj(inst: RuleInstance) -> RuleInstance | ImmediateNo:
    """TAR(k) instance -> TJ instance with endpoints of size k + 1.

    Endpoints larger than k + 1 keep their k + 1 lowest-indexed vertices; endpoints
    of size k gain the lowest-indexed vertex adjacent to all of their members.
    """
    if inst.rule.kind is not RuleKind.TAR:
        raise ValueError("expected a TAR instance")
    if inst.source == inst.target:
        return inst.with_rule(Rule.tj())
    if inst.definitional_no():
        return ImmediateNo(BELOW_THRESHOLD)
    if maximal_endpoint_no(inst):
        return ImmediateNo(MAXIMAL_ENDPOINT)
    k = inst.rule.k
    g = inst.graph

    def resize(c: Clique) -> Clique:
        if len(c) > k:
            return lowest(c, k + 1)
        cand = set(range(g.n)) - c
        for v in c:
            cand &= g.adj[v]
        return c | {min(cand)}

    return inst.with_rule(Rule.tj(), resize(inst.source), resize(inst.target))


def normalize_tar_sequence(cliques: Sequence[Clique], k: int) -> list[Clique]:
    """Rewrite a TAR(k) sequence so every clique has size k or k + 1.

    Both endpoints must have size k or k + 1 and equal size. Local peaks of size
    at least k + 2 are lowered by swapping the order of their add and remove
    moves; an add immediately undone is cut out. Neither change lengthens the
    sequence, so shortest sequences stay shortest.
    """
    seq = list(cliques)
    i = 1
    while i < len(seq) - 1:
        prev, cur, nxt = seq[i - 1], seq[i], seq[i + 1]
        if len(cur) >= k + 2 and len(prev) < len(cur) > len(nxt):
            if prev == nxt:
                del seq[i:i + 2]
            else:
                (b,) = cur - nxt
                seq[i] = prev - {b}
            i = max(i - 1, 1)
        else:
            i += 1
    return seq


def tar_to_token_sequence(seq: ReconfSequence, rule: Rule, graph: Graph | None = None) -> ReconfSequence:
    """Turn a TAR sequence for a reduced TS/TJ instance into a TS/TJ sequence.

    ``seq`` must use threshold ``k`` for TS or ``k - 1`` for TJ, where ``k`` is
    the common size of its endpoints. A shortest input gives a shortest output
    of half the length.
    """
    if rule.kind is RuleKind.TAR:
        return seq
    first = seq.cliques[0]
    size = len(first)
    if size == 0 or seq.length == 0:
        return ReconfSequence(rule, [first])
    low = size if rule.kind is RuleKind.TS else size - 1
    out = [first]
    for c in normalize_tar_sequence(seq.cliques, low)[1:]:
        if len(c) == size and c != out[-1]:
            out.append(c)
    return ReconfSequence(rule, out)


def parse_instance(text: str, graph: Graph) -> RuleInstance:
    """Parse an instance file: ``r <tar|tj|ts> [k]``, ``s <v...>``, ``t <v...>`` (1-based)."""
    rule: Rule | None = None
    source: frozenset[int] | None = None
    target: frozenset[int] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        try:
            if tag == "r":
                kind = RuleKind(parts[1].lower())
                if kind is RuleKind.TAR:
                    if len(parts) != 3:
                        raise ValueError("TAR needs exactly one threshold")
                    rule = Rule.tar(int(parts[2]))
                else:
                    if len(parts) != 2:
                        raise ValueError(f"{kind.value} takes no threshold")
                    rule = Rule(kind)
            elif tag in ("s", "t"):
                vs = [int(x) - 1 for x in parts[1:]]
                if any(not 0 <= v < graph.n for v in vs):
                    raise ValueError(f"vertex out of range 1..{graph.n}")
                if len(set(vs)) != len(vs):
                    raise ValueError("repeated vertex")
                if tag == "s":
                    source = frozenset(vs)
                else:
                    target = frozenset(vs)
            else:
                raise ValueError(f"unknown line type {tag!r}")
        except (ValueError, IndexError) as exc:
            raise ValueError(f"instance line {lineno}: {exc}") from None
    if rule is None or source is None or target is None:
        raise ValueError("instance needs 'r', 's' and 't' lines")
    return RuleInstance(graph, source, target, rule)


def format_instance(inst: RuleInstance) -> str:
    r = inst.rule
    head = f"r tar {r.k}" if r.kind is RuleKind.TAR else f"r {r.kind.value}"

    def verts(c: Clique) -> str:
        return " ".join(str(v + 1) for v in sorted(c))

    return f"{head}\ns {verts(inst.source)}\nt {verts(inst.target)}\n".replace(" \n", "\n")


def parse_sequence(text: str) -> list[Clique]:
    """One clique per non-comment line, 1-based vertices separated by spaces.

    The empty clique is written as a single ``-``.
    """
    out = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        if s == "-":
            out.append(frozenset())
        else:
            out.append(frozenset(int(x) - 1 for x in s.split()))
    return out


def format_sequence(seq: ReconfSequence | Sequence[Clique]) -> str:
    cliques = seq.cliques if isinstance(seq, ReconfSequence) else seq
    return "".join((" ".join(str(v + 1) for v in sorted(c)) or "-") + "\n" for c in cliques)
