"""Randomized cross-validation batteries.

Each battery draws small seeded instances and checks one family of claims
against the exhaustive solver:

* ``oracle``: maximal-clique-graph reachability agrees with BFS on random graphs.
* ``rules``: token sliding / jumping distances are half the TAR distances at
  thresholds ``k`` and ``k - 1``.
* ``reductions``: the TAR to TS / TJ reductions keep the YES/NO answer.
* ``chordal``: the chordal pipeline returns exact distances, valid sequences,
  and sequences with contiguous vertex membership inside the clique path.
* ``normal``: restricting TAR(k) to cliques of size k and k + 1 keeps distances.
* ``within``: inside one clique, the distance is the symmetric difference.

A failing instance is shrunk (vertices, then edges) while it still fails, and
can be written out as graph and instance files.
"""
from __future__ import annotations

import random
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import rules
from .chordal import (
    NotChordalError,
    contiguous_membership,
    path_containment,
    reduce_to_interval,
    solve_chordal,
)
from .exhaustive import ExactSolver
from .generators import gnp, random_chordal, random_clique, random_maximal_clique
from .graph import Graph, format_graph, induced_subgraph, is_clique
from .mcg import solve_mcg
from .result import INF
from .rules import ImmediateNo, Rule, RuleInstance, RuleKind

BATTERIES = ("oracle", "rules", "reductions", "chordal", "normal", "within")
INJECTIONS = ("tie-break", "tj-threshold")

# A check returns None when the instance behaves, else a short description.
Check = Callable[[RuleInstance], "str | None"]


@dataclass
class Discrepancy:
    battery: str
    seed: int
    message: str
    instance: RuleInstance
    check: Check | None = field(default=None, repr=False, compare=False)

    def describe(self) -> str:
        g = self.instance.graph
        return (f"[{self.battery} seed={self.seed}] {self.message}: n={g.n} m={g.m} "
                f"{self.instance.rule} {_fmt(self.instance.source)} -> {_fmt(self.instance.target)}")


@dataclass
class SeedOutcome:
    battery: str
    seed: int
    checks: int = 0
    discrepancies: list[Discrepancy] = field(default_factory=list)
    counters: Counter = field(default_factory=Counter)


@dataclass
class Report:
    outcomes: list[SeedOutcome]

    @property
    def discrepancies(self) -> list[Discrepancy]:
        return [d for o in self.outcomes for d in o.discrepancies]

    def checks(self, battery: str | None = None) -> int:
        return sum(o.checks for o in self.outcomes if battery in (None, o.battery))

    def counter(self, name: str, battery: str | None = None) -> int:
        return sum(o.counters[name] for o in self.outcomes if battery in (None, o.battery))

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def summary(self) -> str:
        lines = []
        for b in BATTERIES:
            outs = [o for o in self.outcomes if o.battery == b]
            if not outs:
                continue
            bad = sum(len(o.discrepancies) for o in outs)
            extra = "".join(f", {k}={v}" for k, v in sorted(sum((o.counters for o in outs), Counter()).items()))
            lines.append(f"{b}: {len(outs)} seeds, {sum(o.checks for o in outs)} checks, "
                         f"{bad} discrepancies{extra}")
        lines.extend(d.describe() for d in self.discrepancies[:20])
        lines.append(f"{len(self.discrepancies)} discrepancies")
        return "\n".join(lines)


def _fmt(c: Iterable[int]) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(c)) + "}"


def _dist(ex: ExactSolver, inst: RuleInstance | ImmediateNo, **kw) -> float:
    if isinstance(inst, ImmediateNo):
        return INF
    return ex.solve(inst, **kw).distance


def _tj_reduce(inst: RuleInstance, inject: str | None) -> RuleInstance | ImmediateNo:
    red = rules.tj_to_tar(inst)
    if inject == "tj-threshold" and not isinstance(red, ImmediateNo):
        red = red.with_rule(Rule.tar(red.rule.k + 1))
    return red


class _Battery:
    """Collects checks for one seed; failing checks become discrepancies."""

    def __init__(self, name: str, seed: int):
        self.out = SeedOutcome(name, seed)

    def run(self, inst: RuleInstance, check: Check) -> None:
        self.out.checks += 1
        try:
            msg = check(inst)
        except Exception as exc:  # a crash is a discrepancy too
            msg = f"{type(exc).__name__}: {exc}"
        if msg:
            self.out.discrepancies.append(Discrepancy(self.out.battery, self.out.seed, msg, inst, check))


def _rng(battery: str, seed: int) -> random.Random:
    return random.Random(f"{battery}:{seed}")


def _small_graph(rng: random.Random, max_n: int) -> Graph:
    n = rng.randint(1, max_n)
    if rng.random() < 0.5:
        return gnp(n, rng.choice((0.3, 0.5, 0.7)), rng)
    return random_chordal(n, rng, max_attach=rng.randint(1, 5), p_isolated=0.1)


def _endpoint_pair(g: Graph, rng: random.Random) -> tuple[frozenset[int], frozenset[int]]:
    return random_clique(g, rng, min_size=0) or frozenset(), random_clique(g, rng, min_size=0) or frozenset()


def _equal_pair(g: Graph, rng: random.Random) -> tuple[frozenset[int], frozenset[int]] | None:
    s = random_clique(g, rng)
    if not s:
        return None
    t = None
    for _ in range(5):  # prefer distinct endpoints
        t = random_clique(g, rng, size=len(s))
        if t != s:
            break
    return (s, t) if t is not None else None


# -- batteries ---------------------------------------------------------------

def _oracle(seed: int, max_n: int, inject: str | None) -> SeedOutcome:
    rng = _rng("oracle", seed)
    g = gnp(rng.randint(1, max_n), rng.choice((0.3, 0.5, 0.7)), rng)
    ex = ExactSolver(g)
    bat = _Battery("oracle", seed)

    def check(inst: RuleInstance) -> str | None:
        exact = ExactSolver(inst.graph).solve(inst) if inst.graph is not g else ex.solve(inst)
        res = solve_mcg(inst)
        if res.answer is not exact.answer:
            return f"mcg says {res.answer.value}, exact says {exact.answer.value}"
        if res.sequence is not None:
            bat.out.counters["sequences"] += 1
            if v := rules.validate_sequence(inst, res.sequence):
                return f"mcg sequence invalid at {v.index}: {v.reason}"
        return None

    for _ in range(2):
        s, t = _endpoint_pair(g, rng)
        for k in range(min(len(s), len(t)) + 1):
            bat.run(RuleInstance(g, s, t, Rule.tar(k)), check)
    return bat.out


def _rules(seed: int, max_n: int, inject: str | None) -> SeedOutcome:
    rng = _rng("rules", seed)
    bat = _Battery("rules", seed)
    pair = None
    while pair is None:
        g = _small_graph(rng, max_n)
        pair = _equal_pair(g, rng)
    s, t = pair

    def check(inst: RuleInstance) -> str | None:
        ex = ExactSolver(inst.graph)
        k = len(inst.source)
        ts = ex.solve(inst.with_rule(Rule.ts())).distance
        tj = ex.solve(inst.with_rule(Rule.tj())).distance
        tar_k = _dist(ex, rules.ts_to_tar(inst.with_rule(Rule.ts())))
        red = _tj_reduce(inst.with_rule(Rule.tj()), inject)
        tar_k1 = _dist(ex, red)
        if ts != tar_k / 2:
            return f"TS distance {ts} but TAR({k}) distance {tar_k}"
        if tj != tar_k1 / 2:
            used = red.rule.k if isinstance(red, RuleInstance) else k - 1
            return f"TJ distance {tj} but TAR({used}) distance {tar_k1}"
        return None

    bat.run(RuleInstance(g, s, t, Rule.ts()), check)
    return bat.out


def _reduction_instance(g: Graph, rng: random.Random) -> RuleInstance | None:
    if rng.random() < 0.35:
        # a maximal endpoint at threshold k = its size exercises the NO shortcut
        s = random_maximal_clique(g, rng)
        t = random_clique(g, rng, min_size=len(s))
        if t is None or t == s:
            return None
        return RuleInstance(g, s, t, Rule.tar(len(s)))
    s, t = _endpoint_pair(g, rng)
    return RuleInstance(g, s, t, Rule.tar(rng.randint(0, min(len(s), len(t)))))


def _reductions(seed: int, max_n: int, inject: str | None) -> SeedOutcome:
    rng = _rng("reductions", seed)
    bat = _Battery("reductions", seed)
    inst = None
    while inst is None:
        inst = _reduction_instance(_small_graph(rng, max_n), rng)
    red_tj = rules.tar_to_tj(inst)
    if isinstance(red_tj, ImmediateNo) and red_tj.reason == rules.MAXIMAL_ENDPOINT:
        bat.out.counters["shortcut"] += 1

    def check(inst: RuleInstance) -> str | None:
        ex = ExactSolver(inst.graph)
        want = ex.solve(inst).reachable
        for name, red in (("TS", rules.tar_to_ts(inst)), ("TJ", rules.tar_to_tj(inst))):
            if isinstance(red, ImmediateNo):
                got = False
            else:
                if red.rule.kind is RuleKind.TJ and len(red.source) != inst.rule.k + 1 and red.source != red.target:
                    return f"TJ endpoints have size {len(red.source)}, expected {inst.rule.k + 1}"
                got = ex.solve(red).reachable
            if got != want:
                return f"reduction to {name} answers {got}, TAR answers {want}"
        return None

    bat.run(inst, check)
    return bat.out


def _chordal(seed: int, max_n: int, inject: str | None) -> SeedOutcome:
    rng = _rng("chordal", seed)
    g = random_chordal(rng.randint(1, max_n), rng, max_attach=rng.randint(1, 5), p_isolated=0.1)
    ex = ExactSolver(g)
    bat = _Battery("chordal", seed)
    tie = "high" if inject == "tie-break" else "low"

    def check(inst: RuleInstance) -> str | None:
        exact = ExactSolver(inst.graph).solve(inst) if inst.graph is not g else ex.solve(inst)
        try:
            res = solve_chordal(inst, tie_break=tie)
        except NotChordalError:
            return None  # only reachable while shrinking
        if res.distance != exact.distance:
            return f"chordal distance {res.distance}, exact distance {exact.distance}"
        if res.sequence is None:
            return None
        if res.sequence.length != res.distance:
            return f"sequence length {res.sequence.length} differs from distance {res.distance}"
        bat.out.counters["sequences"] += 1
        if v := rules.validate_sequence(inst, res.sequence):
            return f"sequence invalid at {v.index}: {v.reason}"
        if inst.rule.kind is RuleKind.TAR and res.distance > 0:
            bat.out.counters["contiguous"] += 1
            if (u := contiguous_membership(res.sequence.cliques)) is not None:
                return f"vertex {u + 1} leaves the sequence and returns"
            path = reduce_to_interval(inst).path
            if (i := path_containment(path, res.sequence.cliques)) is not None:
                return f"clique {i} breaks monotone containment in the clique path"
        return None

    for _ in range(2):
        s, t = _endpoint_pair(g, rng)
        for k in range(min(len(s), len(t)) + 1):
            bat.run(RuleInstance(g, s, t, Rule.tar(k)), check)
    pair = _equal_pair(g, rng)
    if pair:
        for rule in (Rule.ts(), Rule.tj()):
            bat.run(RuleInstance(g, *pair, rule), check)
    return bat.out


def _normal(seed: int, max_n: int, inject: str | None) -> SeedOutcome:
    rng = _rng("normal", seed)
    bat = _Battery("normal", seed)
    pair = None
    while pair is None:
        g = _small_graph(rng, max_n)
        pair = _equal_pair(g, rng)

    def check(inst: RuleInstance) -> str | None:
        ex = ExactSolver(inst.graph)
        k = inst.rule.k
        full = ex.solve(inst).distance
        narrow = ex.solve(inst, max_size=k + 1).distance
        if full != narrow:
            return f"TAR({k}) distance {full}, sizes {k}..{k + 1} only {narrow}"
        return None

    bat.run(RuleInstance(g, *pair, Rule.tar(len(pair[0]))), check)
    return bat.out


def _within(seed: int, max_n: int, inject: str | None) -> SeedOutcome:
    rng = _rng("within", seed)
    bat = _Battery("within", seed)
    g = _small_graph(rng, max_n)
    m = sorted(random_maximal_clique(g, rng))
    s = frozenset(v for v in m if rng.random() < 0.5)
    t = frozenset(v for v in m if rng.random() < 0.5)
    k = rng.randint(0, min(len(s), len(t)))

    def check(inst: RuleInstance) -> str | None:
        if not is_clique(inst.graph, inst.source | inst.target):
            return None  # only reachable while shrinking
        d = ExactSolver(inst.graph).solve(inst).distance
        want = len(inst.source ^ inst.target)
        return None if d == want else f"distance {d}, symmetric difference {want}"

    bat.run(RuleInstance(g, s, t, Rule.tar(k)), check)
    return bat.out


_RUNNERS: dict[str, Callable[[int, int, str | None], SeedOutcome]] = {
    "oracle": _oracle, "rules": _rules, "reductions": _reductions,
    "chordal": _chordal, "normal": _normal, "within": _within,
}
DEFAULT_MAX_N = {"oracle": 10, "rules": 9, "reductions": 9, "chordal": 12, "normal": 9, "within": 9}


def run_seed(battery: str, seed: int, max_n: int | None = None, inject: str | None = None) -> SeedOutcome:
    if battery not in _RUNNERS:
        raise ValueError(f"unknown battery {battery!r}; choose from {', '.join(BATTERIES)}")
    if inject is not None and inject not in INJECTIONS:
        raise ValueError(f"unknown injection {inject!r}; choose from {', '.join(INJECTIONS)}")
    return _RUNNERS[battery](seed, max_n or DEFAULT_MAX_N[battery], inject)


def _run_task(task: tuple[str, int, int | None, str | None]) -> SeedOutcome:
    out = run_seed(*task)
    for d in out.discrepancies:
        d.check = None  # closures do not cross process boundaries
    return out


def crosscheck(count: int = 500, seed: int = 0, batteries: Sequence[str] = BATTERIES,
               max_n: int | None = None, inject: str | None = None, workers: int = 1) -> Report:
    """Run ``count`` seeds (``seed``, ``seed + 1``, ...) through each battery.

    With ``workers > 1`` seeds run in a process pool; the report is ordered by
    battery and seed either way.
    """
    tasks = [(b, s, max_n, inject) for b in batteries for s in range(seed, seed + count)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outs = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (8 * workers))))
    else:
        outs = [run_seed(*t) for t in tasks]
    order = {b: i for i, b in enumerate(BATTERIES)}
    outs.sort(key=lambda o: (order[o.battery], o.seed))
    return Report(outs)


# -- shrinking ---------------------------------------------------------------

def _fails(check: Check, inst: RuleInstance) -> bool:
    try:
        return bool(check(inst))
    except Exception:
        return True


def minimize(d: Discrepancy) -> RuleInstance:
    """Smallest instance found by greedily deleting vertices, then edges, while the check still fails.

    Endpoint vertices and edges inside an endpoint are kept. Without the
    original check (e.g. after a process pool) the instance is returned as is.
    """
    inst, check = d.instance, d.check
    if check is None:
        return inst
    changed = True
    while changed:
        changed = False
        keep = inst.source | inst.target
        for v in sorted(set(range(inst.graph.n)) - keep, reverse=True):
            h, old = induced_subgraph(inst.graph, set(range(inst.graph.n)) - {v})
            new = {u: i for i, u in enumerate(old)}
            cand = RuleInstance(h, {new[u] for u in inst.source}, {new[u] for u in inst.target}, inst.rule)
            if _fails(check, cand):
                inst, changed = cand, True
                break
        if changed:
            continue
        for a, b in inst.graph.edges():
            if {a, b} <= inst.source or {a, b} <= inst.target:
                continue
            h = Graph.from_edges(inst.graph.n, [e for e in inst.graph.edges() if e != (a, b)])
            cand = RuleInstance(h, inst.source, inst.target, inst.rule)
            if _fails(check, cand):
                inst, changed = cand, True
                break
    return inst


def dump_reproducer(d: Discrepancy, directory: str | Path) -> tuple[Path, Path]:
    """Write the minimized instance as ``<battery>-<seed>.graph`` / ``.inst`` files."""
    inst = minimize(d)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = directory / f"{d.battery}-{d.seed}"
    gpath, ipath = stem.with_suffix(".graph"), stem.with_suffix(".inst")
    gpath.write_text(f"c {d.message}\n" + format_graph(inst.graph))
    ipath.write_text(rules.format_instance(inst))
    return gpath, ipath


__all__ = [
    "BATTERIES", "INJECTIONS", "Discrepancy", "Report", "SeedOutcome", "crosscheck",
    "dump_reproducer", "minimize", "run_seed",
]
