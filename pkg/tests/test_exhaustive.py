import itertools
import random

import pytest
from conftest import DIAMOND, K3, P4, TWO_EDGES, graphs, to_nx
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquereconf.exhaustive import (
    BudgetExceeded,
    ExactSolver,
    TreeDecomposition,
    TreeDecompositionError,
    build_reconfiguration_graph,
    enumerate_cliques,
    enumerate_cliques_from_td,
    format_td,
    parse_td,
    solve_exact,
)
from cliquereconf.generators import gnp
from cliquereconf.graph import Graph, is_clique
from cliquereconf.result import INF, Answer
from cliquereconf.rules import Rule, RuleInstance, adjacent, validate_sequence


def sets(*cs):
    return [frozenset(c) for c in cs]


class TestEnumerate:
    def test_examples(self):
        assert enumerate_cliques(K3, 1) == sets({0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2})
        assert enumerate_cliques(P4, 2) == sets({0, 1}, {1, 2}, {2, 3})
        assert enumerate_cliques(DIAMOND, 3) == sets({0, 1, 2}, {0, 1, 3})

    def test_empty_clique_included_at_min_zero(self):
        assert enumerate_cliques(P4)[0] == frozenset()

    def test_budget(self):
        with pytest.raises(BudgetExceeded, match="5"):
            enumerate_cliques(K3, budget=5)

    @given(graphs(max_n=9))
    def test_matches_subset_brute_force(self, g):
        brute = [frozenset(c) for r in range(g.n + 1) for c in itertools.combinations(range(g.n), r)
                 if is_clique(g, c)]
        got = enumerate_cliques(g)
        assert len(got) == len(set(got))
        assert set(got) == set(brute)


class TestReconfigurationGraph:
    def test_k3_tar(self):
        rg = build_reconfiguration_graph(K3, enumerate_cliques(K3, 1), Rule.tar(1))
        assert len(rg.nodes) == 7 and rg.edge_count == 9

    def test_p4_ts_is_the_graph_itself(self):
        rg = build_reconfiguration_graph(P4, enumerate_cliques(P4, 1, 1), Rule.ts())
        assert sorted(tuple(sorted(a | b)) for a, b in rg.edges()) == [(0, 1), (1, 2), (2, 3)]

    def test_p4_tj_is_complete(self):
        rg = build_reconfiguration_graph(P4, enumerate_cliques(P4, 1, 1), Rule.tj())
        assert len(rg.nodes) == 4 and rg.edge_count == 6

    @given(graphs(max_n=7), st.sampled_from([Rule.tar(0), Rule.tar(1), Rule.tar(2), Rule.tj(), Rule.ts()]))
    def test_edges_are_exactly_adjacent_pairs(self, g, rule):
        cliques = enumerate_cliques(g, rule.k or 0)
        if rule.k is None:
            cliques = [c for c in cliques if len(c) == 2]
        rg = build_reconfiguration_graph(g, cliques, rule)
        got = {frozenset(e) for e in rg.edges()}
        want = {frozenset((a, b)) for a, b in itertools.combinations(cliques, 2) if adjacent(g, rule, a, b)}
        assert got == want


class TestSolveExact:
    def test_p4_path(self):
        res = solve_exact(RuleInstance(P4, {0}, {3}, Rule.tar(1)))
        assert res.answer is Answer.YES and res.distance == 6
        assert res.sequence.cliques == sets({0}, {0, 1}, {1}, {1, 2}, {2}, {2, 3}, {3})

    def test_equal_endpoints(self):
        res = solve_exact(RuleInstance(P4, {1, 2}, {1, 2}, Rule.tar(2)))
        assert res.distance == 0 and res.sequence.length == 0

    def test_disconnected(self):
        res = solve_exact(RuleInstance(TWO_EDGES, {0, 1}, {2, 3}, Rule.tar(2)))
        assert res.answer is Answer.NO and res.distance == INF and res.sequence is None

    def test_threshold_zero_passes_through_empty_clique(self):
        res = solve_exact(RuleInstance(TWO_EDGES, {0, 1}, {2, 3}, Rule.tar(0)))
        assert res.distance == 4 and frozenset() in res.sequence.cliques

    def test_below_threshold_is_no(self):
        res = solve_exact(RuleInstance(P4, {0}, {1, 2}, Rule.tar(2)))
        assert res.answer is Answer.NO and res.reason == "below-threshold"

    def test_diamond(self):
        ex = ExactSolver(DIAMOND)
        assert ex.distance({0, 1, 2}, {0, 1, 3}, Rule.tar(3)) == INF
        assert ex.distance({0, 1, 2}, {0, 1, 3}, Rule.tar(2)) == 2
        # {0,2} -> {0,1,2} -> {0,1} -> {0,1,3} -> {0,3}; {0,2,3} is not a clique
        assert ex.distance({0, 2}, {0, 3}, Rule.tar(2)) == 4

    def test_size_restricted_search(self):
        ex = ExactSolver(K3)
        i = RuleInstance(K3, {0}, {1}, Rule.tar(0))
        assert ex.solve(i).distance == 2
        assert ex.solve(i, max_size=0).distance == INF

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=7), st.data())
    def test_sequences_validate_and_triangle_inequality(self, g, data):
        cliques = enumerate_cliques(g)
        a, b, c = (data.draw(st.sampled_from(cliques)) for _ in range(3))
        ex = ExactSolver(g)
        k = data.draw(st.integers(0, min(len(a), len(b), len(c))))
        rule = Rule.tar(k)
        res = ex.solve(RuleInstance(g, a, b, rule))
        if res.reachable:
            assert validate_sequence(RuleInstance(g, a, b, rule), res.sequence) is None
            assert res.sequence.length == res.distance
            assert res.distance >= len(a ^ b)
        else:
            assert res.sequence is None
        assert ex.distance(a, c, rule) <= ex.distance(a, b, rule) + ex.distance(b, c, rule)


def _path_td(n):
    return TreeDecomposition([frozenset({i, i + 1}) for i in range(n - 1)], [(i, i + 1) for i in range(n - 2)])


class TestTreeDecomposition:
    def test_p4_path_decomposition(self):
        td = _path_td(4)
        td.validate(P4)
        assert td.width == 1
        assert enumerate_cliques_from_td(P4, td, 1) == enumerate_cliques(P4, 1)
        assert len(enumerate_cliques_from_td(P4, td, 1)) == 7

    def test_single_bag(self):
        td = TreeDecomposition([frozenset({0, 1, 2})])
        assert len(enumerate_cliques_from_td(K3, td, 1)) == 7

    def test_missing_edge_coverage(self):
        td = TreeDecomposition([frozenset({0, 1}), frozenset({2, 3}), frozenset({1})], [(0, 2), (2, 1)])
        with pytest.raises(TreeDecompositionError, match="edge"):
            enumerate_cliques_from_td(P4, td)

    def test_disconnected_trace(self):
        # vertex 0 sits in the first and last bag of a chain but not in between
        td = TreeDecomposition(sets({0, 1}, {1, 2}, {2, 3}, {0}), [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(TreeDecompositionError, match="vertex 1"):
            td.validate(P4)

    def test_not_a_tree(self):
        td = TreeDecomposition([frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})], [(0, 1)])
        with pytest.raises(TreeDecompositionError, match="tree"):
            td.validate(P4)

    def test_pace_round_trip(self):
        text = "c path\ns td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n"
        td = parse_td(text)
        assert td.bags == sets({0, 1}, {1, 2}, {2, 3}) and td.edges == [(0, 1), (1, 2)]
        assert parse_td(format_td(td, 4)) == td

    @pytest.mark.parametrize("text", ["b 1 1\n", "s td 2 2 4\nb 1 1 2\n", "s td 1 2\n", "s td 1 1 1\nb 1 1\n1 2 3\n"])
    def test_bad_td_files(self, text):
        with pytest.raises(TreeDecompositionError):
            parse_td(text)

    def test_exact_solver_with_td(self):
        td = _path_td(4)
        res = ExactSolver(P4, td=td).solve(RuleInstance(P4, {0}, {3}, Rule.tar(1)))
        assert res.distance == 6


def _random_td(g: Graph, rng: random.Random) -> TreeDecomposition:
    """Decomposition from a random elimination ordering (always valid)."""
    h = to_nx(g)
    order = list(range(g.n))
    rng.shuffle(order)
    bags, edges, home = [], [], {}
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        nb = set(h[v])
        bags.append(frozenset(nb | {v}))
        home[v] = len(bags) - 1
        for a in nb:
            for b in nb:
                if a != b:
                    h.add_edge(a, b)
        h.remove_node(v)
    for v in order:
        later = [u for u in bags[home[v]] if u != v]
        if later:
            edges.append((home[v], home[min(later, key=pos.__getitem__)]))
    # join the components of the elimination forest into one tree
    roots = [home[v] for v in order if all(pos[u] <= pos[v] for u in bags[home[v]])]
    edges.extend((roots[0], r) for r in roots[1:])
    return TreeDecomposition(bags, edges)


@pytest.mark.parametrize("seed", range(200))
def test_td_enumeration_matches_direct_enumeration(seed):
    rng = random.Random(seed)
    g = gnp(rng.randint(1, 9), rng.choice((0.2, 0.4, 0.6)), rng)
    td = _random_td(g, rng)
    td.validate(g)
    assert enumerate_cliques_from_td(g, td) == enumerate_cliques(g)
