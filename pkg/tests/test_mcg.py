import random

import networkx as nx
import pytest
from conftest import C4, DIAMOND, K3, P4, graphs, seeded_gnp, to_nx
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquereconf.exhaustive import BudgetExceeded, ExactSolver, enumerate_cliques
from cliquereconf.generators import gnp, random_clique
from cliquereconf.graph import Graph, is_maximal_clique
from cliquereconf.mcg import (
    KIntersectionMCG,
    build_mcg,
    enumerate_maximal_cliques,
    materialize_sequence,
    solve_mcg,
)
from cliquereconf.rules import Rule, RuleInstance, validate_sequence


def sets(*cs):
    return [frozenset(c) for c in cs]


class TestEnumerateMaximal:
    def test_examples(self):
        assert enumerate_maximal_cliques(DIAMOND).cliques == sets({0, 1, 2}, {0, 1, 3})
        assert enumerate_maximal_cliques(P4).cliques == sets({0, 1}, {1, 2}, {2, 3})
        assert enumerate_maximal_cliques(K3).cliques == sets({0, 1, 2})

    def test_isolated_vertices_and_empty_graph(self):
        assert enumerate_maximal_cliques(Graph.from_edges(3, [(0, 1)])).cliques == sets({0, 1}, {2})
        assert enumerate_maximal_cliques(Graph.from_edges(0, [])).cliques == [frozenset()]

    def test_budget(self):
        # the cocktail-party graph on 2r vertices has 2^r maximal cliques
        r = 5
        g = Graph.from_edges(2 * r, [(u, v) for u in range(2 * r) for v in range(u + 1, 2 * r) if v != u + r])
        assert len(enumerate_maximal_cliques(g)) == 2**r
        with pytest.raises(BudgetExceeded):
            enumerate_maximal_cliques(g, budget=10)

    @given(graphs(max_n=12))
    def test_matches_networkx(self, g):
        ms = enumerate_maximal_cliques(g)
        want = {frozenset(c) for c in nx.find_cliques(to_nx(g))} if g.n else {frozenset()}
        assert set(ms.cliques) == want and len(ms) == len(want)
        assert all(is_maximal_clique(g, c) for c in ms.cliques)


class TestBuildMCG:
    def test_examples(self):
        ms = enumerate_maximal_cliques(DIAMOND)
        assert build_mcg(ms, 2).edges() == [(0, 1)]
        assert build_mcg(ms, 3).edges() == []
        assert build_mcg(enumerate_maximal_cliques(P4), 1).edges() == [(0, 1), (1, 2)]

    @given(seeded_gnp(max_n=10), st.integers(0, 4))
    def test_edges_match_naive_intersection(self, g, k):
        ms = enumerate_maximal_cliques(g)
        mcg = build_mcg(ms, k)
        want = [(i, j) for i in range(len(ms)) for j in range(i + 1, len(ms))
                if len(ms.cliques[i] & ms.cliques[j]) >= k]
        assert mcg.edges() == want

    def test_path(self):
        mcg = KIntersectionMCG(1, [[1], [0, 2], [1], []])
        assert mcg.path(0, 2) == [0, 1, 2]
        assert mcg.path(0, 3) is None
        assert mcg.path(3, 3) == [3]


class TestMaterialize:
    def test_diamond_example(self):
        seq = materialize_sequence(sets({0, 1, 2}, {0, 1, 3}), {0, 2}, {1, 3}, 2)
        assert seq.cliques == sets({0, 2}, {0, 1, 2}, {0, 1}, {0, 1, 3}, {1, 3})
        assert validate_sequence(RuleInstance(DIAMOND, {0, 2}, {1, 3}, Rule.tar(2)), seq) is None

    def test_single_clique_same_endpoints(self):
        seq = materialize_sequence(sets({0, 1, 2}), {0, 1}, {0, 1}, 2)
        assert seq.length == 0

    def test_p4_path(self):
        seq = materialize_sequence(sets({0, 1}, {1, 2}, {2, 3}), {0, 1}, {2, 3}, 1)
        assert frozenset({1}) in seq.cliques and frozenset({2}) in seq.cliques
        assert validate_sequence(RuleInstance(P4, {0, 1}, {2, 3}, Rule.tar(1)), seq) is None

    def test_precondition_violations(self):
        with pytest.raises(RuntimeError):
            materialize_sequence(sets({0, 1, 2}, {0, 1, 3}), {0, 2}, {1, 3}, 3)
        with pytest.raises(RuntimeError):
            materialize_sequence(sets({0, 1}), {2}, {0}, 1)

    def test_within_one_clique_is_the_symmetric_difference(self):
        seq = materialize_sequence(sets({0, 1, 2, 3}), {0, 1}, {2, 3}, 1)
        assert seq.length == 4


class TestSolveMCG:
    def test_examples(self):
        assert solve_mcg(RuleInstance(DIAMOND, {0, 2}, {1, 3}, Rule.tar(2))).reachable
        res = solve_mcg(RuleInstance(DIAMOND, {0, 1, 2}, {0, 1, 3}, Rule.tar(3)))
        assert not res.reachable and res.reason == "maximal-endpoint"
        assert solve_mcg(RuleInstance(K3, {0}, {1, 2}, Rule.tar(1))).reachable

    def test_not_shortest_flag(self):
        res = solve_mcg(RuleInstance(C4, {0}, {2}, Rule.tar(1)))
        assert res.reachable and not res.shortest and res.solver == "mcg"

    def test_token_rules(self):
        res = solve_mcg(RuleInstance(C4, {0}, {2}, Rule.ts()))
        assert res.reachable and res.tar_k == 1
        assert validate_sequence(RuleInstance(C4, {0}, {2}, Rule.ts()), res.sequence) is None
        assert not solve_mcg(RuleInstance(C4, {0}, {1, 2}, Rule.tj())).reachable

    @settings(max_examples=60, deadline=None)
    @given(seeded_gnp(max_n=8), st.data())
    def test_agrees_with_exhaustive_on_all_clique_pairs(self, g, data):
        cliques = enumerate_cliques(g)
        k = data.draw(st.integers(0, min(3, max(map(len, cliques)))))
        big = [c for c in cliques if len(c) >= k]
        ex = ExactSolver(g)
        ms = enumerate_maximal_cliques(g)
        for _ in range(5):
            s, t = data.draw(st.sampled_from(big)), data.draw(st.sampled_from(big))
            i = RuleInstance(g, s, t, Rule.tar(k))
            res = solve_mcg(i, ms=ms)
            assert res.answer is ex.solve(i).answer
            if res.sequence is not None:
                assert validate_sequence(i, res.sequence) is None


@pytest.mark.parametrize("seed", range(30))
def test_answer_does_not_depend_on_chosen_maximal_cliques(seed):
    rng = random.Random(seed)
    g = gnp(rng.randint(2, 9), 0.6, rng)
    ms = enumerate_maximal_cliques(g)
    s, t = random_clique(g, rng), random_clique(g, rng)
    for k in range(min(len(s), len(t)) + 1):
        mcg = build_mcg(ms, k)
        answers = {mcg.path(a, b) is not None
                   for a in ms.all_containing(s) for b in ms.all_containing(t)}
        assert len(answers) == 1
