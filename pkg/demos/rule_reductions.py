"""
Moving between the three rules
==============================

A TS or TJ instance can be answered by a TAR solver and the other way round.
This script shows the four translations on the diamond (K4 minus an edge) and
checks each one against exhaustive search.
"""

from cliquereconf import (
    ExactSolver,
    Graph,
    Rule,
    RuleInstance,
    tar_to_tj,
    tar_to_ts,
    tj_to_tar,
    ts_to_tar,
)
from cliquereconf.rules import ImmediateNo

# the diamond: triangles {1,2,3} and {1,2,4} sharing the edge {1,2}
g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
oracle = ExactSolver(g)


def fmt(c):
    return "{" + ",".join(str(v + 1) for v in sorted(c)) + "}"


# TS and TJ on equal-size cliques become TAR with thresholds k and k - 1,
# and the TAR distance is exactly twice the token distance
inst = RuleInstance(g, {0, 2}, {1, 3}, Rule.ts())
for rule, reduce in ((Rule.ts(), ts_to_tar), (Rule.tj(), tj_to_tar)):
    token = inst.with_rule(rule)
    tar = reduce(token)
    d_token, d_tar = oracle.distance(token.source, token.target, rule), oracle.solve(tar).distance
    print(f"{rule}: {fmt(token.source)} -> {fmt(token.target)} distance {d_token}; "
          f"{tar.rule} distance {d_tar}")

# going back, TAR(k) becomes a token instance on cliques of size k (TS) or k + 1 (TJ)
for s, t, k in (({0, 2}, {0, 3}, 2), ({0, 1, 2}, {0, 1, 3}, 3), ({2}, {3}, 1)):
    tar = RuleInstance(g, s, t, Rule.tar(k))
    want = oracle.solve(tar).reachable
    print(f"\nTAR({k}) {fmt(s)} -> {fmt(t)}: reachable={want}")
    for name, red in (("TS", tar_to_ts(tar)), ("TJ", tar_to_tj(tar))):
        if isinstance(red, ImmediateNo):
            # a maximal endpoint of size k cannot move at all under TAR(k)
            print(f"  {name}: answered NO without search ({red.reason})")
            assert not want
        else:
            got = oracle.solve(red).reachable
            print(f"  {name}: {fmt(red.source)} -> {fmt(red.target)} reachable={got}")
            assert got == want
