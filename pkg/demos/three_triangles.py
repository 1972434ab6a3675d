"""
Walking a clique across three triangles
=======================================

Three triangles glued along edges form the interval graph with clique path
{1,2,3} - {2,3,4} - {3,4,5}. We move the edge {1,2} to the edge {4,5} under
each rule and print the sequences the solvers return.
"""

from cliquereconf import Graph, Rule, RuleInstance, reduce_to_interval, solve_chordal, solve_exact

# vertices are 0-based in code and 1-based in every printout
g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
source, target = {0, 1}, {3, 4}


def show(seq):
    return "  ->  ".join("{" + ",".join(str(v + 1) for v in sorted(c)) + "}" for c in seq.cliques)


# the chordal pipeline first finds the stretch of the clique tree between the endpoints
path = reduce_to_interval(RuleInstance(g, source, target, Rule.tar(2))).path
print("clique path:", [sorted(v + 1 for v in bag) for bag in path.bags])

# TAR(k) keeps every intermediate clique at size k or more, so the walk goes
# through each triangle; lowering k lets it shrink to a single vertex instead
for k in (2, 1, 0):
    res = solve_chordal(RuleInstance(g, source, target, Rule.tar(k)))
    print(f"\nTAR({k}) distance {res.distance}")
    print("  ", show(res.sequence))

# token rules run on TAR and halve the distance; the threshold used is reported back
for rule in (Rule.ts(), Rule.tj()):
    inst = RuleInstance(g, source, target, rule)
    res = solve_chordal(inst)
    print(f"\n{rule} distance {res.distance} (via TAR({res.tar_k}))")
    print("  ", show(res.sequence))
    # the exhaustive search over all cliques agrees
    assert solve_exact(inst).distance == res.distance
