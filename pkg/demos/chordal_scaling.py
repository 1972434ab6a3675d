"""
How the chordal solver grows with the graph
===========================================

We grow chordal graphs by attaching simplicial vertices, double the vertex
count a few times, and time the end-to-end chordal solve between the first
and the last vertex. The time per edge should stay roughly flat.
"""

import random
import sys
import time

from cliquereconf import Rule, RuleInstance, solve_chordal
from cliquereconf.generators import random_chordal

sizes = [int(a) for a in sys.argv[1:]] or [25_000, 50_000, 100_000, 200_000]

previous = None
for n in sizes:
    g = random_chordal(n, random.Random(n), max_attach=8, min_attach=4)
    inst = RuleInstance(g, {0}, {n - 1}, Rule.tar(1))
    # best of three keeps scheduler noise out of the comparison
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        res = solve_chordal(inst)
        best = min(best, time.perf_counter() - t0)
    growth = f"x{best / previous:.2f}" if previous else ""
    print(f"n={n:>7} m={g.m:>8} distance={res.distance:>4} time={best:.3f} s "
          f"({best / g.m * 1e6:.2f} us/edge) {growth}")
    previous = best
