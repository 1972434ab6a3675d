"""Acceptance criteria, each run at its stated size and tolerance.

Every test records one PASS/FAIL line; ``conftest.py`` prints the collected
lines in the terminal summary so they show up in a plain ``pytest -v`` run.
"""

import random
import time

import pytest

from cliquereconf.chordal import solve_chordal
from cliquereconf.crosscheck import crosscheck
from cliquereconf.generators import random_chordal
from cliquereconf.rules import Rule, RuleInstance

pytestmark = pytest.mark.acceptance

LINES: list[str] = []
_REPORTS: dict[str, tuple] = {}


def record(number: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    LINES.append(line)
    print(line)


def battery(name: str, count: int):
    """Run (once) the crosscheck battery and its wall time."""
    if name not in _REPORTS:
        t0 = time.perf_counter()
        report = crosscheck(count, batteries=[name])
        _REPORTS[name] = (report, time.perf_counter() - t0)
    return _REPORTS[name]


def describe(report, seconds: float) -> str:
    return f"{report.checks()} checks, {len(report.discrepancies)} discrepancies, {seconds:.1f} s"


def first_problem(report) -> str:
    return "" if report.ok else f"; first: {report.discrepancies[0].describe()}"


def test_1_mcg_matches_exhaustive_oracle():
    report, secs = battery("oracle", 500)
    ok = report.ok and secs < 60
    record(1, "oracle equivalence", ok, describe(report, secs) + first_problem(report))
    assert report.ok, report.discrepancies[0].describe()
    assert secs < 60


def test_2_chordal_distance_is_exact():
    report, secs = battery("chordal", 500)
    ok = report.ok and secs < 120
    record(2, "chordal exactness", ok, describe(report, secs) + first_problem(report))
    assert report.ok, report.discrepancies[0].describe()
    assert secs < 120


def test_3_token_rules_are_half_of_tar():
    report, secs = battery("rules", 300)
    record(3, "rule equivalence", report.ok, describe(report, secs) + first_problem(report))
    assert report.checks() == 300
    assert report.ok, report.discrepancies[0].describe()


def test_4_reductions_preserve_answers():
    report, secs = battery("reductions", 300)
    hits = report.counter("shortcut")
    ok = report.ok and hits >= 20
    record(4, "reduction soundness", ok, describe(report, secs) + f", {hits} shortcut hits" + first_problem(report))
    assert report.checks() == 300
    assert report.ok, report.discrepancies[0].describe()
    assert hits >= 20


def test_5_normal_form_distance():
    report, secs = battery("normal", 200)
    record(5, "normal form", report.ok, describe(report, secs) + first_problem(report))
    assert report.checks() == 200
    assert report.ok, report.discrepancies[0].describe()


def test_6_sequences_valid_and_contiguous():
    reports = [battery("oracle", 500)[0], battery("chordal", 500)[0]]
    seqs = sum(r.counter("sequences") for r in reports)
    contiguous = sum(r.counter("contiguous") for r in reports)
    bad = [d for r in reports for d in r.discrepancies
           if "invalid" in d.message or "leaves the sequence" in d.message or "containment" in d.message]
    ok = not bad and seqs > 0 and contiguous > 0
    record(6, "sequence validity", ok,
           f"{seqs} sequences validated, {contiguous} greedy sequences contiguous, {len(bad)} failures")
    assert not bad, bad[0].describe()
    assert seqs > 0 and contiguous > 0


SCALING_N = (50_000, 100_000, 200_000)


def best_time(inst: RuleInstance, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        solve_chordal(inst)
        best = min(best, time.perf_counter() - t0)
    return best


def test_7_chordal_solver_scales_linearly():
    times, sizes = [], []
    for n in SCALING_N:
        g = random_chordal(n, random.Random(n), max_attach=8, min_attach=4)
        inst = RuleInstance(g, {0}, {n - 1}, Rule.tar(1))
        assert solve_chordal(inst).reachable
        sizes.append(g.m)
        times.append(best_time(inst))
        del g, inst
    ratios = [b / a for a, b in zip(times, times[1:])]
    ok = max(ratios) <= 2.5 and times[-1] < 5
    detail = ", ".join(f"n={n} m={m} {t:.2f} s" for n, m, t in zip(SCALING_N, sizes, times))
    record(7, "linear scaling", ok, f"{detail}; ratios {', '.join(f'{r:.2f}' for r in ratios)}")
    assert max(ratios) <= 2.5
    assert times[-1] < 5


def test_8_within_clique_distance_is_symmetric_difference():
    report, secs = battery("within", 100)
    record(8, "within-clique distance", report.ok, describe(report, secs) + first_problem(report))
    assert report.checks() == 100
    assert report.ok, report.discrepancies[0].describe()
