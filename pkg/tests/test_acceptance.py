"""Acceptance criteria, one test each, each printing a single PASS/FAIL line."""

import random
import time

import pytest

from subfact import fixtures as fx
from subfact import monolattice as ml
from subfact import transports as tr
from subfact.exactpoly import squarefree_in_A
from subfact.harness import GenParams, instances, run_equivalence_suite, run_implication_suite, run_lemma_suite
from subfact.jacobian import PolyMap, bridge_check, minor_report, random_monomial_map
from subfact.monolattice import AmbientLattice, make_subring
from subfact.verdict import SearchBound

import oracles
from test_exactpoly import factored_case
from test_jacobian import _compose_linear, _random_pair, _unimodular

BOUND = SearchBound(12, 6)


@pytest.fixture(scope="module")
def sweep():
    return instances(GenParams(seed=0, instance_count=100))


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_fixtures(capsys):
    t0 = time.perf_counter()
    rows = fx.run_fixtures(BOUND)
    dt = time.perf_counter() - t0
    # the first five rows are the worked example instances
    example_rows = rows[:5]
    bad = [r.name for r in example_rows if not r.passed]
    report(capsys, 1, not bad and dt < 5, f"{5 - len(bad)}/5 rows exact, {dt:.2f}s (< 5s)")


def test_criterion_2_lemmas(capsys, sweep):
    t0 = time.perf_counter()
    rep = run_lemma_suite(sweep, BOUND, seed=0)
    dt = time.perf_counter() - t0
    report(capsys, 2, rep.ok and len(rep.rows) == 400 and dt < 60, f"{len(rep.violations)} violations over {len(rep.rows)} checks, {dt:.2f}s (< 60s)")


def test_criterion_3_implications(capsys, sweep):
    t0 = time.perf_counter()
    rep = run_implication_suite(tr.implication_dag(), sweep, BOUND, seed=0)
    dt = time.perf_counter() - t0
    report(capsys, 3, rep.ok and dt < 120, f"{len(rep.violations)} violations, counts {rep.counts}, {dt:.2f}s (< 120s)")


def test_criterion_4_equivalences(capsys, sweep):
    props = ("1_1", "1_2", "2_2", "4_1", "4_3", "4_4", "4_5", "4_6", "3_4")
    assert set(props) <= set(tr.EQUIVALENCES)
    viol, skipped, checked = 0, 0, 0
    for prop in props:
        rep = run_equivalence_suite(prop, sweep, BOUND, primes=(2, 3), seed=0)
        viol += len(rep.violations)
        skipped += len(rep.skipped)
        checked += len(rep.rows)
        assert all(s.get("reason") for s in rep.skipped)
    report(capsys, 4, viol == 0 and checked > 0, f"{viol} violations over {checked} edge checks, {skipped} skipped (reported)")


def test_criterion_5_jacobian(capsys):
    t0 = time.perf_counter()
    a = minor_report(PolyMap.parse("xy", ["x+y", "x-y"]))
    b = minor_report(PolyMap.parse("xy", ["x", "x*y"]))
    c = minor_report(PolyMap.parse("xy", ["x^2+y^2"]))
    ok = a.verdict and a.gcd.is_constant() and (not b.verdict) and b.gcd.to_str(["x", "y"]) == "x" and c.verdict
    rng = random.Random(11)
    inv = 0
    for _ in range(50):
        m = _random_pair(rng)
        rep = minor_report(m)
        L = _unimodular(rng)
        det = L[0][0] * L[1][1] - L[0][1] * L[1][0]
        r2 = minor_report(_compose_linear(m, L))
        sw = minor_report(PolyMap(tuple(f.permute_vars((1, 0)) for f in m.fs), m.names))
        inv += (
            r2.minors[(0, 1)] == rep.minors[(0, 1)].scale(det)
            and sw.minors[(0, 1)] == -rep.minors[(0, 1)].permute_vars((1, 0))
            and r2.verdict == rep.verdict == sw.verdict
        )
    dt = time.perf_counter() - t0
    report(capsys, 5, ok and inv == 50 and dt < 30, f"pinned maps {'ok' if ok else 'wrong'}, invariance {inv}/50, {dt:.2f}s (< 30s)")


def test_criterion_6_bridge(capsys):
    rng = random.Random(0)
    statuses = [bridge_check(random_monomial_map(rng), BOUND).status for _ in range(100)]
    x_xy = bridge_check(PolyMap.parse("xy", ["x", "x*y"]), BOUND)
    sq = bridge_check(PolyMap.parse("xy", ["x^2", "y^2"]), BOUND)
    pinned = x_xy.consistent and x_xy.witness == (2, 1) and sq.consistent and sq.witness == (2, 0)
    bad = statuses.count("INCONSISTENT")
    report(capsys, 6, bad == 0 and pinned, f"{bad} INCONSISTENT of 100, pinned examples {'ok' if pinned else 'wrong'}")


def test_criterion_7_oracles(capsys):
    cases = oracles.exhaustive_instances()
    mismatches = 0
    for n, gens in cases:
        S = make_subring(AmbientLattice(n), gens)
        mem = oracles.members_by_combination(gens, n, 6)
        mismatches += sum(S.member(v) != (v in mem) for v in oracles.box_points(n, 6))
        mismatches += ml.atoms_up_to(S, 12) != oracles.atoms(mem)
        mismatches += sum(ml.squarefree_R(S, v) != oracles.squarefree(mem, v) for v in mem)
    rng = random.Random(7)
    sq_bad = 0
    for _ in range(200):
        f, ans = factored_case(rng)
        sq_bad += squarefree_in_A(f) != ans
    report(capsys, 7, mismatches == 0 and sq_bad == 0,
           f"{mismatches} lattice mismatches over {len(cases)} instances, {sq_bad}/200 square-free mismatches")
