import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from subfact.exactpoly import MultiPoly, det_fraction_free
from subfact.jacobian import (
    CONSISTENT, DependentMap, JacobianError, PolyMap, bridge_check, gcd_divides_minors,
    independence_rank, jacobian_matrix, minor_report, random_monomial_map,
)
from conftest import polys


def M(*polys, names=("x", "y")):
    return PolyMap.parse(names, polys)


def test_pinned_minor_reports():
    rep = minor_report(M("x+y", "x-y"))
    assert rep.verdict and rep.gcd == MultiPoly.const(1, 2)
    assert rep.minors[(0, 1)] == MultiPoly.const(-2, 2)
    rep = minor_report(M("x", "x*y"))
    assert not rep.verdict and rep.gcd.to_str(["x", "y"]) == "x"
    assert minor_report(M("x^2+y^2")).verdict


def test_dependent_and_malformed():
    with pytest.raises(DependentMap):
        minor_report(M("x+y", "(x+y)^2"))
    with pytest.raises(JacobianError):
        M("x", "y", "x*y")
    with pytest.raises(JacobianError):
        M("0")


def test_bridge_pinned():
    a = bridge_check(M("x", "x*y"))
    assert a.status == CONSISTENT and a.witness == (2, 1) and not a.verdict
    b = bridge_check(M("x^2", "y^2"))
    assert b.status == CONSISTENT and b.witness == (2, 0) and b.gcd.to_str(["x", "y"]) == "x*y"
    c = bridge_check(M("x", "y"))
    assert c.witness is None and c.verdict


def test_bridge_rejects_non_monomials():
    with pytest.raises(JacobianError):
        bridge_check(M("x+y", "y"))


def _compose_linear(m, L):
    f, g = m.fs
    return PolyMap((f.scale(L[0][0]) + g.scale(L[0][1]), f.scale(L[1][0]) + g.scale(L[1][1])), m.names)


def _unimodular(rng):
    while True:
        L = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if L[0][0] * L[1][1] - L[0][1] * L[1][0] in (1, -1):
            return L


def _random_pair(rng):
    while True:
        fs = []
        for _ in range(2):
            terms = {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3) for _ in range(rng.randint(1, 3))}
            fs.append(MultiPoly(terms, 2))
        if any(f.is_zero() for f in fs):
            continue
        m = PolyMap(tuple(fs), ("x", "y"))
        if independence_rank(m).rank == 2:
            return m


def test_linear_change_and_permutation_invariance():
    rng = random.Random(11)
    for _ in range(50):
        m = _random_pair(rng)
        rep = minor_report(m)
        assert gcd_divides_minors(rep)
        L = _unimodular(rng)
        rep2 = minor_report(_compose_linear(m, L))
        det = L[0][0] * L[1][1] - L[0][1] * L[1][0]
        assert rep2.minors[(0, 1)] == rep.minors[(0, 1)].scale(det)
        assert rep2.verdict == rep.verdict
        swapped = PolyMap(tuple(f.permute_vars((1, 0)) for f in m.fs), m.names)
        rep3 = minor_report(swapped)
        assert rep3.minors[(0, 1)] == -rep.minors[(0, 1)].permute_vars((1, 0))
        assert rep3.verdict == rep.verdict


def _brute_rank(m):
    J = jacobian_matrix(m)
    for k in range(min(m.r, m.n), 0, -1):
        for rows in itertools.combinations(range(m.r), k):
            for cols in itertools.combinations(range(m.n), k):
                if not det_fraction_free([[J[i][j] for j in cols] for i in rows]).is_zero():
                    return k
    return 0


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.lists(polys(nvars=n, max_terms=3, nonzero=True), min_size=1, max_size=n))))
def test_rank_matches_symbolic_scan(case):
    n, fs = case
    m = PolyMap(tuple(fs))
    cert = independence_rank(m)
    assert cert.rank == _brute_rank(m)
    if cert.rank:
        assert not cert.minor.is_zero()


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_gcd_divides_every_minor(seed):
    m = random_monomial_map(random.Random(seed))
    assert gcd_divides_minors(minor_report(m))


def test_bridge_sweep():
    rng = random.Random(3)
    for _ in range(100):
        assert bridge_check(random_monomial_map(rng)).consistent
