import random

import pytest
from hypothesis import given, settings, strategies as st

from subfact import monolattice as ml
from subfact.monolattice import AmbientLattice, INT, NAT, LatticeError, make_subring, vadd, vsub, vscale
from subfact.verdict import SearchBound

import oracles
from conftest import subrings

BOUND = SearchBound(12, 6)


def nat(gens, n=None):
    n = n or len(gens[0])
    return make_subring(AmbientLattice(n), gens)


# -- construction ----------------------------------------------------------------

def test_construction_rejects_bad_generators():
    with pytest.raises(LatticeError):
        make_subring(AmbientLattice(1), [(0,)])
    with pytest.raises(LatticeError):
        make_subring(AmbientLattice(1), [(-1,)])
    with pytest.raises(LatticeError):
        make_subring(AmbientLattice(2, (INT, NAT)), [(0, 1)], unit_gens=[(0, 1)])


def test_instance_roundtrip(tmp_path):
    S = make_subring(AmbientLattice(2, (INT, NAT)), [(1, 1), (0, 1)], [(2, 0)])
    assert ml.subring_from_dict(S.to_dict()) == S
    p = tmp_path / "bad.json"
    p.write_text('{"ambient": {"dim": 1,\n "signs": [}')
    with pytest.raises(LatticeError, match="line 2"):
        ml.load_instance(p)


# -- pinned facts ----------------------------------------------------------------

def test_cusp():
    S = nat([(2,), (3,)])
    assert [v for v in range(8) if S.member((v,))] == [0, 2, 3, 4, 5, 6, 7]
    assert ml.atoms_up_to(S, 10) == {(2,), (3,)}
    assert ml.squarefree_R(S, (5,)) and not ml.squarefree_R(S, (7,))
    assert ml.prime_R_bounded(S, (2,), BOUND).failed
    assert ml.gpr_R_bounded(S, (2,), BOUND).witness == ((3,), 2)


def test_veronese_two_factorizations():
    S = nat([(2, 0), (0, 2), (1, 1)])
    facs = ml.factorizations(S, (2, 2))
    assert sorted(facs) == sorted([(((1, 1), 2),), (((2, 0), 1), ((0, 2), 1))])


def test_units_in_localized_ambient():
    S = make_subring(AmbientLattice(2, (INT, NAT)), [(1, 1), (0, 1)], [(1, 0)])
    assert ml.is_unit_R(S, (-3, 0))
    assert ml.associates_R(S, (1, 1), (0, 1))
    assert ml.atoms_up_to(S, 5) == {(0, 1)}


# -- exhaustive oracle agreement ------------------------------------------------------

@pytest.mark.parametrize("n,gens", oracles.exhaustive_instances()[::37])
def test_oracles_sampled(n, gens):
    # a thinned slice here; the acceptance suite runs every instance
    S = nat(gens, n)
    mem = oracles.members_by_combination(gens, n, 6)
    for v in oracles.box_points(n, 6):
        assert S.member(v) == (v in mem)
    assert ml.atoms_up_to(S, 12) == oracles.atoms(mem)
    for v in mem:
        assert ml.squarefree_R(S, v) == oracles.squarefree(mem, v)


@pytest.mark.parametrize("gens", [[(2,), (3,)], [(3,), (5,)], [(4,), (6,), (9,)], [(1,)], [(2, 0), (1, 1), (0, 2)], [(1, 0), (1, 2)]])
def test_prime_matches_pair_scan(gens):
    n = len(gens[0])
    B = 12 if n == 1 else 6
    S = nat(gens, n)
    mem = oracles.members_by_combination(gens, n, B)
    for r in sorted(mem, key=ml.order_key)[1:12]:
        v = ml.prime_R_bounded(S, r, SearchBound(B, 6))
        assert v.failed == oracles.prime_fails(mem, r), r
        if v.failed:
            assert ml.prime_violation(S, r, *v.witness)


# -- properties ----------------------------------------------------------------------

def _some_members(S, rng, k=6):
    out = []
    for _ in range(k):
        v = S.ambient.zero()
        for g in S.gens:
            v = vadd(v, vscale(rng.randint(0, 2), g))
        for u in S.unit_gens:
            v = vadd(v, vscale(rng.randint(-2, 2), u))
        out.append(v)
    return out


@given(subrings(), st.integers(0, 2**16))
def test_member_additively_closed(S, seed):
    pts = _some_members(S, random.Random(seed))
    for u in pts:
        assert S.member(u)
        for v in pts:
            assert S.member(vadd(u, v))


@given(subrings(), st.integers(0, 2**16))
def test_unit_coherence(S, seed):
    rng = random.Random(seed)
    pts = _some_members(S, rng)
    units = [u for u in S.box_members(4) if ml.is_unit_R(S, u)]
    for u in units:
        for v in pts:
            assert S.member(vadd(v, u)) and S.member(vsub(v, u))


@given(subrings())
def test_atoms_are_squarefree(S):
    for a in ml.atoms_up_to(S, 12):
        assert ml.is_atom(S, a)
        assert ml.squarefree_R(S, a)


@settings(max_examples=25)
@given(subrings(n_max=2, coord=3))
def test_atoms_double_loop(S):
    # candidates in box 6 hold every generator; differences land in box 12
    small = set(S.box_members(6))
    big = set(S.box_members(12))
    naive = {
        S.canonical(v) for v in small
        if S.grade(v) > 0
        and not any(0 < S.grade(a) < S.grade(v) and vsub(v, a) in big for a in small)
    }
    assert ml.atoms_up_to(S, 12) == naive


@settings(max_examples=20)
@given(subrings(n_max=2, coord=3))
def test_element_lemmas(S):
    bound = SearchBound(6, 4)
    for r in S.box_classes(4)[:8]:
        if S.grade(r) == 0:
            continue
        p = ml.prime_R_bounded(S, r, bound)
        g = ml.gpr_R_bounded(S, r, bound)
        if p.ok:
            assert ml.is_atom(S, r) and g.ok
        if g.ok:
            assert ml.squarefree_R(S, r)
        if p.failed:
            assert ml.prime_violation(S, r, *p.witness)
        if g.failed:
            assert ml.gpr_violation(S, r, *g.witness)
