import pytest

from subfact import conditions as cond
from subfact import fixtures as fx
from subfact import transports as tr
from subfact.harness import (
    GenParams, gen_instance, instances, run_equivalence_suite, run_implication_suite,
    run_lemma_suite, shrink,
)
from subfact.monolattice import AmbientLattice, make_subring
from subfact.verdict import SearchBound

SMALL = SearchBound(8, 4)


def test_params_validation():
    with pytest.raises(ValueError):
        GenParams(n_max=5)
    with pytest.raises(ValueError):
        GenParams(instance_count=-1)


def test_generator_is_deterministic():
    p = GenParams(seed=5, instance_count=20)
    assert instances(p) == instances(p)
    assert [S.name for S in instances(p)][:2] == ["seed5#0", "seed5#1"]


def test_reports_are_byte_stable():
    subs = instances(GenParams(seed=1, instance_count=12))
    a = run_implication_suite(tr.implication_dag(), subs, SMALL, seed=1)
    b = run_implication_suite(tr.implication_dag(), instances(GenParams(seed=1, instance_count=12)), SMALL, seed=1)
    assert a.to_json() == b.to_json()
    assert a.ok


def test_dag_is_acyclic():
    assert tr.is_acyclic(tr.implication_dag())
    cyc = [tr.Edge("a", "b", None), tr.Edge("b", "a", None)]
    assert not tr.is_acyclic(cyc)


def test_small_suites_clean():
    subs = instances(GenParams(seed=2, instance_count=15))
    assert run_lemma_suite(subs, SMALL).ok
    for prop in sorted(tr.EQUIVALENCES):
        rep = run_equivalence_suite(prop, subs, SMALL)
        assert rep.ok, rep.violations[:1]
        # hypothesis failures are listed, never counted as passes
        assert all("reason" in s for s in rep.skipped)


def test_skips_are_reported():
    S = fx.assoc_split()
    rep = run_equivalence_suite("4_1", [S], SMALL)
    assert rep.skipped and not rep.rows


def test_fixture_rows_pass():
    rows = fx.run_fixtures()
    assert len(rows) == 9
    assert all(r.passed for r in rows), [r for r in rows if not r.passed]


# -- shrinking ------------------------------------------------------------------------

def test_shrink_inflated_witness():
    S = fx.cusp()
    res = shrink(S, "P1_1_iv", ((6,), (7,)))
    assert res.witness == ((2,), (3,))
    assert cond.violates("P1_1_iv", res.subring, res.witness)


def test_shrink_drops_generators():
    S = make_subring(AmbientLattice(1), [(2,), (3,), (7,)])
    res = shrink(S, "P1_1_iv", ((2,), (3,)))
    assert set(res.subring.gens) <= {(2,), (3,)}


def test_shrink_fixed_point_and_bounds():
    S = fx.veronese()
    w = ((3, 0), (3, 2))
    res = shrink(S, "D2_1_Bfc_full", w)
    assert cond.violates("D2_1_Bfc_full", res.subring, res.witness)
    for new, old in zip(res.witness, w):
        assert all(abs(a) <= abs(b) for a, b in zip(new, old))
    again = shrink(res.subring, "D2_1_Bfc_full", res.witness)
    assert again.witness == res.witness


def test_shrink_rejects_non_witness():
    with pytest.raises(ValueError):
        shrink(fx.cusp(), "P1_1_iv", ((2,), (4,)))
