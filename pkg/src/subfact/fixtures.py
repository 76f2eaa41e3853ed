"""Pinned example instances and their expected verdicts."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import conditions as cond
from . import monolattice as ml
from .jacobian import PolyMap, bridge_check
from .monolattice import AmbientLattice, make_subring
from .verdict import SearchBound

NAT, INT = ml.NAT, ml.INT


def cusp():
    """k[x^2, x^3] in k[x]."""
    return make_subring(AmbientLattice(1, (NAT,)), [(2,), (3,)], name="k[x^2,x^3]")


def assoc_split():
    """k[xy, y] in k(x)[y]; x is an ambient unit direction."""
    return make_subring(AmbientLattice(2, (INT, NAT)), [(1, 1), (0, 1)], name="k[xy,y] in k(x)[y]")


def laurent_line():
    """k[t] inside the all-unit ambient k[t, 1/t] (stands in for a field)."""
    return make_subring(AmbientLattice(1, (INT,), (1,)), [(1,)], name="k[t] in k[t,1/t]")


def veronese():
    """k[x^2, y^2, xy] in k[x, y]."""
    return make_subring(AmbientLattice(2), [(2, 0), (0, 2), (1, 1)], name="k[x^2,y^2,xy]")


def poly_in_localized():
    """k[x, y] in k(x)[y]; x is graded so that it is a non-unit of R."""
    return make_subring(AmbientLattice(2, (INT, NAT), (1, 1)), [(1, 0), (0, 1)], name="k[x,y] in k(x)[y]")


INSTANCES = {
    "ex15": cusp,
    "ex16": assoc_split,
    "ex17": laurent_line,
    "ex18": veronese,
    "ex19": poly_in_localized,
}


@dataclass(frozen=True)
class FixtureRow:
    name: str
    expected: str
    observed: str
    passed: bool

    def to_dict(self):
        return {"name": self.name, "expected": self.expected, "observed": self.observed, "passed": self.passed}


def _fmt(v):
    return v.outcome if v.witness is None else f"{v.outcome} {v.witness}"


def _row_ex15(bound):
    S = cusp()
    a = cond.evaluate("P1_1_iv", S, bound)
    b = cond.evaluate("P1_3_ii", S, bound)
    ok = a.failed and a.witness == ((2,), (3,)) and b.ok
    return "P1_1_iv fails ((2,),(3,)); P1_3_ii holds", f"P1_1_iv {_fmt(a)}; P1_3_ii {_fmt(b)}", ok


def _row_ex16(bound):
    S = assoc_split()
    a = cond.evaluate("P1_3_ii", S, bound)
    b = cond.evaluate("P1_2_iii", S, bound)
    ok = a.failed and cond.violates("P1_3_ii", S, ((1, 1), (0, 1))) and b.ok
    return "P1_3_ii fails; P1_2_iii holds", f"P1_3_ii {_fmt(a)}; P1_2_iii {_fmt(b)}", ok


def _row_ex17(bound):
    S = laurent_line()
    a = cond.evaluate("P1_2_iii", S, bound)
    iv = cond.evaluate("P1_3_iv", S, bound)
    irr_empty = not any(ml.irr_A(S.ambient, v) for v in ml.enumerate_box(S.ambient, bound.B))
    ok = a.failed and a.witness == ((1,), (1,)) and iv.ok and irr_empty
    return (
        "P1_2_iii fails ((1,),(1,)); P1_3_iv holds; Irr A empty",
        f"P1_2_iii {_fmt(a)}; P1_3_iv {_fmt(iv)}; Irr A empty={irr_empty}",
        ok,
    )


def _row_ex18(bound):
    S = veronese()
    a = cond.evaluate("P1_1_iv", S, bound)
    u = cond.units_equal(S, bound)
    facs = ml.factorizations(S, (2, 2))
    ok = a.ok and u.ok and len(facs) == 2
    return (
        "P1_1_iv holds; units equal; (2,2) has 2 factorizations",
        f"P1_1_iv {_fmt(a)}; units {_fmt(u)}; factorizations={facs}",
        ok,
    )


def _row_ex19(bound):
    S = poly_in_localized()
    a = cond.evaluate("P1_3_iv", S, bound)
    unique = all(len(ml.factorizations(S, v)) == 1 for v in S.box_members(6))
    ok = a.failed and a.witness == ((1, 1),) and unique
    return (
        "P1_3_iv fails ((1,1),); unique factorization in R",
        f"P1_3_iv {_fmt(a)}; unique factorization (box 6)={unique}",
        ok,
    )


def _row_atom_not_prime(bound):
    S = cusp()
    atom = ml.is_atom(S, (2,))
    v = ml.prime_R_bounded(S, (2,), bound)
    ok = atom and v.failed and ml.prime_violation(S, (2,), *v.witness)
    return "2 is an atom of <2,3> but not prime", f"atom={atom}; prime {_fmt(v)}", ok


def _row_sqf_not_gpr(bound):
    S = cusp()
    sq = ml.squarefree_R(S, (2,))
    v = ml.gpr_R_bounded(S, (2,), bound)
    ok = sq and v.failed and v.witness == ((3,), 2)
    return "2 is square-free in <2,3>, gpr fails ((3,),2)", f"squarefree={sq}; gpr {_fmt(v)}", ok


def _bridge_row(polys, witness):
    def row(bound):
        rep = bridge_check(PolyMap.parse(["x", "y"], polys), bound)
        ok = rep.consistent and rep.witness == witness and not rep.verdict
        return (
            f"CONSISTENT, witness {witness}, gcd non-constant",
            f"{rep.status}, witness {rep.witness}, gcd {rep.gcd.to_str(['x', 'y'])}",
            ok,
        )
    return row


ROWS: list = [
    ("cusp: divisibility vs associates", _row_ex15),
    ("k[xy,y]: associates vs coprimality", _row_ex16),
    ("Laurent line: field-like ambient", _row_ex17),
    ("veronese: no unique factorization", _row_ex18),
    ("k[x,y] in k(x)[y]: UFD, atom loss", _row_ex19),
    ("<2,3> atom not prime", _row_atom_not_prime),
    ("<2,3> square-free not gpr", _row_sqf_not_gpr),
    ("bridge (x, xy)", _bridge_row(["x", "x*y"], (2, 1))),
    ("bridge (x^2, y^2)", _bridge_row(["x^2", "y^2"], (2, 0))),
]


def run_fixtures(bound: SearchBound = SearchBound()) -> list:
    out = []
    for name, fn in ROWS:
        expected, observed, ok = fn(bound)
        out.append(FixtureRow(name, expected, observed, bool(ok)))
    return out


def format_table(rows) -> str:
    w = max(len(r.name) for r in rows)
    lines = [f"{'row':<{w}}  result  observed"]
    for r in rows:
        lines.append(f"{r.name:<{w}}  {'pass' if r.passed else 'FAIL':<6}  {r.observed}")
    return "\n".join(lines)


if __name__ == "__main__":
    t0 = time.perf_counter()
    print(format_table(run_fixtures()))
    print(f"{time.perf_counter() - t0:.2f}s")
