"""Jacobian minors of a polynomial map and their gcd.

For f_1..f_r in Q[x_1..x_n] we form all r x r minors of the Jacobian matrix
and fold them with an exact gcd.  A constant gcd is the criterion studied for
k[f_1..f_r]; the monomial case is cross-checked against the lattice catalog
by :func:`bridge_check`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactpoly import MultiPoly, parse_poly, det_fraction_free, gcd_multi, divides
from .monolattice import AmbientLattice, make_subring
from .verdict import SearchBound

EVAL_RANGE = 1000
MIN_EVALUATIONS = 3
MAX_EVALUATIONS = 12

CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"


class JacobianError(ValueError):
    pass


class DependentMap(JacobianError):
    pass


@dataclass(frozen=True)
class PolyMap:
    fs: tuple
    names: tuple = ()

    def __post_init__(self):
        fs = tuple(self.fs)
        if not fs:
            raise JacobianError("need at least one polynomial")
        n = fs[0].nvars
        if any(f.nvars != n for f in fs):
            raise JacobianError("polynomials use different variable counts")
        if len(fs) > n:
            raise JacobianError(f"r = {len(fs)} exceeds n = {n}")
        if any(f.is_zero() for f in fs):
            raise JacobianError("zero polynomial in the map")
        object.__setattr__(self, "fs", fs)
        names = tuple(self.names) or tuple(f"x{i + 1}" for i in range(n))
        if len(names) != n:
            raise JacobianError("wrong number of variable names")
        object.__setattr__(self, "names", names)

    @property
    def r(self) -> int:
        return len(self.fs)

    @property
    def n(self) -> int:
        return self.fs[0].nvars

    @classmethod
    def parse(cls, vars: Sequence[str], polys: Sequence[str]) -> "PolyMap":
        vars = tuple(vars)
        return cls(tuple(parse_poly(p, vars) for p in polys), vars)

    def to_dict(self):
        return {"vars": list(self.names), "polys": [f.to_str(self.names) for f in self.fs]}


def jacobian_matrix(m: PolyMap) -> list:
    return [[f.derivative(j) for j in range(m.n)] for f in m.fs]


def _rank_fraction(rows) -> tuple:
    """Rank of a Fraction matrix and the pivot (row, column) positions."""
    a = [list(r) for r in rows]
    if not a:
        return 0, [], []
    nr, nc = len(a), len(a[0])
    row_of = list(range(nr))
    piv_rows, piv_cols = [], []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        row_of[r], row_of[p] = row_of[p], row_of[r]
        for i in range(r + 1, nr):
            if a[i][c] != 0:
                q = a[i][c] / a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        piv_rows.append(row_of[r])
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    return r, sorted(piv_rows), piv_cols


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    rows: tuple
    columns: tuple
    minor: MultiPoly | None
    evaluations: int


def independence_rank(m: PolyMap, seed: int = 0) -> RankCertificate:
    """Rank of the Jacobian over Q(x), with a symbolically nonzero minor.

    The rank is the largest rank seen at seeded random integer points, taken
    once it has been observed at least three times; the chosen rows and
    columns give a minor whose determinant is checked to be a nonzero
    polynomial, so the reported rank is never too large.
    """
    J = jacobian_matrix(m)
    rng = random.Random(f"rank:{seed}")
    best = (-1, (), ())
    seen = 0
    evals = 0
    while evals < MAX_EVALUATIONS and (evals < MIN_EVALUATIONS or seen < MIN_EVALUATIONS):
        pt = [Fraction(rng.randint(-EVAL_RANGE, EVAL_RANGE)) for _ in range(m.n)]
        vals = [[e.evaluate(pt) for e in row] for row in J]
        rk, rows, cols = _rank_fraction(vals)
        evals += 1
        if rk > best[0]:
            best, seen = (rk, tuple(rows), tuple(cols)), 1
        elif rk == best[0]:
            seen += 1
    rk, rows, cols = best
    minor = None
    if rk > 0:
        sub = [[J[i][j] for j in cols] for i in rows]
        minor = det_fraction_free(sub)
        if minor.is_zero():
            raise AssertionError("selected minor vanishes symbolically")
    return RankCertificate(rk, rows, tuple(sorted(cols)), minor, evals)


@dataclass(frozen=True)
class MinorReport:
    indices: tuple
    minors: dict
    gcd: MultiPoly
    verdict: bool
    names: tuple = field(default=())

    def to_dict(self):
        names = self.names or None
        return {
            "minors": [
                {"columns": [i + 1 for i in idx], "minor": self.minors[idx].to_str(names)} for idx in self.indices
            ],
            "gcd": self.gcd.to_str(names),
            "verdict": self.verdict,
        }


def minor_report(m: PolyMap, seed: int = 0) -> MinorReport:
    cert = independence_rank(m, seed)
    if cert.rank < m.r:
        raise DependentMap(f"Jacobian rank {cert.rank} < r = {m.r}: the polynomials are algebraically dependent")
    J = jacobian_matrix(m)
    indices = tuple(itertools.combinations(range(m.n), m.r))
    minors = {}
    g = None
    for idx in indices:
        d = det_fraction_free([[row[j] for j in idx] for row in J])
        minors[idx] = d
        if d.is_zero():
            continue
        g = d.normalized() if g is None else gcd_multi(g, d)
    if g is None:
        raise AssertionError("every minor vanishes despite a certified full rank")
    return MinorReport(indices, minors, g, g.is_constant() and not g.is_zero(), m.names)


def gcd_divides_minors(rep: MinorReport) -> bool:
    return all(divides(rep.gcd, d) for d in rep.minors.values() if not d.is_zero())


# ---------------------------------------------------------------------------
# bridge to the monomial catalog

@dataclass(frozen=True)
class BridgeReport:
    status: str
    witness: tuple | None
    verdict: bool
    gcd: MultiPoly
    exponents: tuple
    names: tuple = ()

    @property
    def consistent(self) -> bool:
        return self.status == CONSISTENT

    def to_dict(self):
        return {
            "status": self.status,
            "witness": None if self.witness is None else list(self.witness),
            "minor_verdict": self.verdict,
            "gcd": self.gcd.to_str(self.names or None),
            "exponents": [list(e) for e in self.exponents],
        }


def monomial_exponents(m: PolyMap) -> tuple:
    out = []
    for f in m.fs:
        terms = list(f.items())
        if len(terms) != 1:
            raise JacobianError(f"{f.to_str(m.names)} is not a single monomial")
        out.append(tuple(terms[0][0]))
    return tuple(out)


def bridge_check(m: PolyMap, bound: SearchBound = SearchBound(), seed: int = 0) -> BridgeReport:
    """Sound direction only: a square-free element of k[monomials] that is not
    square-free in A forces a non-constant gcd of the minors."""
    from .conditions import eval_setincl

    exps = monomial_exponents(m)
    rep = minor_report(m, seed)
    S = make_subring(AmbientLattice(m.n), exps)
    v = eval_setincl(S, "Sqf", "Sqf", bound)
    if v.failed:
        status = CONSISTENT if not rep.verdict else INCONSISTENT
        return BridgeReport(status, v.witness[0], rep.verdict, rep.gcd, exps, m.names)
    return BridgeReport(CONSISTENT, None, rep.verdict, rep.gcd, exps, m.names)


def random_monomial_map(rng: random.Random, n_max: int = 3, exp_max: int = 3) -> PolyMap:
    """A monomial map with linearly independent exponent vectors."""
    while True:
        n = rng.randint(1, n_max)
        r = rng.randint(1, n)
        exps = [tuple(rng.randint(0, exp_max) for _ in range(n)) for _ in range(r)]
        rk, _, _ = _rank_fraction([[Fraction(x) for x in e] for e in exps])
        if rk == r:
            fs = tuple(MultiPoly({e: 1}, n) for e in exps)
            return PolyMap(fs)
