"""Monomial subrings as affine semigroups with a unit subgroup.

A monomial of the ambient ring is an integer point; "natural" coordinates are
ordinary variables (exponent >= 0) and "integer" coordinates are invertible
variables, as in k(x)[y] or a Laurent ring.  A subring k[monomials] is the
semigroup S generated by ``gens`` (positive grade) together with the group
spanned by ``unit_gens`` (grade zero).  Ring products become sums of points.
"""

from __future__ import annotations

import itertools
import json
import math

import numpy as np
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .verdict import SearchBound, Verdict

NAT = "nat"
INT = "int"

Point = tuple


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class AmbientLattice:
    dim: int
    signs: tuple = ()
    grading: tuple | None = None

    def __post_init__(self):
        signs = tuple(self.signs) if self.signs else (NAT,) * self.dim
        if len(signs) != self.dim or any(s not in (NAT, INT) for s in signs):
            raise LatticeError(f"signs must be {self.dim} entries of 'nat'/'int'")
        object.__setattr__(self, "signs", signs)
        if self.grading is None:
            grading = tuple(1 if s == NAT else 0 for s in signs)
        else:
            grading = tuple(int(w) for w in self.grading)
        if len(grading) != self.dim:
            raise LatticeError("grading has the wrong length")
        for w, s in zip(grading, signs):
            if s == NAT and w <= 0:
                raise LatticeError("grading must be positive on natural coordinates")
        object.__setattr__(self, "grading", grading)

    @property
    def natural(self) -> tuple:
        return tuple(i for i, s in enumerate(self.signs) if s == NAT)

    @property
    def integer(self) -> tuple:
        return tuple(i for i, s in enumerate(self.signs) if s == INT)

    def contains(self, v: Sequence[int]) -> bool:
        return len(v) == self.dim and all(v[i] >= 0 for i in self.natural)

    def grade(self, v) -> int:
        return sum(w * x for w, x in zip(self.grading, v))

    def zero(self) -> Point:
        return (0,) * self.dim

    def to_dict(self):
        return {"dim": self.dim, "signs": list(self.signs), "grading": list(self.grading)}


# ---------------------------------------------------------------------------
# ambient (UFD) predicates on monomials

def is_unit_A(amb: AmbientLattice, v) -> bool:
    return all(v[i] == 0 for i in amb.natural)


def divides_A(amb: AmbientLattice, u, v) -> bool:
    return all(v[i] - u[i] >= 0 for i in amb.natural)


def associates_A(amb: AmbientLattice, u, v) -> bool:
    return all(v[i] == u[i] for i in amb.natural)


def irr_A(amb: AmbientLattice, v) -> bool:
    return sum(v[i] for i in amb.natural) == 1


def sqf_A(amb: AmbientLattice, v) -> bool:
    return all(v[i] <= 1 for i in amb.natural)


# the ambient ring is a UFD: primes are irreducibles, principal radical
# ideals are generated by square-free elements
prime_A = irr_A
gpr_A = sqf_A


def rpr_A(amb: AmbientLattice, u, v) -> bool:
    return all(min(u[i], v[i]) == 0 for i in amb.natural)


# ---------------------------------------------------------------------------

def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(k, u):
    return tuple(k * a for a in u)


def order_key(v):
    """Graded-lex enumeration order: total size, then larger x1 first."""
    return (sum(abs(x) for x in v), tuple(-x for x in v))


def _hermite_rows(vectors, cols):
    """Row-style Hermite normal form of integer vectors restricted to ``cols``."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for c in cols:
        active = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            reduced = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[c] != 0:
                    reduced.append(r)
                elif any(r):
                    rest.append(r)
            active = reduced
        if active:
            piv = active[0]
            if piv[c] < 0:
                piv = [-a for a in piv]
            for b in basis:
                q = b[c] // piv[c]
                b[:] = [x - q * y for x, y in zip(b, piv)]
            basis.append(piv)
        rows = rest
    return [(next(c for c in cols if r[c] != 0), tuple(r)) for r in basis]


class MonomialSubring:
    """Affine semigroup S with unit subgroup, modelling R = k[monomials]."""

    def __init__(self, ambient: AmbientLattice, gens: Iterable, unit_gens: Iterable = (), name: str | None = None):
        self.ambient = ambient
        self.gens = tuple(tuple(int(x) for x in g) for g in gens)
        self.unit_gens = tuple(tuple(int(x) for x in u) for u in unit_gens)
        self.name = name
        for g in self.gens:
            if not ambient.contains(g):
                raise LatticeError(f"generator {g} violates the ambient sign constraints")
            if ambient.grade(g) <= 0:
                raise LatticeError(
                    f"generator {g} has grade {ambient.grade(g)} <= 0; only unit generators may have grade 0"
                )
        for u in self.unit_gens:
            if len(u) != ambient.dim or not is_unit_A(ambient, u):
                raise LatticeError(f"unit generator {u} must be supported on integer coordinates")
            if ambient.grade(u) != 0:
                raise LatticeError(f"unit generator {u} must have grade 0")
        self._hnf = _hermite_rows(self.unit_gens, ambient.integer)
        self._nat = ambient.natural
        self._w = ambient.grading
        self._zero = ambient.zero()
        self._memo: dict = {}
        self._box_cache: dict = {}

    # -- identity / serialisation --------------------------------------
    def key(self):
        return (self.ambient, self.gens, self.unit_gens)

    def __eq__(self, other):
        return isinstance(other, MonomialSubring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<MonomialSubring{label} gens={list(self.gens)} unit_gens={list(self.unit_gens)} signs={list(self.ambient.signs)}>"

    def to_dict(self) -> dict:
        amb = {"dim": self.ambient.dim, "signs": list(self.ambient.signs), "grading": list(self.ambient.grading)}
        return {"ambient": amb, "gens": [list(g) for g in self.gens], "unit_gens": [list(u) for u in self.unit_gens]}

    # -- core ----------------------------------------------------------
    def grade(self, v) -> int:
        return sum(w * x for w, x in zip(self._w, v))

    def canonical(self, v) -> Point:
        """Representative of v modulo the unit lattice (Hermite reduction)."""
        if not self._hnf:
            return tuple(v)
        v = list(v)
        for c, row in self._hnf:
            q = v[c] // row[c]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def member(self, v) -> bool:
        v = tuple(v)
        if any(v[i] < 0 for i in self._nat):
            return False
        key = self.canonical(v)
        memo = self._memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        gens = self.gens
        stack = [[key, 0]]
        while stack:
            frame = stack[-1]
            k, i = frame
            if k in memo:
                stack.pop()
                continue
            lam = self.grade(k)
            if lam <= 0:
                memo[k] = lam == 0 and k == self._zero
                stack.pop()
                continue
            pushed = False
            result = False
            while i < len(gens):
                child = self.canonical(vsub(k, gens[i]))
                if any(child[j] < 0 for j in self._nat) or self.grade(child) < 0:
                    i += 1
                    continue
                known = memo.get(child)
                if known is None:
                    frame[1] = i
                    stack.append([child, 0])
                    pushed = True
                    break
                if known:
                    result = True
                    break
                i += 1
            if pushed:
                continue
            memo[k] = result
            stack.pop()
        return memo[key]

    def is_unit(self, v) -> bool:
        return self.grade(v) == 0 and self.member(v) and is_unit_A(self.ambient, v)

    def box_members(self, bound_B: int) -> list:
        """Members with |v_i| <= B in enumeration order (cached)."""
        hit = self._box_cache.get(bound_B)
        if hit is None:
            hit = [v for v in enumerate_box(self.ambient, bound_B) if self.member(v)]
            self._box_cache[bound_B] = hit
        return hit

    def box_classes(self, bound_B: int) -> list:
        """One box member per unit class, in enumeration order."""
        key = ("classes", bound_B)
        hit = self._box_cache.get(key)
        if hit is None:
            seen = set()
            hit = []
            for v in self.box_members(bound_B):
                c = self.canonical(v)
                if c not in seen:
                    seen.add(c)
                    hit.append(v)
            self._box_cache[key] = hit
        return hit


def make_subring(ambient: AmbientLattice, gens, unit_gens=(), name=None) -> MonomialSubring:
    return MonomialSubring(ambient, gens, unit_gens, name=name)


def subring_from_dict(d: dict) -> MonomialSubring:
    try:
        amb = d["ambient"]
        ambient = AmbientLattice(int(amb["dim"]), tuple(amb.get("signs") or ()), amb.get("grading"))
        return MonomialSubring(ambient, d.get("gens", []), d.get("unit_gens", []), name=d.get("name"))
    except (KeyError, TypeError) as exc:
        raise LatticeError(f"malformed instance: {exc}") from exc


def load_instance(path) -> MonomialSubring:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatticeError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return subring_from_dict(data)


# ---------------------------------------------------------------------------
# queries

def member(S: MonomialSubring, v) -> bool:
    return S.member(v)


def _require(S, *points):
    for p in points:
        if not S.member(p):
            raise LatticeError(f"{tuple(p)} is not in the subring")


def divides_R(S: MonomialSubring, u, v) -> bool:
    _require(S, u, v)
    return S.member(vsub(v, u))


def is_unit_R(S: MonomialSubring, u) -> bool:
    _require(S, u)
    return S.member(vscale(-1, u))


def associates_R(S: MonomialSubring, u, v) -> bool:
    return divides_R(S, u, v) and divides_R(S, v, u)


def common_divisor_R(S: MonomialSubring, u, v):
    """A non-unit common divisor of u and v in S, or None.

    Any non-unit divisor contains a generator summand, and that generator
    divides too, so generators suffice.
    """
    for g in S.gens:
        if S.member(vsub(u, g)) and S.member(vsub(v, g)):
            return g
    return None


def rpr_R(S: MonomialSubring, u, v) -> bool:
    _require(S, u, v)
    return common_divisor_R(S, u, v) is None


def decomposition(S: MonomialSubring, v):
    """(u, w) with v = u + w, both non-units of S, or None if v is an atom or unit."""
    for g in S.gens:
        rest = vsub(v, g)
        if S.grade(rest) > 0 and S.member(rest):
            return g, rest
    return None


def is_atom(S: MonomialSubring, v) -> bool:
    return S.member(v) and S.grade(v) > 0 and decomposition(S, v) is None


def atoms_up_to(S: MonomialSubring, grade_bound: int) -> frozenset:
    """Atoms of grade <= grade_bound, one canonical representative per unit class.

    Every atom is a generator up to a unit, so only generators are examined.
    """
    if grade_bound < 1:
        raise ValueError("grade_bound must be >= 1")
    out = set()
    for g in S.gens:
        if S.grade(g) <= grade_bound and decomposition(S, g) is None:
            out.add(S.canonical(g))
    return frozenset(out)


def square_part(S: MonomialSubring, v):
    """(u, w) with v = 2u + w, u a non-unit and w in S, or None.

    If v = 2u + w with u = g + u', then v = 2g + (2u' + w), so checking
    generators g is exact.
    """
    for g in S.gens:
        rest = vsub(v, vscale(2, g))
        if S.member(rest):
            return g, rest
    return None


def squarefree_R(S: MonomialSubring, v) -> bool:
    _require(S, v)
    return square_part(S, v) is None


def factorizations(S: MonomialSubring, v, limit: int = 1000) -> list:
    """Atom factorizations of v up to units.

    Each factorization is a tuple of ``(atom, multiplicity)`` pairs.
    """
    _require(S, v)
    atoms = sorted(atoms_up_to(S, max(S.grade(v), 1)), key=order_key)
    out = []

    def rec(i, rem, acc):
        if len(out) >= limit:
            return
        if S.grade(rem) == 0:
            if S.member(rem):
                out.append(tuple((atoms[j], c) for j, c in enumerate(acc) if c))
            return
        if i == len(atoms):
            return
        a = atoms[i]
        c = 0
        cur = rem
        while S.grade(cur) >= 0 and all(cur[j] >= 0 for j in S.ambient.natural):
            rec(i + 1, cur, acc + [c])
            c += 1
            cur = vsub(cur, a)

    rec(0, tuple(v), [])
    return out


def enumerate_box(where, bound_B: int) -> Iterator[Point]:
    """Ambient points (or subring members) with |v_i| <= B, in graded-lex order."""
    if isinstance(where, MonomialSubring):
        yield from where.box_members(bound_B)
        return
    amb = where
    ranges = [range(0, bound_B + 1) if s == NAT else range(-bound_B, bound_B + 1) for s in amb.signs]
    pts = list(itertools.product(*ranges))
    pts.sort(key=order_key)
    yield from pts


class BoxIndex:
    """Dense view of the box |v_i| <= B for vectorised membership scans.

    Arrays are flat in C order over the box; ``points`` lists the box in
    enumeration order and ``rank`` maps a flat slot to its position there.
    """

    def __init__(self, S: MonomialSubring, bound_B: int):
        self.S = S
        self.B = bound_B
        amb = S.ambient
        self.lo = np.array([0 if s == NAT else -bound_B for s in amb.signs], dtype=np.int64)
        self.shape = tuple(bound_B + 1 if s == NAT else 2 * bound_B + 1 for s in amb.signs)
        grids = np.indices(self.shape).reshape(len(self.shape), -1).T
        self.coords = grids + self.lo
        self._hi = self.lo + np.array(self.shape) - 1
        self._strides = np.array([int(np.prod(self.shape[i + 1:])) for i in range(len(self.shape))], dtype=np.int64)
        self.points = list(enumerate_box(amb, bound_B))
        self.size = len(self.points)
        self.rank = np.empty(self.size, dtype=np.int64)
        for i, p in enumerate(self.points):
            self.rank[self.flat_of(p)] = i
        table = np.zeros(self.size, dtype=bool)
        for p in S.box_members(bound_B):
            table[self.flat_of(p)] = True
        self.table = table
        self._div: dict = {}

    def flat_of(self, p) -> int:
        return int(sum((x - l) * st for x, l, st in zip(p, self.lo, self._strides)))

    def lookup(self, Q, arr):
        """arr at each row of Q; False for rows outside the box."""
        Q = np.asarray(Q, dtype=np.int64)
        ok = np.all((Q >= self.lo) & (Q <= self._hi), axis=1)
        flat = ((np.where(ok[:, None], Q, self.lo) - self.lo) * self._strides).sum(axis=1)
        return ok & arr[flat]

    def divisible_by(self, r):
        """Mask of box points v with v - r in S (exact, also off-box)."""
        r = tuple(r)
        hit = self._div.get(r)
        if hit is None:
            Q = self.coords - np.asarray(r, dtype=np.int64)
            hit = self.lookup(Q, self.table)
            nat = list(self.S.ambient.natural)
            ok = np.all(Q[:, nat] >= 0, axis=1) if nat else np.ones(self.size, dtype=bool)
            outside = ok & ~np.all((Q >= self.lo) & (Q <= self._hi), axis=1)
            for i in np.nonzero(outside)[0]:
                hit[i] = self.S.member(tuple(int(x) for x in Q[i]))
            self._div[r] = hit
        return hit

    def first_rank(self, mask):
        """Enumeration index of the first masked point, or None."""
        if not mask.any():
            return None
        return int(self.rank[mask].min())


def box_index(S: MonomialSubring, bound_B: int) -> BoxIndex:
    key = ("index", bound_B)
    hit = S._box_cache.get(key)
    if hit is None:
        hit = BoxIndex(S, bound_B)
        S._box_cache[key] = hit
    return hit


# ---------------------------------------------------------------------------
# bounded element predicates

def _require_nonunit(S, r):
    _require(S, r)
    if S.grade(r) == 0:
        raise LatticeError(f"{tuple(r)} is a unit")


def gpr_R_bounded(S: MonomialSubring, r, bound: SearchBound = SearchBound()) -> Verdict:
    """Is the principal ideal (r) radical?  Fails((x, k)) when kx in r+S, x not.

    An element that is not square-free fails directly: v = 2u + w gives
    x = u + w with 2x = v + w.
    """
    _require_nonunit(S, r)
    r = tuple(r)
    sq = square_part(S, r)
    if sq is not None:
        u, w = sq
        return Verdict.fails(bound, (vadd(u, w), 2), reason="not square-free")
    box = box_index(S, bound.B)
    div = box.divisible_by(r)
    cand = box.table & ~div
    best = None
    for k in range(2, bound.K + 1):
        hit = cand & box.lookup(k * box.coords, div)
        i = box.first_rank(hit)
        if i is not None and (best is None or i < best[0]):
            best = (i, k)
    if best is not None:
        return Verdict.fails(bound, (box.points[best[0]], best[1]))
    return Verdict.holds(bound)


def prime_R_bounded(S: MonomialSubring, r, bound: SearchBound = SearchBound()) -> Verdict:
    """Fails((a, b)) when r | a+b but r divides neither a nor b.

    a, b and a+b range over the box.
    """
    _require_nonunit(S, r)
    r = tuple(r)
    dec = decomposition(S, r)
    if dec is not None:
        return Verdict.fails(bound, dec, reason="reducible")
    g = gpr_R_bounded(S, r, bound)
    if g.failed:
        x, k = g.witness
        for j in range(2, k + 1):
            if S.member(vsub(vscale(j, x), r)):
                return Verdict.fails(bound, (x, vscale(j - 1, x)), reason="not radical")
        raise AssertionError("gpr witness does not replay")
    box = box_index(S, bound.B)
    div = box.divisible_by(r)
    nondiv = box.table & ~div
    for c in S.box_classes(bound.B):
        if not div[box.flat_of(c)]:
            continue
        hit = nondiv & box.lookup(np.asarray(c) - box.coords, nondiv)
        i = box.first_rank(hit)
        if i is not None:
            a = box.points[i]
            return Verdict.fails(bound, (a, vsub(c, a)))
    return Verdict.holds(bound)


def prime_violation(S, r, a, b) -> bool:
    return (
        S.member(a) and S.member(b)
        and S.member(vsub(vadd(a, b), r))
        and not S.member(vsub(a, r))
        and not S.member(vsub(b, r))
    )


def gpr_violation(S, r, x, k) -> bool:
    return k >= 2 and S.member(x) and S.member(vsub(vscale(k, x), r)) and not S.member(vsub(x, r))
