"""Bounded predicates for the factoriality conditions on a monomial subring.

Ring elements are lattice points, products are sums, ``a^k b`` is ``k*a + b``
and "in R minus zero" is membership in S.  Every universally quantified
variable ranges over the box |v_i| <= B, every compound expression a
condition evaluates must also lie in the box, and exponents stop at K.  A
``Fails`` verdict always carries a witness that replays exactly (see
:func:`violates`); ``Holds`` only means no witness exists in the box.

Several searches are reduced to generators or to unit steps; each reduction
is noted where it happens and never shrinks the searched box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import monolattice as ml
from .monolattice import (
    MonomialSubring,
    vadd,
    vsub,
    vscale,
    order_key,
    is_unit_A,
    irr_A,
    sqf_A,
    prime_A,
    gpr_A,
    rpr_A,
    associates_A,
    divides_A,
)
from .verdict import SearchBound, Verdict

MAX_FACTORS = 4


class UnknownCondition(KeyError):
    pass


# ---------------------------------------------------------------------------
# per-(subring, bound) search context

class Context:
    def __init__(self, S: MonomialSubring, bound: SearchBound):
        self.S = S
        self.bound = bound
        self.amb = S.ambient
        box = ml.box_index(S, bound.B)
        self.box = box
        self.lo = box.lo
        self.shape = box.shape
        self.points = box.points
        self.members = S.box_members(bound.B)
        self.classes = S.box_classes(bound.B)
        self.table = box.table.reshape(self.shape)
        self.rank = box.rank.reshape(self.shape)
        self._cache: dict = {}

    def in_box(self, p) -> bool:
        B = self.bound.B
        return all((0 <= x <= B) if s == ml.NAT else (-B <= x <= B) for x, s in zip(p, self.amb.signs))

    def shifted(self, s):
        """Boolean array over the box: entry b is member(b + s), False off-box."""
        s = tuple(int(x) for x in s)
        hit = self._cache.get(("shift", s))
        if hit is not None:
            return hit
        out = np.zeros(self.shape, dtype=bool)
        src, dst = [], []
        for d, n in zip(s, self.shape):
            if abs(d) >= n:
                self._cache[("shift", s)] = out
                return out
            if d >= 0:
                dst.append(slice(0, n - d))
                src.append(slice(d, n))
            else:
                dst.append(slice(-d, n))
                src.append(slice(0, n + d))
        out[tuple(dst)] = self.table[tuple(src)]
        self._cache[("shift", s)] = out
        return out

    def first(self, mask):
        """Enumeration-order-first box point of a mask, or None."""
        if not mask.any():
            return None
        r = np.where(mask, self.rank, np.iinfo(np.int64).max)
        return self.points[int(r.min())]

    @property
    def natural_points(self):
        """Box points with zero integer coordinates."""
        hit = self._cache.get("nat")
        if hit is None:
            ints = self.amb.integer
            hit = [p for p in self.points if all(p[j] == 0 for j in ints)]
            self._cache["nat"] = hit
        return hit

    @property
    def natural_members(self):
        hit = self._cache.get("natm")
        if hit is None:
            hit = [p for p in self.natural_points if self.S.member(p)]
            self._cache["natm"] = hit
        return hit

    def unit_steps(self):
        """Unit moves of the ambient lattice: +e_i on natural, +-e_j on integer coords."""
        steps = []
        for i, s in enumerate(self.amb.signs):
            e = [0] * self.amb.dim
            e[i] = 1
            steps.append(tuple(e))
            if s == ml.INT:
                e[i] = -1
                steps.append(tuple(e))
        return steps

    # element classes ------------------------------------------------
    def element_class(self, X: str, v) -> bool:
        key = ("elem", X, v)
        hit = self._cache.get(key)
        if hit is None:
            hit = _ELEMENT_R[X](self.S, v, self.bound)
            self._cache[key] = hit
        return hit


def _irr_R(S, v, bound):
    return ml.is_atom(S, v)


def _sqf_R(S, v, bound):
    return S.member(v) and ml.square_part(S, v) is None


def _prime_R(S, v, bound):
    if not S.member(v) or S.grade(v) == 0:
        return False
    return ml.prime_R_bounded(S, v, bound).ok


def _gpr_R(S, v, bound):
    if not S.member(v):
        return False
    if S.grade(v) == 0:
        return True
    return ml.gpr_R_bounded(S, v, bound).ok


_ELEMENT_R = {"Irr": _irr_R, "Sqf": _sqf_R, "Prime": _prime_R, "Gpr": _gpr_R}
_ELEMENT_A = {"Irr": irr_A, "Sqf": sqf_A, "Prime": prime_A, "Gpr": gpr_A}

# the nine element-level nodes of the inclusion grid, row by row
SETINCL_NODES = (
    ("Irr", "Irr"), ("Prime", "Irr"), ("Prime", "Prime"),
    ("Irr", "Sqf"), ("Prime", "Sqf"), ("Prime", "Gpr"),
    ("Sqf", "Sqf"), ("Gpr", "Sqf"), ("Gpr", "Gpr"),
)


def setincl_id(X, Y):
    return f"SETINCL_{X}_{Y}"


# ---------------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class Condition:
    id: str
    statement: str
    search: Callable
    violates: Callable
    hypotheses: tuple = ()
    note: str | None = None
    params: tuple = field(default=())


CATALOG: dict = {}


def _register(id, statement, hypotheses=(), note=None, params=()):
    def deco(pair):
        search, violates = pair
        CATALOG[id] = Condition(id, statement, search, violates, tuple(hypotheses), note, tuple(params))
        return pair
    return deco


def _M(S, v):
    return S.member(v)


def _A(S, v):
    return S.ambient.contains(v)


# -- divisibility closure (R_0 cap A = R) ------------------------------

def _search_p1_1_iii(ctx):
    # a in S, b in A, a+b in S, b not in S.  Writing a = g + a', either
    # (g, a'+b) is already a witness or (a', b) is a smaller one, so a can be
    # taken to be a generator.
    S = ctx.S
    for c in ctx.members:
        for g in S.gens:
            b = vsub(c, g)
            if _A(S, b) and not S.member(b):
                return (g, b)
    return None


def _viol_p1_1_iii(S, w, **kw):
    a, b = w
    return _M(S, a) and _A(S, b) and _M(S, vadd(a, b)) and not _M(S, b)


def _search_p1_1_iv(ctx):
    w = _search_p1_1_iii(ctx)
    return None if w is None else (w[0], vadd(w[0], w[1]))


def _viol_p1_1_iv(S, w, **kw):
    u, v = w
    d = vsub(v, u)
    return _M(S, u) and _M(S, v) and _A(S, d) and not _M(S, d)


_register("P1_1_iii", "a in R, b in A, ab in R\\0 => b in R")((_search_p1_1_iii, _viol_p1_1_iii))
_register(
    "P1_1_iv", "a, b in R, a |_A b => a |_R b",
    note="also decides R_0 cap A = R (conditions (i)/(ii) are equivalent to it)",
)((_search_p1_1_iv, _viol_p1_1_iv))
_register("P1_3_i", "a, b in R, a |_A b => a |_R b")((_search_p1_1_iv, _viol_p1_1_iv))
_register("P2_2_ii", "R_0 cap A = R", note="decided through a |_A b => a |_R b")((_search_p1_1_iv, _viol_p1_1_iv))


# -- units ---------------------------------------------------------------

def _search_units(ctx):
    S = ctx.S
    for u in ctx.members:
        if is_unit_A(S.ambient, u) and not S.member(vscale(-1, u)):
            return (u,)
    return None


def _viol_units(S, w, **kw):
    (u,) = w
    return _M(S, u) and is_unit_A(S.ambient, u) and not _M(S, vscale(-1, u))


_register("P1_2_i", "R* = A* cap R")((_search_units, _viol_units))
_register("P1_2_ii", "a in R cap A* => a in R*")((_search_units, _viol_units))


def _search_rpr(ctx):
    # a common non-unit divisor of two A-coprime elements has empty natural
    # support, so it is itself a witness paired with itself.
    S = ctx.S
    for d in ctx.members:
        if is_unit_A(S.ambient, d) and S.grade(d) > 0:
            return (d, d)
    return None


def _viol_rpr(S, w, **kw):
    a, b = w
    return _M(S, a) and _M(S, b) and rpr_A(S.ambient, a, b) and ml.common_divisor_R(S, a, b) is not None


_register("P1_2_iii", "a rpr_A b => a rpr_R b")((_search_rpr, _viol_rpr))
_register("P1_3_iii", "a rpr_A b => a rpr_R b")((_search_rpr, _viol_rpr))


def _search_assoc(ctx):
    S = ctx.S
    groups: dict = {}
    for v in ctx.members:
        nat = tuple(v[i] for i in S.ambient.natural)
        groups.setdefault(nat, []).append(v)
    best = None
    for v in ctx.members:
        nat = tuple(v[i] for i in S.ambient.natural)
        for u in groups[nat]:
            if order_key(u) >= order_key(v):
                break
            if S.canonical(u) != S.canonical(v):
                cand = (u, v)
                if best is None or (order_key(v), order_key(u)) < (order_key(best[1]), order_key(best[0])):
                    best = cand
                break
        if best is not None:
            return best
    return None


def _viol_assoc(S, w, **kw):
    a, b = w
    return (
        _M(S, a) and _M(S, b) and associates_A(S.ambient, a, b)
        and not (_M(S, vsub(b, a)) and _M(S, vsub(a, b)))
    )


_register("P1_3_ii", "a ~_A b => a ~_R b")((_search_assoc, _viol_assoc))


def _search_irr_closed(ctx):
    S = ctx.S
    for v in ctx.classes:
        if irr_A(S.ambient, v) and not ml.is_atom(S, v):
            return (v,)
    return None


def _viol_irr_closed(S, w, **kw):
    (a,) = w
    return _M(S, a) and irr_A(S.ambient, a) and not ml.is_atom(S, a)


_register("P1_3_iv", "R cap Irr A subset Irr R")((_search_irr_closed, _viol_irr_closed))


# -- B-factorial closedness ---------------------------------------------

def _search_bfc_full(ctx):
    # a+b in S, a not in S: walking from a+b down to a by unit steps inside
    # the box, the first step leaving S is a witness with b a unit step.
    S = ctx.S
    steps = ctx.unit_steps()
    for c in ctx.members:
        for e in steps:
            a = vsub(c, e)
            if _A(S, a) and ctx.in_box(a) and not S.member(a):
                return (a, e)
    return None


def _viol_bfc_full(S, w, **kw):
    a, b = w
    return _A(S, a) and _A(S, b) and _M(S, vadd(a, b)) and not _M(S, a)


def _search_bfc_self(ctx):
    w = _search_p1_1_iii(ctx)
    return None if w is None else (w[1], w[0])


def _viol_bfc_self(S, w, **kw):
    a, b = w
    return _M(S, b) and _viol_bfc_full(S, w)


def _search_bfc_pth(ctx, p=2):
    # b = p*d; peeling unit steps off d as above
    S = ctx.S
    steps = ctx.unit_steps()
    for c in ctx.members:
        for e in steps:
            pe = vscale(p, e)
            a = vsub(c, pe)
            if _A(S, a) and ctx.in_box(a) and not S.member(a):
                return (a, pe)
    return None


def _viol_bfc_pth(S, w, p=2, **kw):
    a, b = w
    return all(x % p == 0 for x in b) and _viol_bfc_full(S, w)


_register("D2_1_Bfc_full", "a in A, b in A, ab in R\\0 => a in R (factorially closed)")((_search_bfc_full, _viol_bfc_full))
_register("D2_1_Bfc_self", "a in A, b in R, ab in R\\0 => a in R")((_search_bfc_self, _viol_bfc_self))
_register("D2_1_Bfc_pth", "a in A, b in A^p, ab in R\\0 => a in R", params=("p",))((_search_bfc_pth, _viol_bfc_pth))
_register("P2_2_iii", "R is self-factorially closed")((_search_bfc_self, _viol_bfc_self))
_register("P2_2_iv", "R is A^p-factorially closed", params=("p",))((_search_bfc_pth, _viol_bfc_pth))


# -- square-factorial closedness and root closedness ----------------------

def _search_sqfc(ctx, points=None):
    # 2x + y = c with y square-free in A fixes the natural part of x and y;
    # only the integer coordinates of x remain free.
    S = ctx.S
    amb = S.ambient
    nat, ints = amb.natural, amb.integer
    B = ctx.bound.B
    members = ctx.members if points is None else points
    int_choices = list(itertools.product(range(-B, B + 1), repeat=len(ints)))
    int_choices.sort(key=order_key)
    for c in members:
        base = list(c)
        for i in nat:
            base[i] = c[i] // 2
        for choice in int_choices:
            x = list(base)
            for j, t in zip(ints, choice):
                x[j] = t
            x = tuple(x)
            y = vsub(c, vscale(2, x))
            if not ctx.in_box(y):
                continue
            if not (S.member(x) and S.member(y)):
                return (x, y)
    return None


def _viol_sqfc(S, w, **kw):
    x, y = w
    return (
        _A(S, x) and _A(S, y) and sqf_A(S.ambient, y)
        and _M(S, vadd(vscale(2, x), y)) and not (_M(S, x) and _M(S, y))
    )


def _search_root(ctx):
    S = ctx.S
    K = ctx.bound.K
    for v in ctx.points:
        if S.member(v):
            continue
        for k in range(2, K + 1):
            kv = vscale(k, v)
            if not ctx.in_box(kv):
                break
            if S.member(kv):
                return (v, k)
    return None


def _viol_root(S, w, **kw):
    v, k = w
    return k >= 2 and _A(S, v) and _M(S, vscale(k, v)) and not _M(S, v)


_register("T3_4_ii_sqfc", "x in A, y in Sqf A, x^2 y in R\\0 => x, y in R")((_search_sqfc, _viol_sqfc))
_register("root_closed", "x in A, x^k in R => x in R")((_search_root, _viol_root))


# -- inclusion grid ------------------------------------------------------

def _make_setincl(X, Y):
    def search(ctx):
        S = ctx.S
        yA = _ELEMENT_A[Y]
        for v in ctx.classes:
            if yA(S.ambient, v):
                continue
            if ctx.element_class(X, v):
                return (v,)
        return None

    def violates(S, w, bound=SearchBound(), **kw):
        (v,) = w
        return _ELEMENT_R[X](S, v, bound) and not _ELEMENT_A[Y](S.ambient, v)

    return search, violates


for _X, _Y in SETINCL_NODES:
    _register(setincl_id(_X, _Y), f"{_X} R subset {_Y} A")(_make_setincl(_X, _Y))
_register("T2_4_ii_mono", "Irr R subset Sqf A")(_make_setincl("Irr", "Sqf"))
_register("T2_4_iii_mono", "Sqf R subset Sqf A")(_make_setincl("Sqf", "Sqf"))


# -- two-element exponent forms (a^k b) ----------------------------------

def _kform_search(ctx, mask_fn, kmin, with_k=None):
    """Search (a, b) over the box in (a, b) enumeration order.

    ``mask_fn(a)`` returns a boolean array over b of the hypothesis; the
    conclusion is "a and b in S".  ``with_k`` (a list) makes the search loop
    over k and return (a, b, k).
    """
    S = ctx.S
    for a in ctx.points:
        if not ctx.in_box(vscale(kmin, a)):
            continue
        a_in = S.member(a)
        if with_k is None:
            h = mask_fn(a)
            fail = h if not a_in else h & ~ctx.table
            b = ctx.first(fail)
            if b is not None:
                return (a, b)
        else:
            for k in with_k:
                if not ctx.in_box(vscale(k, a)):
                    break
                h = ctx.shifted(vscale(k, a))
                fail = h if not a_in else h & ~ctx.table
                b = ctx.first(fail)
                if b is not None:
                    return (a, b, k)
    return None


def _kmask(ctx, a, ks, combine):
    masks = [ctx.shifted(vscale(k, a)) for k in ks]
    out = masks[0]
    for m in masks[1:]:
        out = combine(out, m)
    return out


def _conj(ks):
    return lambda ctx: _kform_search(ctx, lambda a: _kmask(ctx, a, ks, np.logical_and), min(ks))


def _disj(ks):
    return lambda ctx: _kform_search(ctx, lambda a: _kmask(ctx, a, ks, np.logical_or), min(ks))


def _conclusion_fails(S, a, b):
    return not (_M(S, a) and _M(S, b))


def _viol_conj(ks):
    def v(S, w, **kw):
        a, b = w
        return _A(S, a) and _A(S, b) and all(_M(S, vadd(vscale(k, a), b)) for k in ks) and _conclusion_fails(S, a, b)
    return v


def _viol_disj(ks):
    def v(S, w, **kw):
        a, b = w
        return _A(S, a) and _A(S, b) and any(_M(S, vadd(vscale(k, a), b)) for k in ks) and _conclusion_fails(S, a, b)
    return v


def _viol_single_k(kmin):
    def v(S, w, bound=SearchBound(), **kw):
        a, b, k = w
        return kmin <= k and _A(S, a) and _A(S, b) and _M(S, vadd(vscale(k, a), b)) and _conclusion_fails(S, a, b)
    return v


_register("P4_5_i", "ab in R\\0 => a, b in R")((_conj([1]), _viol_conj([1])))
_register("P4_5_ii", "a^2 b in R\\0 => a, b in R")((_conj([2]), _viol_conj([2])))
_register("P4_5_iii", "a^3 b in R\\0 => a, b in R")((_conj([3]), _viol_conj([3])))
_register("P4_5_iv", "a^2 b or a^3 b in R\\0 => a, b in R")((_disj([2, 3]), _viol_disj([2, 3])))
_register("P4_5_v", "for all k > 1: a^k b in R\\0 => a, b in R")(
    (lambda ctx: _kform_search(ctx, None, 2, with_k=list(range(2, ctx.bound.K + 1))), _viol_single_k(2))
)
_register("P4_5_vi", "for all k >= 1: a^k b in R\\0 => a, b in R")(
    (lambda ctx: _kform_search(ctx, None, 1, with_k=list(range(1, ctx.bound.K + 1))), _viol_single_k(1))
)

_register("P4_6_i", "ab, a^2 b in R\\0 => a, b in R")((_conj([1, 2]), _viol_conj([1, 2])))
_register("P4_6_ii", "a^2 b, a^3 b in R\\0 => a, b in R")((_conj([2, 3]), _viol_conj([2, 3])))


def _p46_range(lo):
    def search(ctx):
        return _conj(list(range(lo, ctx.bound.K + 1)))(ctx)

    def violates(S, w, bound=SearchBound(), **kw):
        return _viol_conj(list(range(lo, bound.K + 1)))(S, w)

    return search, violates


_register("P4_6_iii", "(a^k b in R\\0 for all k >= 1) => a, b in R")(_p46_range(1))
_register("P4_6_iv", "(a^k b in R\\0 for all k > 1) => a, b in R")(_p46_range(2))


def _search_p46_v(ctx):
    # every tail k0..K contains the tail K-1..K, so the bounded hypothesis
    # reduces to those two exponents; report the smallest tail that holds
    K = ctx.bound.K
    w = _conj([K - 1, K])(ctx)
    if w is None:
        return None
    a, b = w
    k0 = K - 1
    while k0 > 1 and ctx.S.member(vadd(vscale(k0 - 1, a), b)):
        k0 -= 1
    return (a, b, k0)


def _viol_p46_v(S, w, bound=SearchBound(), **kw):
    a, b, k0 = w
    return 1 <= k0 <= bound.K - 1 and _viol_conj(list(range(k0, bound.K + 1)))(S, (a, b))


_register("P4_6_v", "(exists k0, a^k b in R\\0 for all k >= k0) => a, b in R")((_search_p46_v, _viol_p46_v))


# -- P4_1 .. P4_4 family: need R* = A*, decided on natural coordinates ------

def _digits(c, i):
    return tuple((x >> i) & 1 for x in c)


def _nbits(c):
    return max((x.bit_length() for x in c), default=0)


def _search_p41_ii(ctx):
    S = ctx.S
    for c in ctx.natural_members:
        levels = max(_nbits(c), 1)
        if levels > MAX_FACTORS + 1:
            continue
        s = tuple(_digits(c, i) for i in range(levels))
        if not all(S.member(x) for x in s):
            return s
    return None


def _viol_p41_ii(S, w, **kw):
    if not w or len(w) > MAX_FACTORS + 1 or not all(_A(S, s) and sqf_A(S.ambient, s) for s in w):
        return False
    total = S.ambient.zero()
    for i, s in enumerate(w):
        total = vadd(total, vscale(2 ** i, s))
    return _M(S, total) and not all(_M(S, s) for s in w)


def _search_p41_iii(ctx):
    S = ctx.S
    for c in ctx.natural_members:
        levels = max(_nbits(c), 1)
        digits = tuple(_digits(c, i) for i in range(levels))
        for i, d in enumerate(digits):
            if not S.member(d):
                return (c, i, digits)
    return None


def _viol_p41_iii(S, w, **kw):
    k, i, digits = w
    levels = max(_nbits(k), 1)
    if tuple(digits) != tuple(_digits(k, j) for j in range(levels)) or not 0 <= i < levels:
        return False
    return _A(S, k) and _M(S, k) and not _M(S, digits[i])


def _search_p42_ii(ctx):
    S = ctx.S
    for c in ctx.natural_members:
        for i in S.ambient.natural:
            if c[i] >= 1:
                q = tuple(1 if j == i else 0 for j in range(len(c)))
                if not S.member(q):
                    return (c, q)
    return None


def _viol_p42_ii(S, w, **kw):
    c, q = w
    return _M(S, c) and irr_A(S.ambient, q) and divides_A(S.ambient, q, c) and not _M(S, q)


def _support(c, nat):
    return [i for i in nat if c[i] > 0]


def _restrict(c, idxs):
    return tuple(x if i in idxs else 0 for i, x in enumerate(c))


def _set_partitions(items, max_blocks):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, max_blocks):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        if len(part) < max_blocks:
            yield [[first]] + part


def _search_p43_i(ctx):
    S = ctx.S
    for c in ctx.natural_members:
        sup = _support(c, S.ambient.natural)
        for r in range(1, len(sup)):
            for block in itertools.combinations(sup, r):
                a = _restrict(c, set(block))
                b = vsub(c, a)
                if not (S.member(a) and S.member(b)):
                    return (a, b)
    return None


def _viol_p43_i(S, w, **kw):
    a, b = w
    return _A(S, a) and _A(S, b) and rpr_A(S.ambient, a, b) and _M(S, vadd(a, b)) and _conclusion_fails(S, a, b)


def _search_p43_ii(ctx):
    S = ctx.S
    for c in ctx.natural_members:
        sup = _support(c, S.ambient.natural)
        parts = sorted(
            (sorted(map(sorted, p)) for p in _set_partitions(sup, MAX_FACTORS) if len(p) >= 2),
            key=lambda p: (len(p), p),
        )
        for p in parts:
            tup = tuple(_restrict(c, set(block)) for block in p)
            if not all(S.member(x) for x in tup):
                return tup
    return None


def _viol_p43_ii(S, w, **kw):
    if not 2 <= len(w) <= MAX_FACTORS or not all(_A(S, a) for a in w):
        return False
    if not all(rpr_A(S.ambient, a, b) for a, b in itertools.combinations(w, 2)):
        return False
    total = S.ambient.zero()
    for a in w:
        total = vadd(total, a)
    return _M(S, total) and not all(_M(S, a) for a in w)


def _search_p43_iii(ctx):
    S = ctx.S
    for c in ctx.natural_members:
        for i in _support(c, S.ambient.natural):
            part = _restrict(c, {i})
            if not S.member(part):
                return (c, part)
    return None


def _viol_p43_iii(S, w, **kw):
    c, part = w
    sup = _support(part, S.ambient.natural)
    return (
        len(sup) == 1 and part[sup[0]] == c[sup[0]] and _A(S, c) and _M(S, c)
        and divides_A(S.ambient, part, c) and not _M(S, part)
    )


def _search_p44_i(ctx):
    S = ctx.S
    K = ctx.bound.K
    for c in ctx.natural_members:
        sup = _support(c, S.ambient.natural)
        for k in range(2, K + 1):
            for r in range(1, len(sup) + 1):
                for block in itertools.combinations(sup, r):
                    if any(c[i] % k for i in block):
                        continue
                    a = tuple(c[i] // k if i in block else 0 for i in range(len(c)))
                    b = tuple(0 if i in block else c[i] for i in range(len(c)))
                    if not (S.member(a) and S.member(b)):
                        return (a, b, k)
    return None


def _viol_p44_i(S, w, **kw):
    a, b, k = w
    return k >= 2 and _A(S, a) and _A(S, b) and rpr_A(S.ambient, a, b) and _M(S, vadd(vscale(k, a), b)) and _conclusion_fails(S, a, b)


def _p44_ii_parts(c, nat):
    dim = len(c)
    parts = [tuple(1 if j == i else 0 for j in range(dim)) for i in nat if c[i] >= 2]
    ones = tuple(1 if (i in nat and c[i] == 1) else 0 for i in range(dim))
    if any(ones):
        parts.append(ones)
    return parts


def _search_p44_ii(ctx):
    S = ctx.S
    for c in ctx.natural_members:
        for part in _p44_ii_parts(c, S.ambient.natural):
            if not S.member(part):
                return (c, part)
    return None


def _viol_p44_ii(S, w, **kw):
    c, part = w
    return _A(S, c) and _M(S, c) and part in _p44_ii_parts(c, S.ambient.natural) and not _M(S, part)


def _search_p41_i(ctx):
    return _search_sqfc(ctx, ctx.natural_members)


def _search_p42_i(ctx):
    S = ctx.S
    steps = [e for e in ctx.unit_steps() if not is_unit_A(S.ambient, e)]
    for c in ctx.natural_members:
        for e in steps:
            a = vsub(c, e)
            if _A(S, a) and not S.member(a):
                return (a, e)
    return None


def _viol_p42_i(S, w, **kw):
    a, b = w
    return _A(S, a) and _A(S, b) and _M(S, vadd(a, b)) and _conclusion_fails(S, a, b)


UNITS = ("units_equal",)
_register("P4_1_i", "a in A, b in Sqf A, a^2 b in R\\0 => a, b in R", UNITS)((_search_p41_i, _viol_sqfc))
_register("P4_1_ii", "s_i in Sqf A, s_n^(2^n)...s_1^2 s_0 in R => all s_i in R", UNITS)((_search_p41_ii, _viol_p41_ii))
_register("P4_1_iii", "q_1^k_1...q_n^k_n in R => every binary-digit product in R", UNITS)((_search_p41_iii, _viol_p41_iii))
_register("P4_2_i", "ab in R\\0 => a, b in R", UNITS)((_search_p42_i, _viol_p42_i))
_register("P4_2_ii", "q_1^k_1...q_n^k_n in R, k_j >= 1 => q_j in R", UNITS)((_search_p42_ii, _viol_p42_ii))
_register("P4_3_i", "a rpr b, ab in R\\0 => a, b in R", UNITS)((_search_p43_i, _viol_p43_i))
_register("P4_3_ii", "pairwise rpr a_i, a_1...a_n in R\\0 => all a_i in R", UNITS)((_search_p43_ii, _viol_p43_ii))
_register("P4_3_iii", "q_1^k_1...q_n^k_n in R => each q_j^k_j in R", UNITS)((_search_p43_iii, _viol_p43_iii))
_register("P4_4_i", "a rpr b, k > 1, a^k b in R\\0 => a, b in R", UNITS)((_search_p44_i, _viol_p44_i))
_register("P4_4_ii", "q_1^k_1..q_r^k_r q_(r+1)..q_n in R, k_j > 1 => q_1..q_r, q_(r+1)...q_n in R", UNITS)(
    (_search_p44_ii, _viol_p44_ii)
)


# ---------------------------------------------------------------------------
# hypotheses

@dataclass(frozen=True)
class HypothesisReport:
    units_equal: Verdict
    fraction_closed: Verdict
    ufd_ambient: bool = True

    def passes(self, names) -> bool:
        for n in names:
            if n == "units_equal" and not self.units_equal.ok:
                return False
            if n == "fraction_closed" and not self.fraction_closed.ok:
                return False
        return True


def units_equal(S: MonomialSubring, bound: SearchBound = SearchBound()) -> Verdict:
    """R* = A*: every integer unit direction must be a unit of S (exact)."""
    for j in S.ambient.integer:
        e = tuple(1 if i == j else 0 for i in range(S.ambient.dim))
        if not (S.member(e) and S.member(vscale(-1, e))):
            return Verdict.fails(bound, (e,), condition="units_equal")
    return Verdict.holds(bound, condition="units_equal")


def units_equal_violates(S, w, **kw):
    (e,) = w
    return is_unit_A(S.ambient, e) and not (S.member(e) and S.member(vscale(-1, e)))


def hypothesis_report(S: MonomialSubring, bound: SearchBound = SearchBound()) -> HypothesisReport:
    return HypothesisReport(
        units_equal=units_equal(S, bound),
        fraction_closed=evaluate("P1_1_iv", S, bound).named("fraction_closed"),
        ufd_ambient=True,
    )


# ---------------------------------------------------------------------------
# evaluation

_CONTEXTS: dict = {}


def context(S: MonomialSubring, bound: SearchBound) -> Context:
    key = (S.key(), bound)
    ctx = _CONTEXTS.get(key)
    if ctx is None or ctx.S is not S:
        if len(_CONTEXTS) > 64:
            _CONTEXTS.clear()
        ctx = Context(S, bound)
        _CONTEXTS[key] = ctx
    return ctx


def evaluate(id: str, S: MonomialSubring, bound: SearchBound = SearchBound(), p: int = 2) -> Verdict:
    """Evaluate a catalog condition on S within ``bound``."""
    cond = CATALOG.get(id)
    if cond is None:
        raise UnknownCondition(id)
    if "p" in cond.params and (p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1))):
        raise ValueError(f"p must be a prime >= 2, got {p}")
    ctx = context(S, bound)
    cache_key = ("verdict", id, p)
    hit = ctx._cache.get(cache_key)
    if hit is not None:
        return hit
    if cond.hypotheses:
        if not units_equal(S, bound).ok:
            v = Verdict.violated(bound, "R* != A* (units of the subring differ from ambient units)", condition=id)
            ctx._cache[cache_key] = v
            return v
    if "p" in cond.params:
        w = cond.search(ctx, p=p)
    else:
        w = cond.search(ctx)
    v = Verdict.holds(bound, condition=id, note=cond.note) if w is None else Verdict.fails(bound, w, condition=id)
    ctx._cache[cache_key] = v
    return v


# alias used by the CLI and docs
eval = evaluate


def violates(id: str, S: MonomialSubring, witness, bound: SearchBound = SearchBound(), p: int = 2) -> bool:
    """Replay a witness against the defining formula of ``id`` (exact)."""
    cond = CATALOG.get(id)
    if cond is None:
        raise UnknownCondition(id)
    try:
        return bool(cond.violates(S, tuple(witness), bound=bound, p=p))
    except (TypeError, ValueError):
        return False


def catalog_ids() -> list:
    return list(CATALOG)


def eval_divis_closed(S, bound=SearchBound()):
    return evaluate("P1_1_iii", S, bound), evaluate("P1_1_iv", S, bound)


def eval_units_closed(S, bound=SearchBound()):
    return tuple(evaluate(i, S, bound) for i in ("P1_2_i", "P1_2_ii", "P1_2_iii"))


def eval_Bfc(S, mode: str, bound=SearchBound(), p: int = 2):
    return evaluate({"self": "D2_1_Bfc_self", "full": "D2_1_Bfc_full", "pth": "D2_1_Bfc_pth"}[mode], S, bound, p=p)


def eval_sqfc_and_root(S, bound=SearchBound()):
    return evaluate("T3_4_ii_sqfc", S, bound), evaluate("root_closed", S, bound)


def eval_setincl(S, X: str, Y: str, bound=SearchBound()):
    if (X, Y) not in SETINCL_NODES:
        raise ValueError(f"unsupported inclusion node {X} R subset {Y} A")
    return evaluate(setincl_id(X, Y), S, bound)


def eval_p4(S, prop: str, variant: str, bound=SearchBound()):
    return evaluate(f"P{prop}_{variant}", S, bound)
