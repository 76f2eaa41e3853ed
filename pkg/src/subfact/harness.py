"""Random instances, implication/equivalence suites and witness shrinking."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from . import conditions as cond
from . import monolattice as ml
from . import transports as tr
from .monolattice import AmbientLattice, MonomialSubring, make_subring, vsub, vscale
from .verdict import SearchBound, Verdict


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    n_max: int = 3
    gen_count: int = 5
    coord_max: int = 4
    unit_dirs: int = 1
    instance_count: int = 100

    def __post_init__(self):
        if not 1 <= self.n_max <= 3:
            raise ValueError("n_max must be in 1..3")
        if not 1 <= self.gen_count <= 5:
            raise ValueError("gen_count must be in 1..5")
        if not 1 <= self.coord_max <= 4:
            raise ValueError("coord_max must be in 1..4")
        if not 0 <= self.unit_dirs <= 1:
            raise ValueError("unit_dirs must be 0 or 1")
        if self.instance_count < 0:
            raise ValueError("instance_count must be >= 0")


def gen_instance(params: GenParams, index: int) -> MonomialSubring:
    """Deterministic random subring number ``index`` of the sequence.

    Integer coordinates only appear alongside at least one natural one.  A
    unit direction is made a unit of S half of the time, and a quarter of
    the instances also contain p * e_i for every natural i (p in {2, 3}), so
    the hypotheses of the equivalence suites are met often enough.
    """
    rng = random.Random(f"{params.seed}:{index}")
    n = rng.randint(1, params.n_max)
    n_int = rng.randint(0, min(params.unit_dirs, n - 1))
    int_pos = set(rng.sample(range(n), n_int))
    signs = tuple(ml.INT if i in int_pos else ml.NAT for i in range(n))
    amb = AmbientLattice(n, signs)
    cm = params.coord_max
    gens = []
    for _ in range(rng.randint(1, params.gen_count)):
        while True:
            g = tuple(rng.randint(-cm, cm) if s == ml.INT else rng.randint(0, cm) for s in signs)
            if amb.grade(g) > 0:
                break
        gens.append(g)
    if rng.random() < 0.25:
        p = rng.choice((2, 3))
        for i in amb.natural:
            gens.append(tuple(p if j == i else 0 for j in range(n)))
    units = []
    for j in amb.integer:
        if rng.random() < 0.5:
            units.append(tuple(rng.choice((1, 2)) if i == j else 0 for i in range(n)))
    gens = sorted(set(gens), key=ml.order_key)
    return make_subring(amb, gens, units, name=f"seed{params.seed}#{index}")


def instances(params: GenParams) -> list:
    return [gen_instance(params, i) for i in range(params.instance_count)]


# ---------------------------------------------------------------------------
# node evaluation (catalog ids plus the units hypothesis)

def node_verdict(node: str, S: MonomialSubring, bound: SearchBound, p: int = 2) -> Verdict:
    if node == "units_equal":
        return cond.units_equal(S, bound)
    return cond.evaluate(node, S, bound, p=p)


def node_violates(node: str, S, witness, bound: SearchBound, p: int = 2) -> bool:
    if node == "units_equal":
        try:
            return cond.units_equal_violates(S, tuple(witness))
        except (TypeError, ValueError):
            return False
    return cond.violates(node, S, witness, bound, p=p)


def _jsonable(w):
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    return w


# ---------------------------------------------------------------------------
# reports

@dataclass
class SuiteReport:
    suite: str
    bound: SearchBound
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    seed: int | None = None
    timing: float = 0.0

    @property
    def counts(self) -> dict:
        out: dict = {}
        for r in self.rows:
            out[r["status"]] = out.get(r["status"], 0) + 1
        out["skipped"] = len(self.skipped)
        out["violations"] = len(self.violations)
        return dict(sorted(out.items()))

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        # timing is left out so that reports are byte-for-byte reproducible
        return {
            "suite": self.suite,
            "seed": self.seed,
            "bound": self.bound.to_dict(),
            "counts": self.counts,
            "rows": self.rows,
            "violations": self.violations,
            "skipped": self.skipped,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        parts = ", ".join(f"{k}={v}" for k, v in self.counts.items())
        return f"{self.suite}: {parts} ({self.timing:.2f}s)"


def _edge_row(edge, S, index, bound, p, report):
    dv = node_verdict(edge.dst, S, bound, p)
    sv = node_verdict(edge.src, S, bound, p)
    row = {
        "instance": index,
        "edge": f"{edge.src} => {edge.dst}",
        "src": sv.outcome,
        "dst": dv.outcome,
        "witness": _jsonable(dv.witness),
    }
    if p != 2:
        row["p"] = p
    if dv.failed:
        w2 = edge.transport(S, dv.witness, bound, p)
        if isinstance(w2, tr.Breach):
            row["status"] = "hypothesis_breach"
            row["transported"] = _jsonable(w2.witness)
            row["reason"] = w2.hypothesis
        elif w2 is not None and node_violates(edge.src, S, w2, bound, p):
            row["status"] = "transported"
            row["transported"] = _jsonable(w2)
        else:
            row["status"] = "violation"
            row["transported"] = _jsonable(w2)
            rec = dict(row)
            rec["instance_data"] = S.to_dict()
            if edge.dst != "units_equal":
                sh = shrink(S, edge.dst, dv.witness, bound, p)
                rec["shrunk"] = {"instance": sh.subring.to_dict(), "witness": _jsonable(sh.witness)}
            report.violations.append(rec)
    elif sv.failed:
        row["status"] = "strict"
    elif dv.outcome == sv.outcome == "holds":
        row["status"] = "both_hold"
    else:
        row["status"] = "not_applicable"
    report.rows.append(row)


def run_implication_suite(dag, subrings, bound: SearchBound = SearchBound(), seed=None) -> SuiteReport:
    """For every edge P => Q: a failure of Q must transport to a failure of P."""
    t0 = time.perf_counter()
    rep = SuiteReport("implications", bound, seed=seed)
    for idx, S in enumerate(subrings):
        for e in dag:
            _edge_row(e, S, idx, bound, 2, rep)
    rep.timing = time.perf_counter() - t0
    return rep


def _hypotheses_hold(S, names, bound, p):
    for h in names:
        if h == "units_equal" and not cond.units_equal(S, bound).ok:
            return "R* != A*"
        if h == "fraction_closed" and not cond.evaluate("P1_1_iv", S, bound).ok:
            return "R_0 cap A != R"
        if h == "pth_powers" and not tr.pth_powers_inside(S, p):
            return f"{p} * ambient not inside S"
    return None


def run_equivalence_suite(prop: str, subrings, bound: SearchBound = SearchBound(), primes=(2, 3), seed=None) -> SuiteReport:
    """Witness transport along both directions of each stated equivalence.

    Instances that miss a hypothesis are listed under ``skipped``.
    """
    t0 = time.perf_counter()
    rep = SuiteReport(f"equivalence_{prop}", bound, seed=seed)
    names = tr.equivalence_hypotheses(prop)
    ps = tuple(primes) if "pth_powers" in names else (2,)
    for idx, S in enumerate(subrings):
        for p in ps:
            why = _hypotheses_hold(S, names, bound, p)
            if why is not None:
                entry = {"instance": idx, "reason": why}
                if len(ps) > 1:
                    entry["p"] = p
                rep.skipped.append(entry)
                continue
            for e in tr.equivalence_edges(prop, S):
                _edge_row(e, S, idx, bound, p, rep)
    rep.timing = time.perf_counter() - t0
    return rep


LEMMAS = (
    ("Irr R subset Sqf R", "Irr", "Sqf"),
    ("Prime R subset Irr R", "Prime", "Irr"),
    ("Prime R subset Gpr R", "Prime", "Gpr"),
    ("Gpr R subset Sqf R", "Gpr", "Sqf"),
)


def run_lemma_suite(subrings, bound: SearchBound = SearchBound(), seed=None) -> SuiteReport:
    """Element inclusions inside R, checked on every box class."""
    t0 = time.perf_counter()
    rep = SuiteReport("lemmas", bound, seed=seed)
    for idx, S in enumerate(subrings):
        ctx = cond.context(S, bound)
        bad = {name: None for name, _, _ in LEMMAS}
        for v in ctx.classes:
            if S.grade(v) == 0:
                continue
            for name, X, Y in LEMMAS:
                if bad[name] is None and ctx.element_class(X, v) and not ctx.element_class(Y, v):
                    bad[name] = v
        for name, _, _ in LEMMAS:
            row = {"instance": idx, "lemma": name, "status": "holds" if bad[name] is None else "violation"}
            if bad[name] is not None:
                row["witness"] = list(bad[name])
                rep.violations.append(dict(row, instance_data=S.to_dict()))
            rep.rows.append(row)
    rep.timing = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# shrinking

@dataclass(frozen=True)
class ShrinkResult:
    subring: MonomialSubring
    witness: tuple


def _size(w):
    if isinstance(w, (tuple, list)):
        return sum(_size(x) for x in w)
    return abs(w)


def _within(new, old):
    if isinstance(new, (tuple, list)):
        return len(new) == len(old) and all(_within(a, b) for a, b in zip(new, old))
    return abs(new) <= abs(old)


def _replace(w, path, value):
    if not path:
        return value
    i = path[0]
    items = list(w)
    items[i] = _replace(items[i], path[1:], value)
    return tuple(items)


def _leaves(w, path=()):
    if isinstance(w, (tuple, list)):
        for i, x in enumerate(w):
            yield from _leaves(x, path + (i,))
    else:
        yield path, w


def _point_slots(w):
    """Top-level witness entries that are lattice points."""
    return [i for i, x in enumerate(w) if isinstance(x, tuple) and x and all(isinstance(c, int) for c in x)]


def _moves(S, w):
    # single coordinate toward zero
    for path, x in _leaves(w):
        if x != 0:
            yield _replace(w, path, x - (1 if x > 0 else -1))
    # translate every point entry by -g or by a unit step
    slots = _point_slots(w)
    if len(slots) >= 2:
        steps = list(S.gens)
        for i in range(S.ambient.dim):
            e = tuple(1 if j == i else 0 for j in range(S.ambient.dim))
            steps += [e, vscale(-1, e)]
        for g in steps:
            items = list(w)
            for i in slots:
                items[i] = vsub(items[i], g)
            yield tuple(items)


def shrink(S: MonomialSubring, condition: str, witness, bound: SearchBound = SearchBound(), p: int = 2) -> ShrinkResult:
    """Greedy shrinking: drop generators, then pull coordinates toward zero.

    Every accepted step keeps the witness replaying, and no coordinate grows
    in absolute value, so the result is coordinate-wise below the input.
    """
    w0 = tuple(witness)
    if not cond.violates(condition, S, w0, bound, p=p):
        raise ValueError(f"witness {w0} does not violate {condition}")
    changed = True
    while changed:
        changed = False
        for g in S.gens:
            rest = [x for x in S.gens if x != g]
            T = make_subring(S.ambient, rest, S.unit_gens, name=S.name)
            if cond.violates(condition, T, w0, bound, p=p):
                S, changed = T, True
                break
    w = w0
    improved = True
    while improved:
        improved = False
        for cand in _moves(S, w):
            if _size(cand) < _size(w) and _within(cand, w0) and cond.violates(condition, S, cand, bound, p=p):
                w, improved = cand, True
                break
    return ShrinkResult(S, w)
