"""Command line front end.

Exit status: 0 when everything holds / is consistent / passes, 1 on a
failure or mismatch, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import conditions as cond
from . import monolattice as ml
from . import transports as tr
from .exactpoly import ParseError
from .fixtures import run_fixtures, format_table
from .harness import GenParams, instances, run_equivalence_suite, run_implication_suite, run_lemma_suite
from .jacobian import JacobianError, PolyMap, bridge_check, minor_report
from .verdict import SearchBound

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _bound(args) -> SearchBound:
    try:
        return SearchBound(args.bound, args.power_bound)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _point(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError as exc:
        raise InputError(f"bad point {text!r}: expected comma-separated integers") from exc


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    S = ml.load_instance(args.instance)
    bound = _bound(args)
    ids = cond.catalog_ids() if args.condition == "all" else [c.strip() for c in args.condition.split(",")]
    unknown = [i for i in ids if i not in cond.CATALOG]
    if unknown:
        raise InputError(f"unknown condition id(s): {', '.join(unknown)}")
    verdicts = [cond.evaluate(i, S, bound, p=args.prime_p) for i in ids]
    payload = {"instance": S.to_dict(), "verdicts": [v.to_dict() for v in verdicts]}
    _emit(args, payload, "\n".join(str(v) for v in verdicts))
    return EXIT_FAIL if any(v.failed for v in verdicts) else EXIT_OK


LATTICE_QUERIES = ("member", "atoms", "sqf", "prime", "gpr", "factorizations")


def cmd_lattice(args) -> int:
    S = ml.load_instance(args.instance)
    bound = _bound(args)
    q = args.query
    if q == "atoms":
        atoms = sorted(ml.atoms_up_to(S, args.grade_bound), key=ml.order_key)
        _emit(args, {"query": q, "atoms": [list(a) for a in atoms]}, " ".join(map(str, atoms)))
        return EXIT_OK
    if args.point is None:
        raise InputError(f"--point is required for query {q!r}")
    v = _point(args.point)
    if len(v) != S.ambient.dim:
        raise InputError(f"point {v} has dimension {len(v)}, instance has {S.ambient.dim}")
    if q == "member":
        res = ml.member(S, v)
        _emit(args, {"query": q, "point": list(v), "result": res}, str(res))
        return EXIT_OK if res else EXIT_FAIL
    if not S.member(v):
        raise InputError(f"{v} is not in the subring")
    if q == "sqf":
        res = ml.squarefree_R(S, v)
        _emit(args, {"query": q, "point": list(v), "result": res}, str(res))
        return EXIT_OK if res else EXIT_FAIL
    if q == "factorizations":
        facs = ml.factorizations(S, v)
        payload = {"query": q, "point": list(v), "factorizations": [[[list(a), m] for a, m in f] for f in facs]}
        _emit(args, payload, "\n".join(" + ".join(f"{m}*{a}" for a, m in f) for f in facs))
        return EXIT_OK
    if S.grade(v) == 0:
        raise InputError(f"{v} is a unit")
    fn = ml.prime_R_bounded if q == "prime" else ml.gpr_R_bounded
    verdict = fn(S, v, bound).named(f"{q}({','.join(map(str, v))})")
    _emit(args, verdict.to_dict(), str(verdict))
    return EXIT_OK if verdict.ok else EXIT_FAIL


def _split_polys(text):
    sep = ";" if ";" in text else ","
    return [p for p in (x.strip() for x in text.split(sep)) if p]


def cmd_jacobian(args) -> int:
    if args.input:
        try:
            with open(args.input) as fh:
                data = json.load(fh)
            names, polys = data["vars"], data["polys"]
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.input}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        except (KeyError, TypeError) as exc:
            raise InputError(f"{args.input}: expected {{'vars': [...], 'polys': [...]}}") from exc
    else:
        if not args.vars or not args.polys:
            raise InputError("give --vars and --polys, or --input FILE")
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
        polys = _split_polys(args.polys)
    m = PolyMap.parse(names, polys)
    if args.bridge:
        rep = bridge_check(m, _bound(args), seed=args.seed)
        payload = dict(m.to_dict(), **rep.to_dict())
        text = f"{rep.status}  witness={rep.witness}  gcd={rep.gcd.to_str(m.names)}  verdict={rep.verdict}"
        _emit(args, payload, text)
        return EXIT_OK if rep.consistent else EXIT_FAIL
    rep = minor_report(m, seed=args.seed)
    payload = dict(m.to_dict(), **rep.to_dict())
    lines = [f"minor{tuple(i + 1 for i in idx)} = {rep.minors[idx].to_str(m.names)}" for idx in rep.indices]
    lines.append(f"gcd = {rep.gcd.to_str(m.names)}")
    lines.append(f"verdict = {rep.verdict}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_harness(args) -> int:
    params = GenParams(seed=args.seed, instance_count=args.count)
    subrings = instances(params)
    bound = _bound(args)
    reports = []
    if args.suite in ("lemmas", "all"):
        reports.append(run_lemma_suite(subrings, bound, seed=args.seed))
    if args.suite in ("implications", "all"):
        reports.append(run_implication_suite(tr.implication_dag(), subrings, bound, seed=args.seed))
    if args.suite in ("equivalence", "all"):
        props = sorted(tr.EQUIVALENCES) if args.prop == "all" else [args.prop]
        for prop in props:
            if prop not in tr.EQUIVALENCES:
                raise InputError(f"unknown proposition {prop!r}; choose from {sorted(tr.EQUIVALENCES)}")
            reports.append(run_equivalence_suite(prop, subrings, bound, seed=args.seed))
    payload = {"params": dataclasses.asdict(params), "reports": [r.to_dict() for r in reports]}
    _emit(args, payload, "\n".join(r.summary() for r in reports))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_fixtures(args) -> int:
    rows = run_fixtures(_bound(args))
    _emit(args, {"rows": [r.to_dict() for r in rows]}, format_table(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=12, help="coordinate radius B (default 12)")
    common.add_argument("--power-bound", type=int, default=6, help="exponent cap K (default 6)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = argparse.ArgumentParser(prog="subfact", description="Bounded factoriality checks for monomial subrings.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="evaluate catalog conditions on an instance")
    c.add_argument("--instance", required=True)
    c.add_argument("--condition", default="all", help="condition id, comma list, or 'all'")
    c.add_argument("--prime-p", type=int, default=2, help="p for the p-th power conditions")
    c.set_defaults(func=cmd_check)

    lt = sub.add_parser("lattice", parents=[common], help="element queries on an instance")
    lt.add_argument("--instance", required=True)
    lt.add_argument("--query", choices=LATTICE_QUERIES, required=True)
    lt.add_argument("--point")
    lt.add_argument("--grade-bound", type=int, default=24)
    lt.set_defaults(func=cmd_lattice)

    j = sub.add_parser("jacobian", parents=[common], help="Jacobian minor gcd / monomial bridge")
    j.add_argument("--vars")
    j.add_argument("--polys", help="polynomials separated by ',' (or ';')")
    j.add_argument("--input", help="JSON file with vars and polys")
    j.add_argument("--bridge", action="store_true")
    j.add_argument("--seed", type=int, default=0)
    j.set_defaults(func=cmd_jacobian)

    h = sub.add_parser("harness", parents=[common], help="random-instance suites")
    h.add_argument("--suite", choices=("lemmas", "implications", "equivalence", "all"), default="all")
    h.add_argument("--prop", default="all")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--count", type=int, default=100)
    h.set_defaults(func=cmd_harness)

    f = sub.add_parser("fixtures", parents=[common], help="run the pinned example table")
    f.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ml.LatticeError, ParseError, JacobianError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
