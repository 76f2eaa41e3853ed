"""Run every suite over a seeded batch of random subrings and dump JSON.

    python3 scripts/sweep.py --seed 0 --count 100 --out sweep.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from subfact import transports as tr
from subfact.harness import GenParams, instances, run_equivalence_suite, run_implication_suite, run_lemma_suite
from subfact.verdict import SearchBound


@dataclass(frozen=True)
class SweepConfig:
    seed: int = 0
    count: int = 100
    B: int = 12
    K: int = 6
    primes: tuple = (2, 3)


def sweep(cfg: SweepConfig) -> dict:
    bound = SearchBound(cfg.B, cfg.K)
    subs = instances(GenParams(seed=cfg.seed, instance_count=cfg.count))
    reports = [
        run_lemma_suite(subs, bound, seed=cfg.seed),
        run_implication_suite(tr.implication_dag(), subs, bound, seed=cfg.seed),
    ]
    for prop in sorted(tr.EQUIVALENCES):
        reports.append(run_equivalence_suite(prop, subs, bound, primes=cfg.primes, seed=cfg.seed))
    for r in reports:
        print(r.summary(), file=sys.stderr)
    return {"config": asdict(cfg), "reports": [r.to_dict() for r in reports]}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--bound", type=int, default=12)
    ap.add_argument("--power-bound", type=int, default=6)
    ap.add_argument("--out", default="-")
    a = ap.parse_args(argv)
    t0 = time.perf_counter()
    data = sweep(SweepConfig(a.seed, a.count, a.bound, a.power_bound))
    text = json.dumps(data, sort_keys=True, indent=1)
    if a.out == "-":
        print(text)
    else:
        with open(a.out, "w") as fh:
            fh.write(text)
    print(f"done in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    bad = sum(len(r["violations"]) for r in data["reports"])
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
