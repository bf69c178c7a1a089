"""Compare search-tree sizes and timings of the engine variants on random gluing problems.

The branching heuristics are informational: every variant must return the
same solution set, only node counts and time differ.
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from ramseyglue import csp, interval
from ramseyglue.glue import enumerate_clauses
from ramseyglue.workloads import PoolSpec, random_gluing_problems


@dataclass
class Config:
    count: int = 200
    max_dprime: int = 4
    seed: int = 1


VARIANTS = {
    "interval plain": lambda cs, st: interval.search_clauses(cs, False, False, st),
    "interval probe+order": lambda cs, st: interval.search_clauses(cs, True, True, st),
    "csp first-unknown": lambda cs, st: csp.solve_clauses(cs, False, True, st),
    "csp heuristic": lambda cs, st: csp.solve_clauses(cs, True, True, st),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))

    rng = random.Random(cfg.seed)
    pools = (PoolSpec(3, 4, 8), PoolSpec(4, 4, 8))
    problems = [enumerate_clauses(p) for p in random_gluing_problems(rng, cfg.count, cfg.max_dprime, pools)]
    totals = {name: [0, 0.0, 0] for name in VARIANTS}
    for cs in problems:
        ref = None
        for name, fn in VARIANTS.items():
            stats: dict = {}
            t0 = time.perf_counter()
            sols = fn(cs, stats)
            totals[name][0] += stats.get("nodes", 0)
            totals[name][1] += time.perf_counter() - t0
            totals[name][2] += len(sols)
            if ref is None:
                ref = sols
            elif sols != ref:
                raise SystemExit(f"variant {name} disagrees")
    print(f"{len(problems)} problems, dprime <= {cfg.max_dprime}")
    print("variant\tnodes\tseconds\tsolutions")
    for name, (nodes, secs, sols) in totals.items():
        print(f"{name}\t{nodes}\t{secs:.2f}\t{sols}")


if __name__ == "__main__":
    main()
