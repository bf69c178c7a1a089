"""Regenerate the R(3,5) catalogue and print per-order counts and type statistics."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from ramseyglue import catalogue as cat


@dataclass
class Config:
    s: int = 3
    t: int = 5
    nmax: int = 14
    jobs: int = 1
    out: str | None = None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default) if default is not None else str, default=default)
    cfg = Config(**vars(ap.parse_args()))

    t0 = time.time()
    c = cat.generate(cfg.s, cfg.t, cfg.nmax, cfg.jobs)
    elapsed = time.time() - t0
    if cfg.out:
        cat.save(c, cfg.out)

    counts = c.counts()
    print(f"n\t|R({cfg.s},{cfg.t},n)|\tedges (min-max)")
    for n in range(1, cfg.nmax + 1):
        gs = c.levels.get(n, [])
        edges = [g.edge_count() for g in gs]
        span = f"{min(edges)}-{max(edges)}" if edges else "-"
        print(f"{n}\t{counts.get(n, 0)}\t{span}")
    print(f"orders 1..5\t{sum(counts.get(n, 0) for n in range(1, 6))}")
    print(f"all\t{sum(v for n, v in counts.items() if n >= 1)}")
    print(f"generation took {elapsed:.1f}s")


if __name__ == "__main__":
    main()
