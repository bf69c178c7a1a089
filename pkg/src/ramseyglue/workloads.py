"""Random workloads for differential testing and experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .catalogue import PointedGraph, extract_pointed, generate
from .clauses import ClauseSystem
from .glue import GluingProblem, build_problem
from .graph import Graph, automorphisms


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_permutation(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@lru_cache(maxsize=None)
def pointed_pool(s: int, t: int, nmax: int) -> dict[tuple[bytes, int], tuple[PointedGraph, ...]]:
    """Pointed graphs of R(s,t,n) for n <= nmax, grouped by (type, order)."""
    cat = generate(s, t, nmax)
    pool: dict[tuple[bytes, int], list[PointedGraph]] = {}
    for n in cat.orders():
        for idx, g in enumerate(cat.levels[n]):
            if n == 0:
                continue
            for pg in extract_pointed(g, idx):
                pool.setdefault((pg.type_key, n), []).append(pg)
    return {k: tuple(v) for k, v in sorted(pool.items())}


@dataclass(frozen=True)
class PoolSpec:
    s: int
    t: int
    nmax: int


DEFAULT_POOLS = (PoolSpec(3, 4, 8), PoolSpec(4, 4, 7))


def random_gluing_problems(rng: random.Random, count: int, max_dprime: int = 4,
                           pools=DEFAULT_POOLS) -> Iterator[GluingProblem]:
    """Gluing problems from pointed graphs of R(s,t); targets are (s+1, t)."""
    keyed = []
    for spec in pools:
        for key, pgs in pointed_pool(spec.s, spec.t, spec.nmax).items():
            if 1 <= pgs[0].dprime <= max_dprime:
                keyed.append((spec, key, pgs))
    autos: dict[bytes, list[tuple[int, ...]]] = {}
    for _ in range(count):
        spec, key, pgs = rng.choice(keyed)
        G, H = rng.choice(pgs), rng.choice(pgs)
        if key[0] not in autos:
            autos[key[0]] = automorphisms(G.type_graph())
        pi = rng.choice(autos[key[0]])
        label = f"R({spec.s},{spec.t}):{G.source}:{H.source}:{pi}"
        yield build_problem(G, H, pi, spec.s + 1, spec.t, label)


def random_clause_system(rng: random.Random, nvars: int | None = None) -> ClauseSystem:
    """Random clique/independent clauses, small enough for exhaustive checks."""
    if nvars is None:
        nvars = rng.randint(1, 16)
    density = rng.choice((0.5, 1.0, 2.0, 4.0))

    def clauses() -> list[list[int]]:
        out = []
        for _ in range(int(rng.random() * density * nvars) + rng.randint(0, 2)):
            size = min(nvars, rng.choice((1, 2, 2, 3, 3, 4, 5)))
            out.append(rng.sample(range(nvars), size))
        return out

    return ClauseSystem.from_cells(nvars, clauses(), clauses())
