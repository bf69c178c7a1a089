"""Isomorph-free catalogues of R(s,t,n) and pointed-graph extraction."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .extend import one_point_extensions
from .graph import (
    Graph,
    GraphStats,
    bits,
    canonical_form,
    count_sets,
    g6_decode,
    g6_encode,
    induced,
    is_good,
)

log = logging.getLogger(__name__)


@dataclass
class Catalogue:
    s: int
    t: int
    levels: dict[int, list[Graph]] = field(default_factory=dict)
    complete: bool = True

    def orders(self) -> list[int]:
        return sorted(self.levels)

    def counts(self) -> dict[int, int]:
        return {n: len(gs) for n, gs in sorted(self.levels.items())}

    def total(self) -> int:
        return sum(len(gs) for gs in self.levels.values())

    def graphs(self) -> Iterable[Graph]:
        for n in self.orders():
            yield from self.levels[n]


def _children(args: tuple[Graph, int, int]) -> list[tuple[bytes, Graph]]:
    g, s, t = args
    out = []
    for child in one_point_extensions(g, s, t):
        cf = canonical_form(child)
        out.append((cf.bytes, child))
    return out


def _dedup(items: Iterable[tuple[bytes, Graph]]) -> list[Graph]:
    seen: dict[bytes, Graph] = {}
    for key, _ in items:
        if key not in seen:
            seen[key] = g6_decode(key)
    return [seen[k] for k in sorted(seen)]


def extend_catalogue(parents: Sequence[Graph], s: int, t: int, jobs: int = 1) -> list[Graph]:
    """All graphs of the next order in R(s,t), canonically labelled and sorted.

    ``parents`` must be the complete level below, otherwise the result is
    only the set of one-vertex extensions of the given graphs.
    """
    work = [(g, s, t) for g in parents]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = ex.map(_children, work, chunksize=max(1, len(work) // (4 * jobs)))
            return _dedup(item for batch in results for item in batch)
    return _dedup(item for w in work for item in _children(w))


def generate(s: int, t: int, nmax: int, jobs: int = 1) -> Catalogue:
    cat = Catalogue(s, t, {0: [Graph.empty(0)]})
    for n in range(1, nmax + 1):
        cat.levels[n] = extend_catalogue(cat.levels[n - 1], s, t, jobs)
        log.info("R(%d,%d,%d): %d graphs", s, t, n, len(cat.levels[n]))
        if not cat.levels[n]:
            for m in range(n + 1, nmax + 1):
                cat.levels[m] = []
            break
    return cat


# persistence ---------------------------------------------------------------


def catalogue_path(directory: Path | str, s: int, t: int, n: int) -> Path:
    return Path(directory) / f"r{s}_{t}_{n}.g6"


def write_level(path: Path | str, graphs: Iterable[Graph]) -> None:
    lines = sorted(g6_encode(g) for g in graphs)
    with open(path, "wb") as fh:
        for line in lines:
            fh.write(line + b"\n")


def save(cat: Catalogue, directory: Path | str) -> list[Path]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for n, gs in sorted(cat.levels.items()):
        p = catalogue_path(directory, cat.s, cat.t, n)
        write_level(p, gs)
        paths.append(p)
    return paths


def read_graph6_file(path: Path | str) -> list[Graph]:
    out = []
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(g6_decode(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out


def load(directory: Path | str, s: int, t: int) -> Catalogue:
    cat = Catalogue(s, t)
    prefix = f"r{s}_{t}_"
    for p in sorted(Path(directory).glob(f"{prefix}*.g6")):
        n = int(p.stem[len(prefix):])
        cat.levels[n] = read_graph6_file(p)
    return cat


class ValidationError(ValueError):
    pass


def ingest(paths: Iterable[Path | str], s: int, t: int, dedup: bool = False) -> Catalogue:
    """Read arbitrary graph6 files and check every graph lies in R(s,t).

    The published catalogues are not re-canonicalised unless ``dedup`` is set;
    ingested catalogues are flagged incomplete.
    """
    cat = Catalogue(s, t, complete=False)
    for path in paths:
        with open(path, "rb") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if line.startswith(b">>graph6<<"):
                    line = line[10:]
                if not line:
                    continue
                try:
                    g = g6_decode(line)
                except ValueError as exc:
                    raise ValidationError(f"{path}:{lineno}: {exc}") from None
                if not is_good(g, s, t):
                    raise ValidationError(f"{path}:{lineno}: graph not in R({s},{t})")
                cat.levels.setdefault(g.n, []).append(g)
    if dedup:
        for n, gs in cat.levels.items():
            cat.levels[n] = _dedup((canonical_form(g).bytes, g) for g in gs)
    return cat


# statistics ----------------------------------------------------------------


@dataclass
class StatsRow:
    e: int | str
    i3: tuple[int, int]
    i4: tuple[int, int]
    c3: tuple[int, int]
    delta: tuple[int, int]
    Delta: tuple[int, int]
    count: int

    def merge(self, st: GraphStats) -> None:
        for name in ("i3", "i4", "c3", "delta", "Delta"):
            lo, hi = getattr(self, name)
            v = getattr(st, name)
            setattr(self, name, (min(lo, v), max(hi, v)))
        self.count += 1

    def format(self) -> str:
        r = lambda x: f"{x[0]}--{x[1]}"
        return f"{self.e}\t{r(self.i3)}\t{r(self.i4)}\t{r(self.c3)}\t{r(self.delta)}\t{r(self.Delta)}\t{self.count}"


def _row(e, st: GraphStats) -> StatsRow:
    p = lambda v: (v, v)
    return StatsRow(e, p(st.i3), p(st.i4), p(st.c3), p(st.delta), p(st.Delta), 1)


def stats_table(graphs: Iterable[Graph]) -> list[StatsRow]:
    """One row per edge count plus a final ``"all"`` row."""
    rows: dict[int, StatsRow] = {}
    total: StatsRow | None = None
    for g in graphs:
        st = count_sets(g)
        if st.e in rows:
            rows[st.e].merge(st)
        else:
            rows[st.e] = _row(st.e, st)
        if total is None:
            total = _row("all", st)
        else:
            total.merge(st)
    if total is None:
        raise ValueError("empty catalogue")
    return [rows[e] for e in sorted(rows)] + [total]


# pointed graphs -------------------------------------------------------------


@dataclass(frozen=True)
class PointedGraph:
    """A graph with distinguished vertex ``a = d`` whose neighbourhood is 0..d-1.

    The neighbourhood is labelled so that ``induced(g, range(d))`` is exactly
    the canonical representative of ``type_key``.  Vertices d+1.. are the
    private side.
    """

    g: Graph
    d: int
    type_key: bytes
    source: tuple[int, int] = (-1, -1)  # (catalogue index, original vertex)

    @property
    def a(self) -> int:
        return self.d

    @property
    def dprime(self) -> int:
        return self.g.n - self.d - 1

    def type_graph(self) -> Graph:
        return induced(self.g, range(self.d))


def pointed_relabelling(g: Graph, a: int) -> tuple[list[int], bytes]:
    """Relabelling taking ``(g, a)`` to pointed layout, and the type key."""
    nbrs = list(bits(g.rows[a]))
    d = len(nbrs)
    cf = canonical_form(induced(g, nbrs))
    perm = [0] * g.n
    for i, v in enumerate(nbrs):
        perm[v] = cf.perm[i]
    perm[a] = d
    nxt = d + 1
    nmask = g.rows[a]
    for v in range(g.n):
        if v != a and not (nmask >> v) & 1:
            perm[v] = nxt
            nxt += 1
    return perm, cf.bytes


def make_pointed(g: Graph, a: int, index: int = -1) -> PointedGraph:
    perm, key = pointed_relabelling(g, a)
    return PointedGraph(g.permute(perm), g.degree(a), key, (index, a))


def extract_pointed(g: Graph, index: int = -1) -> list[PointedGraph]:
    """One pointed graph per vertex; no dedup under automorphisms of ``g``."""
    return [make_pointed(g, a, index) for a in range(g.n)]


def group_by_type(pointed: Iterable[PointedGraph]) -> dict[bytes, list[PointedGraph]]:
    groups: dict[bytes, list[PointedGraph]] = {}
    for pg in pointed:
        groups.setdefault(pg.type_key, []).append(pg)
    return groups


@dataclass
class PointedSummary:
    d: int
    types: int
    count: int


def pointed_table(graphs: Sequence[Graph]) -> list[PointedSummary]:
    """Per-degree count of occurring types and pointed graphs."""
    types: dict[int, set[bytes]] = {}
    counts: dict[int, int] = {}
    for g in graphs:
        for a in range(g.n):
            key = canonical_form(induced(g, bits(g.rows[a]))).bytes
            d = g.degree(a)
            types.setdefault(d, set()).add(key)
            counts[d] = counts.get(d, 0) + 1
    return [PointedSummary(d, len(types[d]), counts[d]) for d in sorted(counts)]
