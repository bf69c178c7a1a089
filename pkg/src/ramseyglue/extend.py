"""One-point extension: every way to add a vertex while staying in R(s,t).

A neighbourhood N of the new vertex is valid iff N contains no
(s-1)-clique of the base and meets every independent (t-1)-set.  These are
exactly clique and independent-set clauses over membership variables, so
the search reuses the propagation engine from :mod:`ramseyglue.csp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .clauses import ClauseSystem
from .csp import iter_solutions
from .graph import Graph, clique_masks, complement_rows, popcount


@dataclass(frozen=True)
class ExtensionProblem:
    base: Graph
    s: int
    t: int
    forbidden: tuple[int, ...]  # (s-1)-cliques; N must not contain one
    required: tuple[int, ...]  # independent (t-1)-sets; N must meet each

    def clauses(self) -> ClauseSystem:
        return ClauseSystem(self.base.n, list(self.forbidden), list(self.required))


def extension_problem(base: Graph, s: int, t: int) -> ExtensionProblem:
    if s < 2 or t < 2:
        raise ValueError("s and t must be at least 2")
    full = base.vertex_mask
    forbidden = tuple(clique_masks(base.rows, s - 1, full))
    required = sorted(clique_masks(complement_rows(base), t - 1, full), key=popcount)
    return ExtensionProblem(base, s, t, forbidden, tuple(required))


def _with_vertex(base: Graph, nbrs: int) -> Graph:
    n = base.n
    rows = [r | (((nbrs >> v) & 1) << n) for v, r in enumerate(base.rows)]
    rows.append(nbrs)
    return Graph(n + 1, tuple(rows))


def iter_neighbourhoods(base: Graph, s: int, t: int) -> Iterator[int]:
    """Yield each valid neighbourhood of the new vertex as a bitmask."""
    yield from iter_solutions(extension_problem(base, s, t).clauses())


def one_point_extensions(base: Graph, s: int, t: int) -> list[Graph]:
    """All graphs base+v in R(s,t), new vertex last; no isomorph rejection."""
    return [_with_vertex(base, nb) for nb in sorted(iter_neighbourhoods(base, s, t))]


def extendable(base: Graph, s: int, t: int) -> bool:
    return next(iter_neighbourhoods(base, s, t), None) is not None

