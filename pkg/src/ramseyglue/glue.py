"""Gluing problems: overlap two pointed graphs on their common type K.

Layout of the assembled graph (``d = |K|``, ``dp = |A| = |B|``)::

    0 .. d-1          K
    d                 a   (distinguished vertex of G)
    d+1 .. d+dp       A   (private part of G)
    d+dp+1            b   (distinguished vertex of H)
    d+dp+2 .. d+2dp+1 B   (private part of H)

The unknown block is the A x B cross matrix, stored as an int with cell
``i * dp + j`` for the pair (a_i, b_j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .catalogue import PointedGraph
from .clauses import ClauseSystem, Triple
from .graph import Graph, _unchecked, bits, clique_masks, is_automorphism, is_good


class InvalidProblem(ValueError):
    pass


# cross matrices -----------------------------------------------------------


def matrix_from_rows(rows: Sequence[Sequence[int] | str]) -> int:
    dp = len(rows)
    m = 0
    for i, row in enumerate(rows):
        if len(row) != dp:
            raise ValueError("cross matrix must be square")
        for j, x in enumerate(row):
            if int(x):
                m |= 1 << (i * dp + j)
    return m


def matrix_rows(m: int, dp: int) -> list[str]:
    return ["".join("1" if (m >> (i * dp + j)) & 1 else "0" for j in range(dp)) for i in range(dp)]


def packed(m: int, dp: int) -> str:
    """Row-major bit string of the matrix."""
    return "".join(matrix_rows(m, dp))


def unpacked(s: str) -> int:
    return sum(1 << k for k, ch in enumerate(s) if ch == "1")


def transpose(m: int, dp: int) -> int:
    out = 0
    for k in bits(m):
        i, j = divmod(k, dp)
        out |= 1 << (j * dp + i)
    return out


def permute_matrix(m: int, dp: int, row_perm: Sequence[int], col_perm: Sequence[int]) -> int:
    """Move cell (i, j) to (row_perm[i], col_perm[j])."""
    out = 0
    for k in bits(m):
        i, j = divmod(k, dp)
        out |= 1 << (row_perm[i] * dp + col_perm[j])
    return out


# problems -------------------------------------------------------------------


def inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True)
class GluingProblem:
    G: PointedGraph
    H: PointedGraph
    pi: tuple[int, ...]  # H's K-vertex u sits at combined K-vertex pi[u]
    s: int = 5
    t: int = 5
    label: str = ""

    @property
    def d(self) -> int:
        return self.G.d

    @property
    def dprime(self) -> int:
        return self.G.dprime

    @property
    def order(self) -> int:
        return self.d + 2 + 2 * self.dprime

    @cached_property
    def context(self) -> _Context:
        return _Context.build(self)


@dataclass
class _Context:
    k_rows: list[int]  # K adjacency (from G)
    a_k: list[int]  # K-neighbours of a_i
    b_k: list[int]  # K-neighbours of b_j, through pi
    a_rows: list[int]  # adjacency inside A, indices 0..dp-1
    b_rows: list[int]
    base_rows: list[int] = field(default_factory=list)  # assembled graph with M = 0

    @classmethod
    def build(cls, p: GluingProblem) -> _Context:
        d, dp = p.d, p.dprime
        G, H = p.G.g, p.H.g
        kmask = (1 << d) - 1
        k_rows = [G.rows[v] & kmask for v in range(d)]
        a_k = [G.rows[d + 1 + i] & kmask for i in range(dp)]
        a_rows = [G.rows[d + 1 + i] >> (d + 1) for i in range(dp)]
        b_k = []
        for j in range(dp):
            r = 0
            for u in bits(H.rows[d + 1 + j] & kmask):
                r |= 1 << p.pi[u]
            b_k.append(r)
        b_rows = [H.rows[d + 1 + j] >> (d + 1) for j in range(dp)]

        n = p.order
        a, b = d, d + dp + 1
        a0, b0 = d + 1, d + dp + 2
        rows = [0] * n
        amask = ((1 << dp) - 1) << a0
        bmask = ((1 << dp) - 1) << b0
        for v in range(d):
            rows[v] = k_rows[v] | (1 << a) | (1 << b)
        rows[a] = kmask | (1 << b) | bmask
        rows[b] = kmask | (1 << a) | amask
        for i in range(dp):
            rows[a0 + i] = a_k[i] | (a_rows[i] << a0) | (1 << b)
            for v in bits(a_k[i]):
                rows[v] |= 1 << (a0 + i)
        for j in range(dp):
            rows[b0 + j] = b_k[j] | (b_rows[j] << b0) | (1 << a)
            for v in bits(b_k[j]):
                rows[v] |= 1 << (b0 + j)
        return cls(k_rows, a_k, b_k, a_rows, b_rows, rows)


def build_problem(G: PointedGraph, H: PointedGraph, pi: Sequence[int] | None = None,
                  s: int = 5, t: int = 5, label: str = "", check: bool = True) -> GluingProblem:
    """Overlap ``G`` and ``H`` on K, identifying H's K-vertex u with pi[u].

    With ``check`` the inputs are validated: same type, equal orders, ``pi``
    an automorphism of K, and both graphs in R(s-1, t) (which guarantees a
    and b lie in no forbidden set of the assembled graph).
    """
    d = G.d
    pi = tuple(range(d)) if pi is None else tuple(pi)
    if G.type_key != H.type_key or G.d != H.d:
        raise InvalidProblem("pointed graphs have different types")
    if G.g.n != H.g.n:
        raise InvalidProblem("pointed graphs have different orders")
    if check:
        K = G.type_graph()
        if K != H.type_graph():
            raise InvalidProblem("type representatives differ")
        if not is_automorphism(K, pi):
            raise InvalidProblem(f"pi={pi} is not an automorphism of K")
        for name, pg in (("G", G), ("H", H)):
            if pg.g.rows[d] != (1 << d) - 1:
                raise InvalidProblem(f"{name}: neighbourhood of the distinguished vertex is not 0..d-1")
            if not is_good(pg.g, s - 1, t):
                raise InvalidProblem(f"{name} is not in R({s - 1},{t})")
    return GluingProblem(G, H, pi, s, t, label)


def swapped(p: GluingProblem) -> GluingProblem:
    """The same gluing with the roles of G and H exchanged."""
    return build_problem(p.H, p.G, inverse(p.pi), p.s, p.t, check=False)


def assemble_rows(p: GluingProblem, m: int) -> list[int]:
    ctx = p.context
    dp = p.dprime
    rows = list(ctx.base_rows)
    a0, b0 = p.d + 1, p.d + dp + 2
    for k in bits(m):
        i, j = divmod(k, dp)
        rows[a0 + i] |= 1 << (b0 + j)
        rows[b0 + j] |= 1 << (a0 + i)
    return rows


def assemble(p: GluingProblem, m: int) -> Graph:
    return Graph(p.order, tuple(assemble_rows(p, m)))


def verify_solution(p: GluingProblem, m: int) -> bool:
    return is_good(assemble(p, m), p.s, p.t)


# clauses ----------------------------------------------------------------------


def lemma_triples(s: int, t: int) -> tuple[list[Triple], list[Triple]]:
    """Feasible (r, p, q) shapes of potential cliques and independent sets.

    Bounds: G, H in R(s-1, t); K plus a is a clique of G (so r <= s-3);
    a is independent from A (so r = 0 forces p <= t-2), and symmetrically for b.
    """
    cq = [
        (r, p, s - r - p)
        for r in range(s - 2, -1, -1)
        for p in range(1, s - r)
        if s - r - p >= 1 and r <= s - 3 and r + p <= s - 2 and r + (s - r - p) <= s - 2
    ]
    iq = []
    for r in range(t - 2, -1, -1):
        for p in range(1, t - r):
            q = t - r - p
            lim = t - 1 if r else t - 2
            if q >= 1 and r + p <= lim and r + q <= lim:
                iq.append((r, p, q))
    return cq, iq


def _product(pm: int, qm: int, dp: int) -> int:
    c = 0
    for i in bits(pm):
        c |= qm << (i * dp)
    return c


def _potential(k_rows, a_k, b_k, a_rows, b_rows, size: int, d: int, dp: int,
               out: dict[int, Triple]) -> None:
    kfull = (1 << d) - 1
    afull = (1 << dp) - 1
    for r in range(0, size - 1):
        for qk in clique_masks(k_rows, r, kfull):
            amask = 0
            for i in range(dp):
                if a_k[i] & qk == qk:
                    amask |= 1 << i
            if not amask:
                continue
            bmask = 0
            for j in range(dp):
                if b_k[j] & qk == qk:
                    bmask |= 1 << j
            if not bmask:
                continue
            for p in range(1, size - r):
                q = size - r - p
                pcl = list(clique_masks(a_rows, p, amask & afull))
                if not pcl:
                    continue
                qcl = list(clique_masks(b_rows, q, bmask))
                for pm in pcl:
                    for qm in qcl:
                        out.setdefault(_product(pm, qm, dp), (r, p, q))


def enumerate_clauses(p: GluingProblem) -> ClauseSystem:
    ctx = p.context
    d, dp = p.d, p.dprime
    cq: dict[int, Triple] = {}
    _potential(ctx.k_rows, ctx.a_k, ctx.b_k, ctx.a_rows, ctx.b_rows, p.s, d, dp, cq)

    kfull, afull = (1 << d) - 1, (1 << dp) - 1
    ck = [(kfull ^ r) & ~(1 << v) for v, r in enumerate(ctx.k_rows)]
    ca_k = [kfull ^ x for x in ctx.a_k]
    cb_k = [kfull ^ x for x in ctx.b_k]
    ca = [(afull ^ r) & ~(1 << i) for i, r in enumerate(ctx.a_rows)]
    cb = [(afull ^ r) & ~(1 << j) for j, r in enumerate(ctx.b_rows)]
    iq: dict[int, Triple] = {}
    _potential(ck, ca_k, cb_k, ca, cb, p.t, d, dp, iq)
    return ClauseSystem(dp * dp, list(cq), list(iq), list(cq.values()), list(iq.values()), width=dp)


# brute force -------------------------------------------------------------------


def _subset_masks(p: GluingProblem) -> tuple[list[int], list[int]]:
    """Cross-cell masks of every s-set that is a clique for some matrix, and
    every t-set that is independent for some matrix."""
    dp = p.dprime
    n = p.order
    a0, b0 = p.d + 1, p.d + dp + 2
    full = (1 << n) - 1
    none_rows = p.context.base_rows
    all_rows = assemble_rows(p, (1 << (dp * dp)) - 1)
    comp_rows = [(full ^ r) & ~(1 << v) for v, r in enumerate(none_rows)]
    amask = ((1 << dp) - 1) << a0
    bmask = ((1 << dp) - 1) << b0

    def cells(w: int) -> int:
        c = 0
        for i in bits((w & amask) >> a0):
            c |= ((w & bmask) >> b0) << (i * dp)
        return c

    cq = {cells(w) for w in clique_masks(all_rows, p.s, full)}
    iq = {cells(w) for w in clique_masks(comp_rows, p.t, full)}
    return sorted(cq), sorted(iq)


def brute_force(p: GluingProblem, max_dprime: int = 5) -> set[int]:
    """All cross matrices whose assembled graph is (s,t)-good.

    Every s-subset (t-subset) of the assembled graph that can become a
    clique (independent set) is checked against all 2^(dp^2) matrices at
    once.
    """
    dp = p.dprime
    if dp > max_dprime:
        raise ValueError(f"dprime={dp} exceeds brute-force guard {max_dprime}")
    cq, iq = _subset_masks(p)
    if 0 in cq or 0 in iq:
        return set()
    ms = np.arange(1 << (dp * dp), dtype=np.int64)
    ok = np.ones(ms.shape, dtype=bool)
    for c in cq:
        ok &= (ms & c) != c
    for c in iq:
        ok &= (ms & c) != 0
    return set(np.flatnonzero(ok).tolist())


def brute_force_direct(p: GluingProblem, max_dprime: int = 3) -> set[int]:
    """Reference oracle: assemble each matrix and test goodness."""
    dp = p.dprime
    if dp > max_dprime:
        raise ValueError(f"dprime={dp} exceeds brute-force guard {max_dprime}")
    n = p.order
    return {m for m in range(1 << (dp * dp)) if is_good(_unchecked(n, assemble_rows(p, m)), p.s, p.t)}


# solution records ----------------------------------------------------------------


def solution_record(p: GluingProblem, m: int) -> str:
    return json.dumps({"problem": p.label, "dprime": p.dprime, "m": packed(m, p.dprime)}, sort_keys=True)


def read_solutions(lines: Iterable[str]) -> list[tuple[str, int, int]]:
    out = []
    for line in lines:
        line = line.strip()
        if line:
            rec = json.loads(line)
            out.append((rec["problem"], rec["dprime"], unpacked(rec["m"])))
    return out

