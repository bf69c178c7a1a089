"""Interval gluing engine.

An interval [lo, hi] is the family of cross matrices X with lo <= X <= hi
(cellwise).  Collapsing rules shrink it: a clique clause with every cell
but one in ``lo`` removes that cell from ``hi``; an independent-set clause
with every cell but one missing from ``hi`` adds that cell to ``lo``.  A
clause decided entirely the wrong way is FAIL, represented as ``None``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .clauses import ClauseSystem
from .glue import GluingProblem, enumerate_clauses
from .graph import bits

ENHANCE_MAX_D = 7


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def size_log2(self) -> int:
        return (self.hi & ~self.lo).bit_count()


def order_branch_cells(cs: ClauseSystem) -> list[int]:
    """Cells by descending membership in (2,2,1)/(2,1,2) independent clauses."""
    score = [0] * cs.nvars
    for c, ty in zip(cs.indep, cs.indep_types):
        if ty in ((2, 2, 1), (2, 1, 2)):
            for v in bits(c):
                score[v] += 1
    return sorted(range(cs.nvars), key=lambda v: (-score[v], v))


class IntervalEngine:
    def __init__(self, cs: ClauseSystem, probe: bool = False, ordered: bool = False):
        self.cs = cs
        self.probe = probe
        self.full = (1 << cs.nvars) - 1
        self.clauses: list[tuple[bool, int]] = [(True, c) for c in cs.clique] + [(False, c) for c in cs.indep]
        occ: list[list[int]] = [[] for _ in range(cs.nvars)]
        for k, (_, c) in enumerate(self.clauses):
            for v in bits(c):
                occ[v].append(k)
        self.occ = occ
        self.cell_order = order_branch_cells(cs) if ordered else list(range(cs.nvars))
        self.nodes = 0

    def collapse(self, lo: int, hi: int, seeds: Iterable[int] | None = None,
                 rng: random.Random | None = None) -> tuple[int, int] | None:
        """Apply the rules to a fixpoint; ``seeds`` limits the first pass to
        clauses touching those cells."""
        clauses, occ = self.clauses, self.occ
        if seeds is None:
            work = list(range(len(clauses)))
        else:
            work = list({k for v in seeds for k in occ[v]})
        pending = set(work)
        if rng is not None:
            rng.shuffle(work)
        while work:
            k = work.pop(rng.randrange(len(work))) if rng is not None else work.pop()
            pending.discard(k)
            is_clique, c = clauses[k]
            if is_clique:
                if hi & c != c:
                    continue  # some cell already excluded
                rest = c & ~lo
                if not rest:
                    return None
                if rest & (rest - 1):
                    continue
                hi &= ~rest
            else:
                if lo & c:
                    continue
                rest = c & hi
                if not rest:
                    return None
                if rest & (rest - 1):
                    continue
                lo |= rest
            for k2 in occ[rest.bit_length() - 1]:
                if k2 not in pending:
                    pending.add(k2)
                    work.append(k2)
        return lo, hi

    def probe_pairs(self, lo: int, hi: int) -> tuple[int, int] | None:
        """Try both values of every undecided cell; commit forced ones, to a fixpoint."""
        changed = True
        while changed:
            changed = False
            for v in self.cell_order:
                bit = 1 << v
                if lo & bit or not hi & bit:
                    continue
                out = self.collapse(lo, hi & ~bit, (v,))
                inn = self.collapse(lo | bit, hi, (v,))
                if out is None and inn is None:
                    return None
                if out is None:
                    lo, hi = inn
                    changed = True
                elif inn is None:
                    lo, hi = out
                    changed = True
        return lo, hi

    def _branch_cell(self, lo: int, hi: int) -> int:
        undecided = hi & ~lo
        for v in self.cell_order:
            if (undecided >> v) & 1:
                return v
        raise AssertionError("no undecided cell")

    def _search(self, lo: int, hi: int, out: set[int]) -> None:
        self.nodes += 1
        if self.probe and lo != hi:
            r = self.probe_pairs(lo, hi)
            if r is None:
                return
            lo, hi = r
        if lo == hi:
            out.add(lo)
            return
        v = self._branch_cell(lo, hi)
        bit = 1 << v
        r = self.collapse(lo, hi & ~bit, (v,))
        if r is not None:
            self._search(r[0], r[1], out)
        r = self.collapse(lo | bit, hi, (v,))
        if r is not None:
            self._search(r[0], r[1], out)

    def solutions(self) -> set[int]:
        out: set[int] = set()
        r = self.collapse(0, self.full)
        if r is None:
            self.nodes += 1
            return out
        self._search(r[0], r[1], out)
        return out


def collapse(iv: Interval, cs: ClauseSystem, rng: random.Random | None = None) -> Interval | None:
    r = IntervalEngine(cs).collapse(iv.lo, iv.hi, rng=rng)
    return None if r is None else Interval(*r)


def probe_pairs(iv: Interval, cs: ClauseSystem) -> Interval | None:
    eng = IntervalEngine(cs)
    r = eng.collapse(iv.lo, iv.hi)
    if r is None:
        return None
    r = eng.probe_pairs(*r)
    return None if r is None else Interval(*r)


def search_clauses(cs: ClauseSystem, probe: bool = False, ordered: bool = False,
                   stats: dict | None = None) -> set[int]:
    eng = IntervalEngine(cs, probe, ordered)
    out = eng.solutions()
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + eng.nodes
    return out


def search(p: GluingProblem, enhanced: bool | None = None, cs: ClauseSystem | None = None,
           stats: dict | None = None) -> set[int]:
    """All cross matrices gluing ``p``; enhancements default on for d <= 7."""
    if enhanced is None:
        enhanced = p.d <= ENHANCE_MAX_D
    if cs is None:
        cs = enumerate_clauses(p)
    return search_clauses(cs, enhanced, enhanced, stats)
