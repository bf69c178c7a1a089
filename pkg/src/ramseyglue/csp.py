"""Three-valued unit propagation with a distinct-variable stack.

Variables are FALSE, TRUE or UNKNOWN.  Each clause keeps a count of its
UNKNOWN variables and of variables already on its satisfying side, so a
scan can classify a clause in constant time.  Assignments happen when a
variable is pushed, never when it is popped.
"""

from __future__ import annotations

import random
from typing import Iterator

from .clauses import ClauseSystem
from .graph import bits

FALSE, TRUE, UNKNOWN = 0, 1, -1


class PropState:
    def __init__(self, cs: ClauseSystem, counters: bool = True, rng: random.Random | None = None):
        self.cs = cs
        self.counters = counters
        self.rng = rng
        n = cs.nvars
        self.values = [UNKNOWN] * n
        self.stack: list[int] = []
        self.on_stack = [False] * n
        self.trail: list[int] = []
        self.cq_cells = [tuple(bits(c)) for c in cs.clique]
        self.iq_cells = [tuple(bits(c)) for c in cs.indep]
        self.C = cs.clique_occ
        self.I = cs.indep_occ
        # clique clause: UNKNOWN count and FALSE count (any FALSE satisfies it)
        self.cq_unknown = [len(c) for c in self.cq_cells]
        self.cq_sat = [0] * len(self.cq_cells)
        # independent clause: UNKNOWN count and TRUE count
        self.iq_unknown = [len(c) for c in self.iq_cells]
        self.iq_sat = [0] * len(self.iq_cells)
        self.unknown = n

    # assignment and undo ----------------------------------------------------

    def assign(self, v: int, val: int) -> None:
        self.values[v] = val
        self.trail.append(v)
        self.unknown -= 1
        self.stack.append(v)
        self.on_stack[v] = True
        if not self.counters:
            return
        for k in self.C[v]:
            self.cq_unknown[k] -= 1
            if val == FALSE:
                self.cq_sat[k] += 1
        for k in self.I[v]:
            self.iq_unknown[k] -= 1
            if val == TRUE:
                self.iq_sat[k] += 1

    def undo(self, mark: int) -> None:
        for v in self.stack:
            self.on_stack[v] = False
        self.stack.clear()
        while len(self.trail) > mark:
            v = self.trail.pop()
            val = self.values[v]
            self.values[v] = UNKNOWN
            self.unknown += 1
            if not self.counters:
                continue
            for k in self.C[v]:
                self.cq_unknown[k] += 1
                if val == FALSE:
                    self.cq_sat[k] -= 1
            for k in self.I[v]:
                self.iq_unknown[k] += 1
                if val == TRUE:
                    self.iq_sat[k] -= 1

    # clause status --------------------------------------------------------

    def _status(self, cells: tuple[int, ...], sat_value: int) -> tuple[int, int]:
        unknown = sat = 0
        vals = self.values
        for v in cells:
            x = vals[v]
            if x == UNKNOWN:
                unknown += 1
            elif x == sat_value:
                sat += 1
        return unknown, sat

    def clique_status(self, k: int) -> tuple[int, int]:
        if self.counters:
            return self.cq_unknown[k], self.cq_sat[k]
        return self._status(self.cq_cells[k], FALSE)

    def indep_status(self, k: int) -> tuple[int, int]:
        if self.counters:
            return self.iq_unknown[k], self.iq_sat[k]
        return self._status(self.iq_cells[k], TRUE)

    def _last_unknown(self, cells: tuple[int, ...]) -> int:
        vals = self.values
        for v in cells:
            if vals[v] == UNKNOWN:
                return v
        raise AssertionError("counter out of sync")

    # propagation ------------------------------------------------------------

    def propagate(self) -> bool:
        """Run the stack to exhaustion; False means FAIL."""
        stack = self.stack
        rng = self.rng
        while stack:
            if rng is None:
                alpha = stack.pop()
            else:
                alpha = stack.pop(rng.randrange(len(stack)))
            self.on_stack[alpha] = False
            if self.values[alpha] == FALSE:
                clauses = self.I[alpha]
                if rng is not None:
                    clauses = rng.sample(clauses, len(clauses))
                for k in clauses:
                    unknown, sat = self.indep_status(k)
                    if sat:
                        continue
                    if unknown == 0:
                        return False
                    if unknown == 1:
                        self.assign(self._last_unknown(self.iq_cells[k]), TRUE)
            else:
                clauses = self.C[alpha]
                if rng is not None:
                    clauses = rng.sample(clauses, len(clauses))
                for k in clauses:
                    unknown, sat = self.clique_status(k)
                    if sat:
                        continue
                    if unknown == 0:
                        return False
                    if unknown == 1:
                        self.assign(self._last_unknown(self.cq_cells[k]), FALSE)
        return True

    # queries ----------------------------------------------------------------

    def true_mask(self) -> int:
        return sum(1 << v for v, x in enumerate(self.values) if x == TRUE)

    def false_mask(self) -> int:
        return sum(1 << v for v, x in enumerate(self.values) if x == FALSE)

    def first_unknown(self) -> int:
        return self.values.index(UNKNOWN)

    def pick_branch_variable(self) -> int:
        """UNKNOWN variable in most clauses that are two UNKNOWNs away from violation."""
        score = [0] * self.cs.nvars
        vals = self.values
        for k, cells in enumerate(self.cq_cells):
            unknown, sat = self.clique_status(k)
            if unknown == 2 and not sat:
                for v in cells:
                    if vals[v] == UNKNOWN:
                        score[v] += 1
        for k, cells in enumerate(self.iq_cells):
            unknown, sat = self.indep_status(k)
            if unknown == 2 and not sat:
                for v in cells:
                    if vals[v] == UNKNOWN:
                        score[v] += 1
        best = -1
        for v, x in enumerate(vals):
            if x == UNKNOWN and (best < 0 or score[v] > score[best]):
                best = v
        if best < 0:
            raise ValueError("no UNKNOWN variable")
        return best

    def check_counters(self) -> bool:
        for k, cells in enumerate(self.cq_cells):
            if (self.cq_unknown[k], self.cq_sat[k]) != self._status(cells, FALSE):
                return False
        for k, cells in enumerate(self.iq_cells):
            if (self.iq_unknown[k], self.iq_sat[k]) != self._status(cells, TRUE):
                return False
        return True


def init(cs: ClauseSystem, counters: bool = True, rng: random.Random | None = None) -> PropState | None:
    """Force singleton clauses; None if two singletons contradict."""
    st = PropState(cs, counters, rng)
    forced: dict[int, int] = {}
    for c in cs.indep:
        if c & (c - 1) == 0:
            forced[c.bit_length() - 1] = TRUE
    for c in cs.clique:
        if c & (c - 1) == 0:
            v = c.bit_length() - 1
            if forced.get(v) == TRUE:
                return None
            forced[v] = FALSE
    order = sorted(forced)
    if rng is not None:
        rng.shuffle(order)
    for v in order:
        st.assign(v, forced[v])
    return st


def propagate(st: PropState) -> PropState | None:
    return st if st.propagate() else None


def _search(st: PropState, heuristic: bool, stats: dict) -> Iterator[int]:
    stats["nodes"] = stats.get("nodes", 0) + 1
    if st.unknown == 0:
        yield st.true_mask()
        return
    v = st.pick_branch_variable() if heuristic else st.first_unknown()
    for val in (FALSE, TRUE):
        mark = len(st.trail)
        st.assign(v, val)
        if st.propagate():
            yield from _search(st, heuristic, stats)
        st.undo(mark)


def iter_solutions(cs: ClauseSystem, heuristic: bool = False, counters: bool = True,
                   stats: dict | None = None) -> Iterator[int]:
    """Yield every satisfying assignment as a bitmask of TRUE cells."""
    stats = {} if stats is None else stats
    st = init(cs, counters)
    if st is None or not st.propagate():
        stats["nodes"] = stats.get("nodes", 0) + 1
        return
    yield from _search(st, heuristic, stats)


def solve_clauses(cs: ClauseSystem, heuristic: bool = False, counters: bool = True,
                  stats: dict | None = None) -> set[int]:
    return set(iter_solutions(cs, heuristic, counters, stats))


def fixpoint(cs: ClauseSystem, counters: bool = True,
             rng: random.Random | None = None) -> tuple[int, int] | None:
    """Initial propagation fixpoint as (TRUE cells, FALSE cells), or None on FAIL."""
    st = init(cs, counters, rng)
    if st is None or not st.propagate():
        return None
    return st.true_mask(), st.false_mask()


HEURISTIC_MAX_D = 7


def solve(p, heuristic: bool | None = None, cs: ClauseSystem | None = None,
          stats: dict | None = None) -> set[int]:
    """All cross matrices gluing problem ``p``; the branching heuristic
    defaults on for d <= 7."""
    from .glue import enumerate_clauses

    if heuristic is None:
        heuristic = p.d <= HEURISTIC_MAX_D
    if cs is None:
        cs = enumerate_clauses(p)
    return solve_clauses(cs, heuristic, True, stats)
