"""Clause systems over boolean cells.

A clause is a bitmask of cell indices.  Clique clauses must not be all 1;
independent-set clauses must not be all 0.  For gluing problems the cells
are the entries of the cross matrix, cell ``i * width + j`` being the pair
(a_i, b_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .graph import bits, popcount

Triple = tuple[int, int, int]


@dataclass
class ClauseSystem:
    nvars: int
    clique: list[int] = field(default_factory=list)
    indep: list[int] = field(default_factory=list)
    clique_types: list[Triple | None] = field(default_factory=list)
    indep_types: list[Triple | None] = field(default_factory=list)
    width: int = 0

    def __post_init__(self) -> None:
        full = (1 << self.nvars) - 1
        for c in self.clique + self.indep:
            if c == 0 or c & ~full:
                raise ValueError(f"clause {c:#x} empty or out of range for {self.nvars} cells")
        if not self.clique_types:
            self.clique_types = [None] * len(self.clique)
        if not self.indep_types:
            self.indep_types = [None] * len(self.indep)

    @classmethod
    def from_cells(cls, nvars: int, clique=(), indep=(), width: int = 0) -> ClauseSystem:
        """Build from iterables of cell-index collections, dropping duplicates."""
        cq = list(dict.fromkeys(sum(1 << v for v in set(c)) for c in clique))
        iq = list(dict.fromkeys(sum(1 << v for v in set(c)) for c in indep))
        return cls(nvars, cq, iq, width=width)

    @cached_property
    def clique_occ(self) -> list[list[int]]:
        occ: list[list[int]] = [[] for _ in range(self.nvars)]
        for k, c in enumerate(self.clique):
            for v in bits(c):
                occ[v].append(k)
        return occ

    @cached_property
    def indep_occ(self) -> list[list[int]]:
        occ: list[list[int]] = [[] for _ in range(self.nvars)]
        for k, c in enumerate(self.indep):
            for v in bits(c):
                occ[v].append(k)
        return occ

    def satisfied_by(self, m: int) -> bool:
        return all(m & c != c for c in self.clique) and all(m & c for c in self.indep)

    def type_counts(self) -> dict[str, dict[Triple, int]]:
        out: dict[str, dict[Triple, int]] = {"clique": {}, "indep": {}}
        for name, types in (("clique", self.clique_types), ("indep", self.indep_types)):
            for ty in types:
                if ty is not None:
                    out[name][ty] = out[name].get(ty, 0) + 1
        return out

    def max_clause_size(self) -> int:
        return max((popcount(c) for c in self.clique + self.indep), default=0)


def brute_force_clauses(cs: ClauseSystem) -> set[int]:
    """Every assignment satisfying ``cs``, by exhaustive enumeration."""
    if cs.nvars > 24:
        raise ValueError(f"{cs.nvars} cells is too many for exhaustive enumeration")
    clique, indep = cs.clique, cs.indep
    return {
        m
        for m in range(1 << cs.nvars)
        if all(m & c != c for c in clique) and all(m & c for c in indep)
    }
