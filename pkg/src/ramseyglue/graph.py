"""Dense small-graph kernel.

Graphs are stored as one Python int per vertex (a bit-row); bit ``j`` of
``rows[i]`` is set iff ``i`` and ``j`` are adjacent.  Everything here is a
pure function of immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 64


def popcount(x: int) -> int:
    return x.bit_count()


def bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ORDER:
            raise ValueError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match order")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full or (r >> i) & 1:
                raise ValueError(f"bad row {i}")
            for j in bits(r):
                if not (self.rows[j] >> i) & 1:
                    raise ValueError(f"asymmetric at ({i}, {j})")

    # constructors -----------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int] | str]) -> Graph:
        """Build from a 0/1 adjacency matrix (rows may be strings like "0110")."""
        n = len(matrix)
        rows = []
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            rows.append(sum(1 << j for j, x in enumerate(row) if int(x)))
        return cls(n, tuple(rows))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def circulant(cls, n: int, jumps: Iterable[int]) -> Graph:
        js = {j % n for j in jumps} - {0}
        return cls.from_edges(n, ((i, (i + j) % n) for i in range(n) for j in js))

    # queries ----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.rows[i] >> (i + 1) << (i + 1))]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def permute(self, perm: Sequence[int]) -> Graph:
        """Relabel vertex ``v`` as ``perm[v]``."""
        new = [0] * self.n
        for v in range(self.n):
            r = 0
            for u in bits(self.rows[v]):
                r |= 1 << perm[u]
            new[perm[v]] = r
        return Graph(self.n, tuple(new))

    def to_matrix(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={g6_encode(self).decode()!r})"


def _unchecked(n: int, rows: Sequence[int]) -> Graph:
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "rows", tuple(rows))
    return g


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return _unchecked(g.n, [(full ^ r) & ~(1 << i) for i, r in enumerate(g.rows)])


def induced(g: Graph, w: Iterable[int]) -> Graph:
    """Subgraph induced by ``w``; vertices renumbered in ascending original order."""
    vs = sorted(set(w))
    if vs and (vs[0] < 0 or vs[-1] >= g.n):
        raise ValueError(f"vertex out of range for order {g.n}")
    index = {v: i for i, v in enumerate(vs)}
    rows = []
    wm = mask_of(vs)
    for v in vs:
        r = 0
        for u in bits(g.rows[v] & wm):
            r |= 1 << index[u]
        rows.append(r)
    return _unchecked(len(vs), rows)


# cliques --------------------------------------------------------------


def _clique_masks(rows: Sequence[int], k: int, cand: int, acc: int) -> Iterator[int]:
    if k == 0:
        yield acc
        return
    while cand:
        if popcount(cand) < k:
            return
        low = cand & -cand
        cand ^= low
        yield from _clique_masks(rows, k - 1, cand & rows[low.bit_length() - 1], acc | low)


def clique_masks(rows: Sequence[int], k: int, within: int) -> Iterator[int]:
    """All k-cliques inside vertex set ``within``, as bitmasks, in lexicographic order."""
    return _clique_masks(rows, k, within, 0)


def _has_clique(rows: Sequence[int], k: int, cand: int) -> bool:
    if k <= 0:
        return True
    if k == 1:
        return cand != 0
    while popcount(cand) >= k:
        low = cand & -cand
        cand ^= low
        if _has_clique(rows, k - 1, cand & rows[low.bit_length() - 1]):
            return True
    return False


def complement_rows(g: Graph) -> list[int]:
    full = g.vertex_mask
    return [(full ^ r) & ~(1 << i) for i, r in enumerate(g.rows)]


def cliques(g: Graph, k: int) -> list[int]:
    return list(clique_masks(g.rows, k, g.vertex_mask))


def independent_sets(g: Graph, k: int) -> list[int]:
    return list(clique_masks(complement_rows(g), k, g.vertex_mask))


def has_clique(g: Graph, k: int) -> bool:
    return _has_clique(g.rows, k, g.vertex_mask)


def has_independent(g: Graph, k: int) -> bool:
    return _has_clique(complement_rows(g), k, g.vertex_mask)


def is_good(g: Graph, s: int, t: int) -> bool:
    """True iff ``g`` has no s-clique and no independent t-set."""
    return not has_clique(g, s) and not has_independent(g, t)


@dataclass(frozen=True)
class GraphStats:
    e: int
    i3: int
    i4: int
    i5: int
    c3: int
    delta: int
    Delta: int


def _count_cliques(rows: Sequence[int], k: int, cand: int) -> int:
    if k == 1:
        return popcount(cand)
    total = 0
    while popcount(cand) >= k:
        low = cand & -cand
        cand ^= low
        total += _count_cliques(rows, k - 1, cand & rows[low.bit_length() - 1])
    return total


def count_sets(g: Graph) -> GraphStats:
    comp = complement_rows(g)
    full = g.vertex_mask
    degs = g.degrees() or [0]
    return GraphStats(
        e=g.edge_count(),
        i3=_count_cliques(comp, 3, full),
        i4=_count_cliques(comp, 4, full),
        i5=_count_cliques(comp, 5, full),
        c3=_count_cliques(g.rows, 3, full),
        delta=min(degs),
        Delta=max(degs),
    )


# canonical labelling ----------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    bytes: bytes
    perm: tuple[int, ...]  # perm[v] = canonical label of v

    def graph(self) -> Graph:
        return g6_decode(self.bytes)


def _refine(rows: Sequence[int], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    # Equitable refinement: split every cell by neighbour counts into every cell,
    # ordering the fragments by signature so the result is label-invariant.
    while True:
        masks = [mask_of(c) for c in cells]
        out: list[tuple[int, ...]] = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            buckets: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                r = rows[v]
                buckets.setdefault(tuple(popcount(r & m) for m in masks), []).append(v)
            if len(buckets) == 1:
                out.append(c)
                continue
            split = True
            out.extend(tuple(buckets[key]) for key in sorted(buckets))
        if not split:
            return out
        cells = out


def _target_cell(cells: list[tuple[int, ...]]) -> int:
    best = -1
    for i, c in enumerate(cells):
        if len(c) > 1 and (best < 0 or len(c) < len(cells[best])):
            best = i
    return best


def _leaf(rows: Sequence[int], cells: list[tuple[int, ...]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    order = [c[0] for c in cells]
    pos = [0] * len(order)
    for p, v in enumerate(order):
        pos[v] = p
    cert = []
    for v in order:
        r = 0
        for u in bits(rows[v]):
            r |= 1 << pos[u]
        cert.append(r)
    return tuple(cert), tuple(pos)


def _individualize(cells: list[tuple[int, ...]], i: int, v: int) -> list[tuple[int, ...]]:
    return cells[:i] + [(v,), tuple(u for u in cells[i] if u != v)] + cells[i + 1 :]


def _orbit_of(v: int, explored: list[int], gens: list[tuple[int, ...]]) -> bool:
    """True if ``v`` shares an orbit with an explored vertex under ``gens``."""
    if not gens or not explored:
        return False
    seen = {v}
    frontier = [v]
    targets = set(explored)
    while frontier:
        u = frontier.pop()
        if u in targets:
            return True
        for g in gens:
            w = g[u]
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return False


def canonical_form(g: Graph) -> CanonicalForm:
    rows = g.rows
    n = g.n
    if n == 0:
        return CanonicalForm(g6_encode(g), ())
    state: dict = {"first": None, "best": None}
    gens: list[tuple[int, ...]] = []

    def record_auto(pos_a: tuple[int, ...], pos_b: tuple[int, ...]) -> None:
        inv_b = [0] * n
        for v, p in enumerate(pos_b):
            inv_b[p] = v
        auto = tuple(inv_b[pos_a[v]] for v in range(n))
        if any(auto[v] != v for v in range(n)):
            gens.append(auto)

    def search(cells: list[tuple[int, ...]], prefix: tuple[int, ...]) -> None:
        cells = _refine(rows, cells)
        i = _target_cell(cells)
        if i < 0:
            cert, pos = _leaf(rows, cells)
            first = state["first"]
            if first is None:
                state["first"] = state["best"] = (cert, pos)
                return
            if cert == first[0]:
                record_auto(pos, first[1])
            best = state["best"]
            if cert == best[0]:
                if best is not first:
                    record_auto(pos, best[1])
            elif cert > best[0]:
                state["best"] = (cert, pos)
            return
        explored: list[int] = []
        for v in cells[i]:
            fixing = [a for a in gens if all(a[u] == u for u in prefix)]
            if _orbit_of(v, explored, fixing):
                continue
            explored.append(v)
            search(_individualize(cells, i, v), prefix + (v,))

    search([tuple(range(n))], ())
    cert, pos = state["best"]
    return CanonicalForm(g6_encode(_unchecked(n, cert)), pos)


def canonical_graph(g: Graph) -> Graph:
    return g.permute(canonical_form(g).perm)


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """The full automorphism group as a list of permutations (identity first)."""
    rows = g.rows
    n = g.n
    if n == 0:
        return [()]
    first: dict = {}
    shapes: list[tuple[int, ...]] = []
    found: list[tuple[int, ...]] = []

    def search(cells: list[tuple[int, ...]], depth: int) -> None:
        cells = _refine(rows, cells)
        shape = tuple(len(c) for c in cells)
        if len(shapes) > depth:
            if shapes[depth] != shape:
                return
        else:
            shapes.append(shape)
        i = _target_cell(cells)
        if i < 0:
            cert, pos = _leaf(rows, cells)
            if not first:
                first["cert"], first["inv"] = cert, sorted(range(n), key=pos.__getitem__)
                found.append(tuple(range(n)))
            elif cert == first["cert"]:
                inv = first["inv"]
                found.append(tuple(inv[pos[v]] for v in range(n)))
            return
        for v in cells[i]:
            search(_individualize(cells, i, v), depth + 1)

    search([tuple(range(n))], 0)
    return found


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    return len(perm) == g.n and sorted(perm) == list(range(g.n)) and g.permute(perm) == g


# graph6 -------------------------------------------------------------------


def _g6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    raise ValueError(f"order {n} too large for graph6")


def g6_encode(g: Graph) -> bytes:
    out = bytearray(_g6_size(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        rj = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | ((rj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def g6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise ValueError("empty graph6 string at position 0")
    for pos, c in enumerate(data):
        if not 63 <= c <= 126:
            raise ValueError(f"invalid graph6 byte {c!r} at position {pos}")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise ValueError("unsupported or truncated graph6 size field at position 1")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
        start = 4
    else:
        n = data[0] - 63
        body = data[1:]
        start = 1
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds {MAX_ORDER} at position 0")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"expected {need} data bytes for order {n}, got {len(body)} (position {start + min(len(body), need)})")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    total = need * 6
    for k2 in range(k, total):
        if ((body[k2 // 6] - 63) >> (5 - k2 % 6)) & 1:
            raise ValueError(f"nonzero padding bit at position {start + k2 // 6}")
    return _unchecked(n, rows)

