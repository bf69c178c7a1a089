from __future__ import annotations

import random

import pytest

from ramseyglue.catalogue import generate
from ramseyglue.extend import extendable, extension_problem, iter_neighbourhoods, one_point_extensions
from ramseyglue.graph import Graph, complement, induced, is_good
from ramseyglue.workloads import random_graph


def brute_neighbourhoods(base: Graph, s: int, t: int) -> list[int]:
    out = []
    n = base.n
    for nb in range(1 << n):
        rows = [r | ((nb >> v & 1) << n) for v, r in enumerate(base.rows)] + [nb]
        if is_good(Graph(n + 1, tuple(rows)), s, t):
            out.append(nb)
    return out


def good_base(rng: random.Random, n: int, s: int, t: int) -> Graph:
    """Random member of R(s,t) with at most n vertices (shrinks n after misses)."""
    while True:
        for _ in range(200):
            g = random_graph(rng, n, rng.choice((0.2, 0.35, 0.5, 0.65)))
            if is_good(g, s, t):
                return g
        n -= 1


def test_matches_brute_force_on_random_bases():
    rng = random.Random(31)
    for _ in range(60):
        s, t = rng.choice(((3, 4), (4, 4), (3, 5), (4, 5)))
        g = good_base(rng, rng.randint(0, 9), s, t)
        got = sorted(iter_neighbourhoods(g, s, t))
        assert got == brute_neighbourhoods(g, s, t)


def test_extensions_are_sound():
    rng = random.Random(32)
    for _ in range(30):
        g = good_base(rng, 8, 4, 4)
        for h in one_point_extensions(g, 4, 4):
            assert is_good(h, 4, 4)
            assert induced(h, range(g.n)) == g


def test_hit_set_duality():
    rng = random.Random(33)
    for _ in range(40):
        g = good_base(rng, rng.randint(1, 9), 3, 5)
        n = g.n
        full = (1 << n) - 1
        direct = set(iter_neighbourhoods(g, 3, 5))
        dual = {full ^ nb for nb in iter_neighbourhoods(complement(g), 5, 3)}
        assert direct == dual


def test_five_cycle_has_no_3_3_extension():
    assert one_point_extensions(Graph.cycle(5), 3, 3) == []
    assert not extendable(Graph.cycle(5), 3, 3)


def test_single_vertex_extends_both_ways():
    exts = one_point_extensions(Graph.empty(1), 3, 3)
    assert [h.edge_count() for h in exts] == [0, 1]


def test_empty_base():
    assert one_point_extensions(Graph.empty(0), 3, 3) == [Graph.empty(1)]
    assert extendable(Graph.empty(3), 3, 5)


def test_unique_3_5_13_graph_has_no_extension():
    cat = generate(3, 5, 13)
    (g,) = cat.levels[13]
    assert one_point_extensions(g, 3, 5) == []


def test_required_sets_sorted_by_size():
    prob = extension_problem(Graph.cycle(7), 3, 4)
    sizes = [bin(m).count("1") for m in prob.required]
    assert sizes == sorted(sizes)
    assert all(bin(m).count("1") == 2 for m in prob.forbidden)


def test_bad_parameters():
    with pytest.raises(ValueError):
        extension_problem(Graph.empty(2), 1, 3)


def test_extendable_agrees_with_extension_list():
    rng = random.Random(34)
    for _ in range(1000):
        s, t = rng.choice(((3, 3), (3, 4), (4, 4), (3, 5)))
        g = good_base(rng, rng.randint(0, 8), s, t)
        assert extendable(g, s, t) == bool(one_point_extensions(g, s, t))
