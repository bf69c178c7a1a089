from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramseyglue.graph import (
    Graph,
    automorphisms,
    canonical_form,
    canonical_graph,
    cliques,
    complement,
    count_sets,
    g6_decode,
    g6_encode,
    has_clique,
    has_independent,
    independent_sets,
    induced,
    is_automorphism,
    is_good,
)
from ramseyglue.workloads import random_graph, random_permutation


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def naive_sets(g: Graph, k: int, edge: bool) -> list[frozenset]:
    return [frozenset(c) for c in itertools.combinations(range(g.n), k)
            if all(g.has_edge(u, v) == edge for u, v in itertools.combinations(c, 2))]


# construction ---------------------------------------------------------------


def test_rejects_asymmetric_and_loops():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))


def test_from_matrix_round_trip():
    g = Graph.cycle(5)
    assert Graph.from_matrix(g.to_matrix()) == g
    assert g.edge_count() == 5 and g.degrees() == [2] * 5


@given(graphs())
def test_complement_involution(g):
    c = complement(g)
    assert complement(c) == g
    assert g.edge_count() + c.edge_count() == g.n * (g.n - 1) // 2
    assert all(not (g.has_edge(u, v) and c.has_edge(u, v)) for u in range(g.n) for v in range(g.n))


def test_induced_renumbers_ascending():
    g = Graph.from_edges(5, [(1, 3), (3, 4), (0, 2)])
    h = induced(g, [4, 1, 3])
    assert h == Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        induced(g, [5])


# cliques --------------------------------------------------------------------


@given(graphs(max_n=8), st.integers(1, 4))
def test_cliques_match_naive(g, k):
    got = {frozenset(i for i in range(g.n) if m >> i & 1) for m in cliques(g, k)}
    assert got == set(naive_sets(g, k, True))
    got = {frozenset(i for i in range(g.n) if m >> i & 1) for m in independent_sets(g, k)}
    assert got == set(naive_sets(g, k, False))
    assert has_clique(g, k) == bool(naive_sets(g, k, True))
    assert has_independent(g, k) == bool(naive_sets(g, k, False))


def test_five_cycle_is_3_3_good():
    c5 = Graph.cycle(5)
    assert is_good(c5, 3, 3)
    assert not is_good(Graph.cycle(6), 3, 3)


def test_circulant_13_is_3_5_good():
    g = Graph.circulant(13, [1, 5])
    assert is_good(g, 3, 5)
    assert len(automorphisms(g)) == 52


def test_trivial_clique_sizes():
    g = Graph.empty(3)
    assert has_clique(g, 0) and has_clique(g, 1) and not has_clique(g, 2)
    assert not has_clique(Graph.empty(0), 1)


@given(graphs(max_n=8))
def test_count_sets_matches_naive(g):
    stt = count_sets(g)
    assert stt.e == g.edge_count()
    assert stt.c3 == len(naive_sets(g, 3, True))
    assert (stt.i3, stt.i4, stt.i5) == tuple(len(naive_sets(g, k, False)) for k in (3, 4, 5))
    if g.n:
        assert (stt.delta, stt.Delta) == (min(g.degrees()), max(g.degrees()))


# canonical form ---------------------------------------------------------------


@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabelling(g, rnd):
    perm = random_permutation(rnd, g.n)
    cf, cf2 = canonical_form(g), canonical_form(g.permute(perm))
    assert cf.bytes == cf2.bytes
    assert g.permute(cf.perm) == cf.graph()


def test_canonical_form_separates_non_isomorphic():
    rng = random.Random(3)
    seen: dict[bytes, Graph] = {}
    for _ in range(400):
        g = random_graph(rng, 6, 0.5)
        key = canonical_form(g).bytes
        if key in seen:
            h = seen[key]
            assert any(g.permute(p) == h for p in itertools.permutations(range(6)))
        seen[key] = canonical_graph(g)
    # the 156 isomorphism classes of 6-vertex graphs are mostly reached
    assert len(seen) > 100


def test_canonical_form_on_regular_graphs():
    g = Graph.circulant(16, [1, 4])
    rng = random.Random(0)
    for _ in range(5):
        assert canonical_form(g.permute(random_permutation(rng, 16))).bytes == canonical_form(g).bytes


# automorphisms --------------------------------------------------------------------


def brute_automorphisms(g: Graph) -> set[tuple[int, ...]]:
    return {p for p in itertools.permutations(range(g.n)) if is_automorphism(g, p)}


@settings(max_examples=60)
@given(graphs(max_n=7))
def test_automorphisms_match_brute_force(g):
    autos = automorphisms(g)
    assert autos[0] == tuple(range(g.n))
    assert len(set(autos)) == len(autos)
    assert set(autos) == brute_automorphisms(g)


@pytest.mark.parametrize("g,size", [
    (Graph.cycle(5), 10),
    (Graph.empty(6), 720),
    (Graph.from_edges(8, [(u, v) for u in range(4) for v in range(4, 8)]), 1152),
    (Graph.complete(1), 1),
    (Graph.empty(0), 1),
])
def test_automorphism_group_orders(g, size):
    assert len(automorphisms(g)) == size


# graph6 -----------------------------------------------------------------------


def test_g6_known_strings():
    assert g6_encode(Graph.complete(3)) == b"Bw"
    assert g6_encode(Graph.empty(0)) == b"?"
    assert g6_decode("Bw") == Graph.complete(3)
    assert g6_decode(b"Dhc") == Graph.cycle(5)


def test_g6_round_trip_random():
    rng = random.Random(11)
    for _ in range(1000):
        g = random_graph(rng, rng.randint(0, 40), rng.random())
        assert g6_decode(g6_encode(g)) == g


def test_g6_length_and_large_order():
    assert len(g6_encode(Graph.empty(24))) == 1 + (24 * 23 // 2 + 5) // 6
    g = Graph.cycle(63)
    data = g6_encode(g)
    assert data[0] == 126
    assert g6_decode(data) == g


@pytest.mark.parametrize("bad", [b"", b"B", b"Bww", b"B\x20", b"Bx", b"~??"])
def test_g6_malformed(bad):
    with pytest.raises(ValueError):
        g6_decode(bad)


def test_g6_matches_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(12)
    for _ in range(200):
        n = rng.randint(60, 64) if rng.random() < 0.1 else rng.randint(1, 20)
        g = random_graph(rng, n, rng.random())
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        assert g6_encode(g) == nx.to_graph6_bytes(h, header=False).strip()


def test_canonical_form_agrees_with_networkx_isomorphism():
    nx = pytest.importorskip("networkx")
    rng = random.Random(14)

    def to_nx(g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        return h

    for _ in range(300):
        n = rng.randint(1, 9)
        g, h = random_graph(rng, n, 0.5), random_graph(rng, n, 0.5)
        same = canonical_form(g).bytes == canonical_form(h).bytes
        assert same == nx.is_isomorphic(to_nx(g), to_nx(h))
