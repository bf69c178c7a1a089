from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramseyglue import catalogue as cat
from ramseyglue.clauses import ClauseSystem, brute_force_clauses
from ramseyglue.glue import (
    InvalidProblem,
    _subset_masks,
    assemble,
    brute_force,
    brute_force_direct,
    build_problem,
    enumerate_clauses,
    inverse,
    lemma_triples,
    matrix_from_rows,
    matrix_rows,
    packed,
    read_solutions,
    solution_record,
    swapped,
    transpose,
    unpacked,
    verify_solution,
)
from ramseyglue.graph import Graph, automorphisms, induced, is_good
from ramseyglue.workloads import pointed_pool, random_gluing_problems


@pytest.fixture(scope="module")
def problems():
    return list(random_gluing_problems(random.Random(7), 150, max_dprime=3))


def test_lemma_triples_for_5_5():
    cq, iq = lemma_triples(5, 5)
    assert cq == [(1, 2, 2), (0, 2, 3), (0, 3, 2)]
    assert iq == [(3, 1, 1), (2, 1, 2), (2, 2, 1), (1, 1, 3), (1, 2, 2), (1, 3, 1), (0, 2, 3), (0, 3, 2)]
    for r, p, q in cq:
        assert {p, q} <= {2, 3} and r + p + q == 5
    for r, p, q in iq:
        assert {p, q} <= {1, 2, 3} and r + p + q == 5


def test_matrix_helpers():
    m = matrix_from_rows(["10", "11"])
    assert matrix_rows(m, 2) == ["10", "11"]
    assert packed(m, 2) == "1011" and unpacked("1011") == m
    assert transpose(m, 2) == matrix_from_rows(["11", "01"])
    assert inverse((2, 0, 1)) == (1, 2, 0)


@given(st.integers(1, 6), st.data())
def test_transpose_involution(dp, data):
    m = data.draw(st.integers(0, (1 << dp * dp) - 1))
    assert transpose(transpose(m, dp), dp) == m


def test_problem_shape(problems):
    for p in problems[:30]:
        assert p.order == p.d + 2 + 2 * p.dprime
        g = assemble(p, 0)
        assert g.n == p.order
        d, dp = p.d, p.dprime
        assert induced(g, range(d + 1 + dp)) == p.G.g
        # H's vertex x sits at pi[x] on K, and shifted past A otherwise
        f = [p.pi[x] if x < d else x + dp + 1 for x in range(p.H.g.n)]
        for u in range(p.H.g.n):
            for v in range(p.H.g.n):
                assert p.H.g.has_edge(u, v) == g.has_edge(f[u], f[v])


def test_orders_for_full_scale_degrees():
    # 24-vertex pointed graphs of degree d assemble to 48 - d vertices
    for d in (10, 11):
        dp = 23 - d
        assert d + 2 + 2 * dp == 48 - d


def test_clauses_equal_subset_oracle(problems):
    for p in problems:
        cs = enumerate_clauses(p)
        cq, iq = _subset_masks(p)
        assert set(cs.clique) == set(cq)
        assert set(cs.indep) == set(iq)
        assert len(set(cs.clique)) == len(cs.clique)


def test_clause_types_are_lemma_triples(problems):
    for p in problems:
        cs = enumerate_clauses(p)
        cq, iq = lemma_triples(p.s, p.t)
        assert set(cs.clique_types) <= set(cq)
        assert set(cs.indep_types) <= set(iq)


def test_clause_semantics_exhaustive(problems):
    for p in problems:
        cs = enumerate_clauses(p)
        good = brute_force_direct(p)
        for m in range(1 << p.dprime ** 2):
            assert cs.satisfied_by(m) == (m in good)


def test_brute_force_agrees_with_direct(problems):
    for p in problems:
        assert brute_force(p) == brute_force_direct(p) == brute_force_clauses(enumerate_clauses(p))


def test_brute_force_guard(problems):
    with pytest.raises(ValueError):
        brute_force(problems[0], max_dprime=0)


def test_verify_solution_both_directions(problems):
    for p in problems[:40]:
        sols = brute_force(p)
        for m in range(1 << p.dprime ** 2):
            assert verify_solution(p, m) == (m in sols)


def test_transpose_symmetry():
    rng = random.Random(4)
    for p in random_gluing_problems(rng, 60, max_dprime=3):
        q = swapped(p)
        assert q.G is p.H and q.pi == inverse(p.pi)
        assert brute_force(q) == {transpose(m, p.dprime) for m in brute_force(p)}


def test_no_clauses_gives_every_matrix():
    # K is one vertex and each side one vertex: no 5-set can span a potential clause
    g = Graph.from_edges(3, [(0, 1)])
    pg = cat.make_pointed(g, 0)
    assert pg.d == 1 and pg.dprime == 1
    p = build_problem(pg, pg, None, 5, 5)
    cs = enumerate_clauses(p)
    assert not cs.clique and not cs.indep
    assert brute_force(p) == {0, 1}


def test_single_311_clause_forces_edge():
    cs = ClauseSystem.from_cells(1, indep=[[0]])
    assert brute_force_clauses(cs) == {1}


def test_validation_errors():
    pool = pointed_pool(4, 4, 7)
    (k1, n1), a = next((k, v) for k, v in pool.items()
                       if len(automorphisms(v[0].type_graph())) < math.factorial(v[0].d))
    other = next(v for k, v in pool.items() if k[0] != k1 and k[1] == n1)
    with pytest.raises(InvalidProblem, match="types"):
        build_problem(a[0], other[0], None, 5, 4)
    autos = set(automorphisms(a[0].type_graph()))
    bad_pi = next(p for p in itertools.permutations(range(a[0].d)) if p not in autos)
    with pytest.raises(InvalidProblem, match="automorphism"):
        build_problem(a[0], a[0], bad_pi, 5, 4)
    with pytest.raises(InvalidProblem, match="not in R"):
        build_problem(a[0], a[0], None, 4, 4)


def test_all_ones_breaks_clique_clause(problems):
    for p in problems:
        cs = enumerate_clauses(p)
        if cs.clique:
            assert not verify_solution(p, (1 << p.dprime ** 2) - 1)
            assert not is_good(assemble(p, (1 << p.dprime ** 2) - 1), p.s, p.t)
            return
    pytest.fail("no problem with a clique clause")


def test_solution_records_round_trip(problems):
    p = problems[0]
    lines = [solution_record(p, m) for m in sorted(brute_force(p))]
    back = read_solutions(lines + [""])
    assert [(x, dp) for x, dp, _ in back] == [(p.label, p.dprime)] * len(lines)
    assert [m for _, _, m in back] == sorted(brute_force(p))
