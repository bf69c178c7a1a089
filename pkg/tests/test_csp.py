from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from ramseyglue import csp, interval
from ramseyglue.clauses import ClauseSystem, brute_force_clauses
from ramseyglue.csp import FALSE, TRUE, UNKNOWN
from ramseyglue.glue import brute_force, enumerate_clauses
from ramseyglue.workloads import random_clause_system, random_gluing_problems


def test_init_without_singletons():
    cs = ClauseSystem.from_cells(4, clique=[[0, 1]], indep=[[2, 3]])
    st_ = csp.init(cs)
    assert st_.values == [UNKNOWN] * 4 and st_.stack == []


def test_init_singleton_independent_clause():
    cs = ClauseSystem.from_cells(4, indep=[[2], [0, 1]])
    st_ = csp.init(cs)
    assert st_.values == [UNKNOWN, UNKNOWN, TRUE, UNKNOWN]
    assert st_.stack == [2]


def test_init_contradiction():
    cs = ClauseSystem.from_cells(2, clique=[[1]], indep=[[1]])
    assert csp.init(cs) is None
    assert csp.fixpoint(cs) is None


def test_chain_propagation():
    # 0 off -> 1 on -> 2 off -> 3 on -> 4 off
    cs = ClauseSystem.from_cells(5, clique=[[0], [1, 2], [3, 4]], indep=[[0, 1], [2, 3]])
    st_ = csp.init(cs)
    assert st_.propagate()
    assert st_.values == [FALSE, TRUE, FALSE, TRUE, FALSE]
    assert st_.stack == []


def test_all_false_independent_clause_fails():
    cs = ClauseSystem.from_cells(2, clique=[[0], [1]], indep=[[0, 1]])
    assert csp.propagate(csp.init(cs)) is None


def test_no_clauses_dprime_two_has_sixteen_solutions():
    assert len(csp.solve_clauses(ClauseSystem(4))) == 16


def test_pick_branch_variable():
    cs = ClauseSystem.from_cells(4, clique=[[0, 1, 2]])
    st_ = csp.init(cs)
    assert st_.pick_branch_variable() == 0
    # 3 sits in two clauses each two UNKNOWNs from violation
    cs = ClauseSystem.from_cells(5, clique=[[0, 1, 3], [0, 2, 3]], indep=[[1, 3], [2, 3, 4]])
    st_ = csp.init(cs)
    st_.assign(0, TRUE)
    assert st_.propagate()
    assert st_.pick_branch_variable() == 3


def test_stack_holds_distinct_variables():
    rng = random.Random(5)
    for _ in range(200):
        cs = random_clause_system(rng)
        st_ = csp.init(cs)
        if st_ is None:
            continue
        assert len(set(st_.stack)) == len(st_.stack)
        assert all(st_.on_stack[v] for v in st_.stack)


def assert_unit_fixpoint(st_: csp.PropState) -> None:
    for k in range(len(st_.cq_cells)):
        unknown, sat = st_.clique_status(k)
        assert sat or unknown >= 2
    for k in range(len(st_.iq_cells)):
        unknown, sat = st_.indep_status(k)
        assert sat or unknown >= 2


@settings(max_examples=300)
@given(st.randoms(use_true_random=False))
def test_fixpoint_properties(rnd):
    cs = random_clause_system(rnd)
    st_ = csp.init(cs)
    if st_ is None or not st_.propagate():
        assert not brute_force_clauses(cs)
        return
    assert_unit_fixpoint(st_)
    assert st_.check_counters()
    # every decided value holds in all solutions
    t, f = st_.true_mask(), st_.false_mask()
    for m in brute_force_clauses(cs):
        assert m & t == t and m & f == 0


def test_fixpoint_can_miss_implied_literals():
    # every solution has cell 0 on, yet no clause is unit
    cs = ClauseSystem.from_cells(3, clique=[[1, 2]], indep=[[0, 1], [0, 2]])
    assert all(m & 1 for m in brute_force_clauses(cs))
    assert csp.fixpoint(cs) == (0, 0)


def test_counters_track_random_walks():
    rng = random.Random(8)
    for _ in range(150):
        cs = random_clause_system(rng)
        st_ = csp.init(cs)
        if st_ is None:
            continue
        for _ in range(5):
            mark = len(st_.trail)
            free = [v for v, x in enumerate(st_.values) if x == UNKNOWN]
            if not free:
                break
            st_.assign(rng.choice(free), rng.choice((FALSE, TRUE)))
            ok = st_.propagate()
            assert st_.check_counters()
            if not ok:
                st_.undo(mark)
                assert st_.check_counters()
                break


def test_counter_and_slow_modes_agree():
    rng = random.Random(3)
    for _ in range(300):
        cs = random_clause_system(rng)
        assert csp.fixpoint(cs, counters=True) == csp.fixpoint(cs, counters=False)
        fast = csp.solve_clauses(cs, counters=True)
        assert fast == csp.solve_clauses(cs, counters=False)
        assert fast == csp.solve_clauses(cs, heuristic=True) == brute_force_clauses(cs)


def test_fixpoint_confluent_and_equal_to_collapse():
    rng = random.Random(12)
    for _ in range(200):
        cs = random_clause_system(rng)
        ref = csp.fixpoint(cs)
        for seed in range(10):
            assert csp.fixpoint(cs, rng=random.Random(seed)) == ref
        iv = interval.collapse(interval.Interval(0, (1 << cs.nvars) - 1), cs)
        if ref is None:
            assert iv is None
        else:
            assert iv == interval.Interval(ref[0], ((1 << cs.nvars) - 1) & ~ref[1])


def test_solve_equals_oracles_on_gluing_problems():
    rng = random.Random(23)
    for p in random_gluing_problems(rng, 120):
        cs = enumerate_clauses(p)
        ref = brute_force(p)
        assert csp.solve(p, heuristic=False, cs=cs) == ref
        assert csp.solve(p, heuristic=True, cs=cs) == ref
        assert interval.search(p, cs=cs) == ref


def test_solve_stats():
    p = next(random_gluing_problems(random.Random(2), 1))
    stats: dict = {}
    csp.solve(p, stats=stats)
    assert stats["nodes"] >= 1
