import math

import pytest

from deds.domination import Instance, is_feasible, verify
from deds.errors import InputError, ResourceLimitError, WrongEngineError
from deds.graph import Tournament, greedy_dominating_set
from deds.oracle import exact_ds, exact_min_deds
from deds.tournament import (
    classify,
    ds_to_02,
    ds_to_p2_instance,
    eds22_construction,
    solve_t01,
    solve_t_pq3,
    solve_t_q2,
    solve_tournament,
)

from conftest import random_tournament


def transitive(n):
    return Tournament(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


CYCLE3 = Tournament(3, [(0, 1), (1, 2), (2, 0)])


def test_solve_t01_examples():
    assert solve_t01(Tournament(1, [])).size == 0
    assert solve_t01(CYCLE3).size == 2
    t4 = transitive(4)
    sol = solve_t01(t4)
    assert sol.size == 3
    assert sol.arcs == frozenset(t4.out_adj[0])  # the source out-star
    assert verify(Instance(t4, 0, 1), sol)


def test_solve_t_pq3_examples():
    sol = solve_t_pq3(CYCLE3, 3, 3)
    assert sol.size == 1
    t4 = transitive(4)
    assert solve_t_pq3(t4, 3, 3).size == 3
    assert solve_t_pq3(t4, 0, 3).size == 3  # source out-star
    with pytest.raises(WrongEngineError):
        solve_t_pq3(CYCLE3, 2, 3)
    with pytest.raises(WrongEngineError):
        solve_t_pq3(CYCLE3, 1, 1)


def test_solve_t_q2_examples():
    assert solve_t_q2(CYCLE3, 0, 2).size == 1
    t3 = transitive(3)
    assert solve_t_q2(t3, 0, 2).size == exact_min_deds(Instance(t3, 0, 2), 3).size
    with pytest.raises(WrongEngineError):
        solve_t_q2(CYCLE3, 0, 1)
    with pytest.raises(ResourceLimitError):
        solve_t_q2(random_tournament(13, 1), 0, 2)


def test_engines_match_oracle_over_seeds():
    for n in range(3, 8):
        for seed in range(12):
            t = random_tournament(n, 7_000 * n + seed)
            assert solve_t01(t).size == n - 1
            assert exact_min_deds(Instance(t, 0, 1), t.m).size == n - 1
            for (p, q) in [(0, 3), (3, 0), (1, 3), (3, 3), (4, 3)]:
                sol = solve_t_pq3(t, p, q)
                inst = Instance(t, p, q)
                assert verify(inst, sol)
                assert sol.size == exact_min_deds(inst, t.m).size
            for (p, q) in [(0, 2), (1, 2), (2, 2)]:
                sol = solve_t_q2(t, p, q)
                inst = Instance(t, p, q)
                assert verify(inst, sol)
                assert sol.size == exact_min_deds(inst, t.m).size


def test_ds_to_02():
    sol = ds_to_02(CYCLE3, {0, 1})
    assert sol.size == 2 and is_feasible(Instance(CYCLE3, 0, 2), sol.arcs)
    assert ds_to_02(CYCLE3, {0, 1, 2}).size == 3
    with pytest.raises(InputError):
        ds_to_02(transitive(3), {0})  # has a source
    with pytest.raises(InputError):
        ds_to_02(CYCLE3, {0})  # not dominating
    for seed in range(8):
        t = random_tournament(7, 9_000 + seed)
        if t.sources():
            continue
        d = set(greedy_dominating_set(t))
        sol = ds_to_02(t, d)
        assert is_feasible(Instance(t, 0, 2), sol.arcs)
        assert exact_min_deds(Instance(t, 0, 2), t.m).size <= len(d)


def test_ds_to_p2_instance():
    tp = ds_to_p2_instance(CYCLE3)
    assert tp.n == 4 and not tp.out_adj[3]
    for n in range(3, 7):
        for seed in range(6):
            t = random_tournament(n, 11_000 * n + seed)
            if t.sources():
                continue
            tp = ds_to_p2_instance(t)
            ds_size, _ = exact_ds(t)
            for p in (0, 1, 2):
                assert exact_min_deds(Instance(tp, p, 2), tp.m).size == ds_size


def test_classify():
    assert classify(CYCLE3, 0, 1) == "solve_t01"
    assert classify(CYCLE3, 1, 0) == "solve_t01"
    assert classify(CYCLE3, 1, 1) == "fpt11"
    assert classify(CYCLE3, 2, 5) == "solve_t_q2"
    assert classify(CYCLE3, 5, 2) == "solve_t_q2"
    assert classify(CYCLE3, 3, 4) == "solve_t_pq3"


def test_eds22_construction_bound():
    for n in (2, 3, 4, 8, 16, 64, 256):
        for t in (random_tournament(n, n), transitive(n)):
            sol = eds22_construction(t)
            assert is_feasible(Instance(t, 2, 2), sol.arcs)
            assert sol.size <= 2 * int(math.log2(n)) + 3


def test_driver_covers_all_routes():
    t = random_tournament(6, 123)
    for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 2), (3, 3)]:
        sol = solve_tournament(t, p, q)
        inst = Instance(t, p, q)
        assert verify(inst, sol)
        assert sol.size == exact_min_deds(inst, t.m).size
    assert solve_tournament(t, 0, 1, k=2) is None  # optimum is n-1=5
