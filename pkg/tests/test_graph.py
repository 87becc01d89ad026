import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deds.errors import InputError, NoEdgeCoverError
from deds.graph import (
    INF,
    Digraph,
    Tournament,
    UndirectedView,
    dist_from,
    greedy_dominating_set,
    hamiltonian_path,
    king,
    maximal_matching,
    min_edge_cover_bipartite,
    scc_partition,
)

from conftest import random_digraph, random_tournament


def digraphs(max_n=7):
    return st.integers(0, 10_000).map(lambda s: random_digraph(max_n, 14, s))


def tournaments(max_n=8):
    return st.tuples(st.integers(1, max_n), st.integers(0, 10_000)).map(
        lambda t: random_tournament(*t)
    )


# --- construction invariants


def test_digraph_rejects_self_loops_and_duplicates():
    with pytest.raises(InputError):
        Digraph(2, [(0, 0)])
    with pytest.raises(InputError):
        Digraph(2, [(0, 1), (0, 1)])
    with pytest.raises(InputError):
        Digraph(2, [(0, 2)])


def test_digon_allowed_and_collapsed_in_view():
    g = Digraph(2, [(0, 1), (1, 0)])
    view = UndirectedView(g)
    assert view.m == 1
    assert view.arcs_of_edge[0] == [0, 1]


def test_tournament_property_enforced():
    with pytest.raises(InputError):
        Tournament(3, [(0, 1), (1, 2)])
    t = Tournament(3, [(0, 1), (1, 2), (2, 0)])
    assert t.m == 3


# --- scc_partition


def test_scc_examples():
    assert scc_partition(Digraph(2, [(0, 1)])) == [[0], [1]]
    assert scc_partition(Digraph(3, [(0, 1), (1, 2), (2, 0)])) == [[0, 1, 2]]
    g = Digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    assert scc_partition(g) == [[0, 1, 2], [3]]


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_scc_partition_is_topological_partition(g):
    comps = scc_partition(g)
    flat = [v for c in comps for v in c]
    assert sorted(flat) == list(range(g.n))
    pos = {v: i for i, c in enumerate(comps) for v in c}
    for (u, v) in g.arcs:
        assert pos[u] <= pos[v]


# --- dist_from


def test_dist_examples():
    path = Digraph(3, [(0, 1), (1, 2)])
    assert dist_from(path, 0) == [0, 1, 2]
    assert dist_from(path, 2) == [INF, INF, 0]
    cyc = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert dist_from(cyc, 0) == [0, 1, 2]


def test_dist_truncation():
    path = Digraph(4, [(0, 1), (1, 2), (2, 3)])
    assert dist_from(path, 0, max_dist=1) == [0, 1, INF, INF]


# --- maximal matching


def test_matching_examples():
    assert maximal_matching(UndirectedView(Digraph(2, [(0, 1)]))) == [(0, 1)]
    assert maximal_matching(UndirectedView(Digraph(3, [(0, 1), (1, 2)]))) == [(0, 1)]
    assert maximal_matching(UndirectedView(Digraph(3, []))) == []


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_matching_is_maximal(g):
    view = UndirectedView(g)
    m = maximal_matching(view)
    touched = {v for e in m for v in e}
    assert len(touched) == 2 * len(m)
    for (u, v) in view.edges:
        assert u in touched or v in touched


# --- min edge cover


def test_edge_cover_examples():
    assert len(min_edge_cover_bipartite([0], [1], [(0, 1)])) == 1
    k22 = [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert len(min_edge_cover_bipartite([0, 1], [2, 3], k22)) == 2
    star = [(0, 1), (0, 2), (0, 3)]
    assert len(min_edge_cover_bipartite([0], [1, 2, 3], star)) == 3
    with pytest.raises(NoEdgeCoverError):
        min_edge_cover_bipartite([0, 1], [2], [(0, 2)])


def test_edge_cover_matches_gallai_bound():
    # exhaustive check on small bipartite graphs: cover size = n - max matching
    import itertools

    for bits in range(1, 512):
        edges = [
            (l, 3 + r)
            for i, (l, r) in enumerate(itertools.product(range(3), range(3)))
            if (bits >> i) & 1
        ]
        left = sorted({e[0] for e in edges})
        right = sorted({e[1] for e in edges})
        cover = min_edge_cover_bipartite(left, right, edges)
        best = None
        for size in range(1, len(edges) + 1):
            for combo in itertools.combinations(edges, size):
                touched = {v for e in combo for v in e}
                if all(v in touched for v in left + right):
                    best = size
                    break
            if best:
                break
        assert len(cover) == best


# --- hamiltonian path and king


@settings(max_examples=60, deadline=None)
@given(tournaments())
def test_hamiltonian_path_valid(t):
    order = hamiltonian_path(t)
    assert sorted(order) == list(range(t.n))
    for a, b in zip(order, order[1:]):
        assert t.has_arc(a, b)


def test_hamiltonian_path_examples():
    assert hamiltonian_path(Tournament(1, [])) == [0]
    assert hamiltonian_path(Tournament(2, [(1, 0)])) == [1, 0]
    order = hamiltonian_path(Tournament(3, [(0, 1), (1, 2), (2, 0)]))
    t = Tournament(3, [(0, 1), (1, 2), (2, 0)])
    assert all(t.has_arc(a, b) for a, b in zip(order, order[1:]))


def test_king_examples():
    assert king(Tournament(1, [])) == 0
    assert king(Tournament(3, [(0, 1), (0, 2), (1, 2)])) == 0
    assert king(Tournament(3, [(0, 1), (1, 2), (2, 0)])) == 0  # tie-break


@settings(max_examples=60, deadline=None)
@given(tournaments())
def test_king_reaches_all_within_two(t):
    k = king(t)
    d = dist_from(t, k)
    assert all(d[v] <= 2 for v in range(t.n))


# --- greedy dominating set


def test_greedy_ds_examples():
    assert greedy_dominating_set(Tournament(1, [])) == [0]
    assert len(greedy_dominating_set(Tournament(3, [(0, 1), (1, 2), (2, 0)]))) == 2


@settings(max_examples=60, deadline=None)
@given(tournaments())
def test_greedy_ds_dominates_and_halves(t):
    d = greedy_dominating_set(t)
    ds = set(d)
    for v in range(t.n):
        if v not in ds:
            assert any(u in ds for u in t.in_neighbors(v))
    assert len(d) <= math.floor(math.log2(t.n)) + 1


def test_greedy_ds_large_seeded():
    t = random_tournament(1024, 99)
    d = greedy_dominating_set(t)
    assert len(d) <= 11
