from deds.approx import approx_01, approx_11, partition_sources_sinks
from deds.domination import Instance, verify
from deds.graph import Digraph
from deds.oracle import exact_min_deds


def test_partition():
    g = Digraph(5, [(0, 1), (1, 2), (2, 1), (0, 3)])
    part = partition_sources_sinks(g)
    assert part.sources == {0, 4}  # isolated vertices count as sources
    assert part.sinks == {3}
    assert part.rest == {1, 2}


def test_approx_01_examples():
    star = Digraph(4, [(0, 1), (0, 2), (0, 3)])
    sol = approx_01(star)
    assert sol.arcs == frozenset({0, 1, 2})  # exactly the source out-star
    single = Digraph(2, [(0, 1)])
    assert approx_01(single).arcs == frozenset({0})


def test_approx_11_examples():
    single = Digraph(2, [(0, 1)])
    assert approx_11(single).arcs == frozenset({0})
    cyc = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    sol = approx_11(cyc)
    assert verify(Instance(cyc, 1, 1), sol)
    assert sol.size <= 8


def test_ratio_and_feasibility_on_corpus(small_corpus):
    for g in small_corpus:
        o01 = exact_min_deds(Instance(g, 0, 1), g.m).size
        o11 = exact_min_deds(Instance(g, 1, 1), g.m).size
        a01 = approx_01(g)
        a11 = approx_11(g)
        assert verify(Instance(g, 0, 1), a01)
        assert verify(Instance(g, 1, 1), a11)
        assert a01.size <= 3 * o01
        assert a11.size <= 8 * o11


def test_audit_counts_bound_solution_size(small_corpus):
    for g in small_corpus[:20]:
        audit = {}
        sol = approx_01(g, audit=audit)
        assert sol.size <= audit["K1"] + audit["K2"] + 2 * audit["M"] + audit["I_plus"]
