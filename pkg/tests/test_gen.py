import pytest

from deds.domination import Instance, is_feasible
from deds.errors import InputError
from deds.gen import (
    McInstance,
    aim_to_tournament,
    certify_planted_solution,
    clique_arcs,
    gen_digraph,
    gen_tournament,
    is_to_aim,
    mcc_to_optional,
    optional_to_full,
    sample_bias,
    vertex_disjoint_paths,
)
from deds.graph import Digraph, UndirectedGraph
from deds.oracle import exact_aim, exact_min_deds, exact_min_deds_branching


def test_gen_tournament():
    assert gen_tournament(1, 0).m == 0
    a, b = gen_tournament(40, 5), gen_tournament(40, 5)
    assert a.arcs == b.arcs
    assert gen_tournament(40, 6).arcs != a.arcs
    with pytest.raises(InputError):
        gen_tournament(0, 1)


def test_gen_tournament_outdegree_concentration():
    # max out-degree of seeded 1000-vertex tournaments stays near n/2
    import math

    n = 1000
    for seed in range(5):
        t = gen_tournament(n, seed)
        max_out = max(t.out_degree(v) for v in range(n))
        assert n / 2 < max_out < n / 2 + 8 * math.sqrt(n * math.log2(n))


def test_gen_digraph():
    assert gen_digraph(3, 0.0, 1).m == 0
    assert gen_digraph(3, 1.0, 1).m == 6
    assert gen_digraph(6, 0.4, 9).arcs == gen_digraph(6, 0.4, 9).arcs


def mcc_counts(mc: McInstance):
    """Closed-form vertex/arc counts for the optional construction."""
    k, n = mc.k, mc.class_size
    vertices = k * n + k * 5 * n
    arcs = k * n + k * (5 * n + 1)
    for i in range(k):
        for j in range(i + 1, k):
            for a in range(n):
                for b in range(n):
                    if mc.graph.has_edge(mc.classes[i][a], mc.classes[j][b]):
                        continue
                    vertices += 2
                    arcs += 1
                    if a > 0:
                        vertices += a + 2 * n - 1
                        arcs += a + 2 * n
                    if b > 0:
                        vertices += b + 2 * n - 1
                        arcs += b + 2 * n
                    back_a = 3 * n - a + 1 if a > 0 else 2 * n + 1
                    back_b = 3 * n - b + 1 if b > 0 else 2 * n + 1
                    vertices += back_a - 1 + back_b - 1
                    arcs += back_a + back_b
    return vertices, arcs


def test_mcc_to_optional_shapes():
    mc = McInstance(
        UndirectedGraph(4, [(0, 2), (0, 3), (1, 2), (1, 3)]), [[0, 1], [2, 3]]
    )
    out = mcc_to_optional(mc)
    assert out.instance.p == out.instance.q == 6
    assert out.threshold == 2
    v, a = mcc_counts(mc)
    assert (out.instance.g.n, out.instance.g.m) == (v, a)
    assert len(out.instance.optional_mask) == 0  # no gadgets, no optional arcs
    mc_no = McInstance(UndirectedGraph(4, []), [[0, 1], [2, 3]])
    out_no = mcc_to_optional(mc_no)
    v, a = mcc_counts(mc_no)
    assert (out_no.instance.g.n, out_no.instance.g.m) == (v, a)


def test_mcc_rejects_bad_input():
    with pytest.raises(InputError):
        McInstance(UndirectedGraph(4, [(0, 1)]), [[0, 1], [2, 3]])  # class not independent
    mc_odd = McInstance(UndirectedGraph(2, []), [[0], [1]])
    with pytest.raises(InputError):
        mcc_to_optional(mc_odd)  # class size must be even


def test_mcc_yes_no_equivalence_small():
    mc_yes = McInstance(
        UndirectedGraph(4, [(0, 2), (0, 3), (1, 3)]), [[0, 1], [2, 3]]
    )
    out = mcc_to_optional(mc_yes)
    sol = exact_min_deds(out.instance, out.threshold)
    assert sol is not None and sol.size == 2
    assert is_feasible(out.instance, clique_arcs(out, {0: 0, 1: 1}))
    mc_no = McInstance(UndirectedGraph(4, []), [[0, 1], [2, 3]])
    out_no = mcc_to_optional(mc_no)
    assert exact_min_deds_branching(out_no.instance, out_no.threshold) is None


def test_optional_to_full_shapes_and_validation():
    mc = McInstance(UndirectedGraph(4, [(0, 2), (0, 3), (1, 3)]), [[0, 1], [2, 3]])
    out = mcc_to_optional(mc)
    cover = set(out.lineage["cover_set"])
    full = optional_to_full(out, cover)
    n3 = 3 * mc.class_size
    assert full.threshold == out.threshold + 1
    assert not full.instance.optional_mask
    # each guard path of 3n arcs into u1 adds 3n new vertices (fresh source
    # plus internals); each cover path has both endpoints already present
    extra_v = 2 + (out.threshold + 2) * n3 + len(cover) * 2 * (n3 - 2)
    extra_a = 1 + (out.threshold + 2) * n3 + len(cover) * 2 * (n3 - 1)
    assert full.instance.g.n == out.instance.g.n + extra_v
    assert full.instance.g.m == out.instance.g.m + extra_a
    with pytest.raises(InputError):
        optional_to_full(out, set())  # optional arcs not covered


def test_is_to_aim_examples():
    k4 = UndirectedGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    g, target = is_to_aim(k4, 1)
    assert g.n == 26 and target == 17
    k2 = UndirectedGraph(2, [(0, 1)])
    g2, t2 = is_to_aim(k2, 1)
    assert g2.n == 7 and t2 == 5
    assert exact_aim(g2)[0] >= t2
    empty = UndirectedGraph(3, [])
    g3, t3 = is_to_aim(empty, 0)
    assert exact_aim(g3)[0] == 6 and t3 == 3
    with pytest.raises(InputError):
        is_to_aim(UndirectedGraph(5, [(0, 1), (0, 2), (0, 3), (0, 4)]), 1)


def test_is_to_aim_iff_on_k4():
    k4 = UndirectedGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    g1, t1 = is_to_aim(k4, 1)
    size, _ = exact_aim(g1, limit=26)
    assert size >= t1  # K4 has an independent set of size 1
    g2, t2 = is_to_aim(k4, 2)
    assert size < t2  # but none of size 2


def test_aim_to_tournament_shapes():
    g = UndirectedGraph(4, [(0, 2), (1, 3)])
    out = aim_to_tournament(g, [0, 1], L=4, seed=0)
    assert out.instance.g.n == 12
    assert out.threshold == 12 - 2 + 1
    again = aim_to_tournament(g, [0, 1], L=4, seed=0)
    assert out.instance.g.arcs == again.instance.g.arcs
    # A->B arcs follow edges exactly
    t = out.instance.g
    assert t.has_arc(0, 2 + 0) and t.has_arc(1, 2 + 1)
    assert t.has_arc(2 + 1, 0) and t.has_arc(2 + 0, 1)  # non-edges point back
    with pytest.raises(InputError):
        aim_to_tournament(g, [0, 1], L=3, seed=0)
    with pytest.raises(InputError):
        aim_to_tournament(UndirectedGraph(4, [(0, 1)]), [0, 1], L=2, seed=0)


def test_vertex_disjoint_paths():
    g = Digraph(5, [(0, 2), (2, 1), (0, 3), (3, 1)])
    paths = vertex_disjoint_paths(g, [0], [1], set())
    assert paths and len(paths) == 1
    g2 = Digraph(6, [(0, 2), (2, 4), (1, 3), (3, 5)])
    paths = vertex_disjoint_paths(g2, [0, 1], [4, 5], set())
    assert paths is not None and len(paths) == 2
    assert not set(paths[0]) & set(paths[1])
    assert vertex_disjoint_paths(g2, [0, 1], [4, 5], {2}) is None


def planted_instance():
    edges = [(0, 8), (1, 9), (2, 12), (3, 13), (4, 12), (4, 13),
             (5, 14), (6, 14), (7, 15), (5, 15), (6, 10), (7, 11)]
    g = UndirectedGraph(16, edges)
    return g, list(range(8)), {0, 1, 8, 9, 2, 3, 10, 11}


def test_certified_planted_solution_mostly_succeeds():
    g, a_side, planted = planted_instance()
    successes = 0
    for seed in range(20):
        out = aim_to_tournament(g, a_side, len(planted), seed=seed)
        sol = certify_planted_solution(g, a_side, planted, out)
        if sol is not None:
            assert sol.size <= out.threshold
            assert is_feasible(Instance(out.instance.g, 1, 1), sol.arcs)
            successes += 1
    assert successes >= 18


def test_sample_bias_contract():
    t = gen_tournament(64, 3)
    rep = sample_bias(t, 100, seed=5)
    assert 0.0 <= rep["frequency"] <= 1.0
    assert rep == sample_bias(t, 100, seed=5)
    small = sample_bias(gen_tournament(4, 1), 20, seed=2)
    assert 0.0 <= small["frequency"] <= 1.0
