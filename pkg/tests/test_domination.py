import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deds.domination import Instance, Solution, dominated_arcs, domination_masks, verify
from deds.errors import MalformedSolutionError
from deds.graph import Digraph

from conftest import random_digraph


def cases():
    return st.tuples(
        st.integers(0, 5_000), st.integers(0, 2), st.integers(0, 2)
    ).map(lambda t: (random_digraph(6, 12, t[0]), t[1], t[2]))


def arcs_of(g, pairs):
    return frozenset(g.arc_index(u, v) for (u, v) in pairs)


def test_dominated_arcs_examples():
    path = Digraph(4, [(0, 1), (1, 2), (2, 3)])
    inst = Instance(path, 1, 1)
    got = dominated_arcs(inst, arcs_of(path, [(1, 2)]))
    assert got == arcs_of(path, [(0, 1), (1, 2), (2, 3)])
    assert dominated_arcs(inst, frozenset()) == set()
    cyc = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert dominated_arcs(Instance(cyc, 1, 1), arcs_of(cyc, [(0, 1)])) == {0, 1, 2}


def test_verify_examples():
    path = Digraph(3, [(0, 1), (1, 2)])
    inst = Instance(path, 0, 1)
    assert verify(inst, Solution(arcs=arcs_of(path, [(0, 1)])))
    assert not verify(inst, Solution(arcs=arcs_of(path, [(1, 2)])))
    star = Digraph(4, [(0, 1), (0, 2), (0, 3)])
    inst = Instance(star, 0, 1)
    assert not verify(inst, Solution(arcs=arcs_of(star, [(0, 1), (0, 2)])))
    assert verify(inst, Solution(arcs=frozenset({0, 1, 2})))


def test_verify_budget_and_malformed():
    path = Digraph(3, [(0, 1), (1, 2)])
    inst = Instance(path, 0, 1, budget=0)
    assert not verify(inst, Solution(arcs=frozenset({0})))
    with pytest.raises(MalformedSolutionError):
        verify(Instance(path, 0, 1), Solution(arcs=frozenset({5})))


@settings(max_examples=80, deadline=None)
@given(cases(), st.integers(0, 2**14 - 1), st.integers(0, 2**14 - 1))
def test_monotonicity_and_self_domination(case, bits_a, bits_b):
    g, p, q = case
    inst = Instance(g, p, q)
    small = frozenset(i for i in range(g.m) if (bits_a >> i) & 1)
    big = small | frozenset(i for i in range(g.m) if (bits_b >> i) & 1)
    dom_small = dominated_arcs(inst, small)
    dom_big = dominated_arcs(inst, big)
    assert small <= dom_small
    assert dom_small <= dom_big


@settings(max_examples=80, deadline=None)
@given(cases(), st.integers(0, 2**14 - 1))
def test_pq_qp_duality(case, bits):
    g, p, q = case
    k_set = frozenset(i for i in range(g.m) if (bits >> i) & 1)
    fwd = dominated_arcs(Instance(g, p, q), k_set)
    rev = dominated_arcs(Instance(g.reversed(), q, p), k_set)
    assert fwd == rev  # arc i of the reversal is arc i reversed


@settings(max_examples=40, deadline=None)
@given(cases(), st.integers(0, 2**14 - 1))
def test_zero_zero_semantics(case, bits):
    g, _, _ = case
    k_set = frozenset(i for i in range(g.m) if (bits >> i) & 1)
    assert dominated_arcs(Instance(g, 0, 0), k_set) == set(k_set)


@settings(max_examples=40, deadline=None)
@given(cases(), st.integers(0, 2**14 - 1))
def test_masks_agree_with_dominated_arcs(case, bits):
    g, p, q = case
    inst = Instance(g, p, q)
    k_set = frozenset(i for i in range(g.m) if (bits >> i) & 1)
    masks, target = domination_masks(inst)
    acc = 0
    for i in k_set:
        acc |= masks[i]
    direct = dominated_arcs(inst, k_set)
    assert {i for i in range(g.m) if (acc >> i) & 1} == direct
    assert target == (1 << g.m) - 1
