"""Constant-factor approximations: 3x for (0,1) and 8x for (1,1).

Both partition the vertices into sources S, sinks T and the rest R, satisfy
the forced obligations around S and T, then fix whatever is left with a
maximal matching of the residual digraph.  Feasibility holds by
construction; the ratio certificates (|K1|, |K2|, |M|, |I+|) are reported
for audit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domination import Instance, Solution, dominated_arcs, is_feasible
from .graph import Digraph, UndirectedView, maximal_matching

__all__ = ["SourceSinkPartition", "partition_sources_sinks", "approx_01", "approx_11"]


@dataclass(frozen=True)
class SourceSinkPartition:
    sources: frozenset[int]
    sinks: frozenset[int]
    rest: frozenset[int]


def partition_sources_sinks(g: Digraph) -> SourceSinkPartition:
    """S = zero in-degree (isolated vertices included), T = proper sinks."""
    sources = frozenset(v for v in range(g.n) if not g.in_adj[v])
    sinks = frozenset(
        v for v in range(g.n) if not g.out_adj[v] and g.in_adj[v]
    )
    rest = frozenset(range(g.n)) - sources - sinks
    return SourceSinkPartition(sources, sinks, rest)


def _residual_matching_arcs(g: Digraph, rest: frozenset[int], dominated: set[int]) -> list[int]:
    """One arc per maximal-matching edge of the undominated sub-digraph on R."""
    residual_arcs = [
        i
        for i, (u, v) in enumerate(g.arcs)
        if i not in dominated and u in rest and v in rest
    ]
    matched: set[int] = set()
    chosen: list[int] = []
    for i in residual_arcs:
        u, v = g.arcs[i]
        if u not in matched and v not in matched:
            matched.add(u)
            matched.add(v)
            chosen.append(i)
    return chosen


def approx_01(g: Digraph, audit: dict | None = None) -> Solution:
    """Feasible (0,1)-edge dominating set of size <= 3 * OPT."""
    part = partition_sources_sinks(g)
    k1 = [i for i, (u, _) in enumerate(g.arcs) if u in part.sources]
    # vertices of R with an out-arc to a sink but no in-arc selected yet
    n_plus_s = {g.arcs[i][1] for i in k1}
    k2: list[int] = []
    for v in sorted(part.rest):
        if v in n_plus_s:
            continue
        if any(g.arcs[i][1] in part.sinks for i in g.out_adj[v]):
            k2.append(g.in_adj[v][0])
    inst = Instance(g, 0, 1)
    partial = set(k1) | set(k2)
    dominated = dominated_arcs(inst, partial)
    m_arcs = _residual_matching_arcs(g, part.rest, dominated)
    matched_vertices = {w for i in m_arcs for w in g.arcs[i]}
    tails = sorted({g.arcs[i][0] for i in m_arcs})
    k3 = list(m_arcs)
    for v in tails:
        k3.append(g.in_adj[v][0])
    # unmatched residual non-sinks need one incoming arc each
    residual_out = {
        u
        for i, (u, v) in enumerate(g.arcs)
        if i not in dominated and u in part.rest and v in part.rest
    }
    i_plus = sorted(residual_out - matched_vertices)
    for v in i_plus:
        k3.append(g.in_adj[v][0])
    arcs = frozenset(partial | set(k3))
    assert len(arcs) <= len(k1) + len(k2) + 2 * len(m_arcs) + len(i_plus)
    if audit is not None:
        audit.update(K1=len(k1), K2=len(k2), M=len(m_arcs), I_plus=len(i_plus))
    sol = Solution(arcs=arcs, engine="approx01",
                   audit={"K1": len(k1), "K2": len(k2), "M": len(m_arcs), "I_plus": len(i_plus)})
    assert is_feasible(inst, arcs)
    return sol


def approx_11(g: Digraph, audit: dict | None = None) -> Solution:
    """Feasible (1,1)-edge dominating set of size <= 8 * OPT."""
    part = partition_sources_sinks(g)
    k1 = [
        i
        for i, (u, v) in enumerate(g.arcs)
        if u in part.sources and v in part.sinks
    ]
    k2: list[int] = []
    for v in sorted(part.rest):
        if any(g.arcs[i][0] in part.sources for i in g.in_adj[v]):
            k2.append(g.out_adj[v][0])
    k3: list[int] = []
    for v in sorted(part.rest):
        if any(g.arcs[i][1] in part.sinks for i in g.out_adj[v]):
            k3.append(g.in_adj[v][0])
    inst = Instance(g, 1, 1)
    partial = set(k1) | set(k2) | set(k3)
    dominated = dominated_arcs(inst, partial)
    m_arcs = _residual_matching_arcs(g, part.rest, dominated)
    k4 = list(m_arcs)
    for v in sorted({g.arcs[i][0] for i in m_arcs}):
        k4.append(g.in_adj[v][0])
    for v in sorted({g.arcs[i][1] for i in m_arcs}):
        k4.append(g.out_adj[v][0])
    arcs = frozenset(partial | set(k4))
    if audit is not None:
        audit.update(K1=len(k1), K2=len(k2), K3=len(k3), M=len(m_arcs))
    sol = Solution(arcs=arcs, engine="approx11",
                   audit={"K1": len(k1), "K2": len(k2), "K3": len(k3), "M": len(m_arcs)})
    assert is_feasible(inst, arcs)
    return sol
