"""The (p,q)-domination semantics every solver is verified against.

An arc (u,v) dominates itself, every arc on a directed path of length <= q
starting at v, and every arc on a directed path of length <= p ending at u.
Since paths need not be simple this reduces to shortest-path thresholds:
(x,y) is dominated by (u,v) iff dist(v,x) <= q-1 or dist(y,u) <= p-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, MalformedSolutionError
from .graph import Digraph, dist_from, reach_within

__all__ = ["Instance", "Solution", "dominated_arcs", "is_feasible", "verify", "domination_masks"]


@dataclass(frozen=True)
class Instance:
    """A digraph with domination ranges, an optional budget and optional arcs."""

    g: Digraph
    p: int
    q: int
    budget: int | None = None
    optional_mask: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise InputError("p and q must be non-negative")
        if self.budget is not None and self.budget < 0:
            raise InputError("budget must be non-negative")
        if any(i < 0 or i >= self.g.m for i in self.optional_mask):
            raise InputError("optional_mask references arcs outside the graph")

    @property
    def mandatory(self) -> list[int]:
        return [i for i in range(self.g.m) if i not in self.optional_mask]


@dataclass
class Solution:
    """A set of arc indices claimed to dominate all mandatory arcs."""

    arcs: frozenset[int]
    engine: str = ""
    elapsed_ms: float = 0.0
    audit: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.arcs)


def dominated_arcs(inst: Instance, k_set: frozenset[int] | set[int]) -> set[int]:
    """All arc indices (p,q)-dominated by ``k_set``."""
    g = inst.g
    for i in k_set:
        if not 0 <= i < g.m:
            raise MalformedSolutionError(f"arc index {i} out of range")
    result = set(k_set)
    if inst.q >= 1:
        heads = sorted({g.arcs[i][1] for i in k_set})
        for v in heads:
            d = dist_from(g, v, max_dist=inst.q - 1)
            for idx, (x, _) in enumerate(g.arcs):
                if d[x] <= inst.q - 1:
                    result.add(idx)
    if inst.p >= 1:
        rev = g.reversed()
        tails = sorted({g.arcs[i][0] for i in k_set})
        for u in tails:
            d = dist_from(rev, u, max_dist=inst.p - 1)
            for idx, (_, y) in enumerate(g.arcs):
                if d[y] <= inst.p - 1:
                    result.add(idx)
    return result


def is_feasible(inst: Instance, arcs: frozenset[int] | set[int]) -> bool:
    """True iff every mandatory arc is dominated (budget not considered)."""
    dom = dominated_arcs(inst, arcs)
    return all(i in dom for i in range(inst.g.m) if i not in inst.optional_mask)


def verify(inst: Instance, sol: Solution) -> bool:
    """Feasibility gate: domination of all mandatory arcs plus the budget check."""
    for i in sol.arcs:
        if not 0 <= i < inst.g.m:
            raise MalformedSolutionError(f"arc index {i} out of range")
    if inst.budget is not None and len(sol.arcs) > inst.budget:
        return False
    return is_feasible(inst, sol.arcs)


def domination_masks(inst: Instance) -> tuple[list[int], int]:
    """Per-arc domination bitmasks and the mandatory-arc target mask.

    ``masks[i]`` has bit j set iff selecting arc i dominates arc j; a set K is
    feasible iff the OR of its masks covers the target.  Domination is
    per-arc independent, so this is exactly ``dominated_arcs`` factored.
    """
    g = inst.g
    rev = g.reversed()
    masks = []
    fwd_cache: dict[int, int] = {}
    bwd_cache: dict[int, int] = {}
    for i, (u, v) in enumerate(g.arcs):
        mask = 1 << i
        if inst.q >= 1:
            fm = fwd_cache.get(v)
            if fm is None:
                fm = 0
                for x in reach_within(g, v, inst.q - 1):
                    for idx in g.out_adj[x]:
                        fm |= 1 << idx
                fwd_cache[v] = fm
            mask |= fm
        if inst.p >= 1:
            bm = bwd_cache.get(u)
            if bm is None:
                bm = 0
                for y in reach_within(rev, u, inst.p - 1):
                    for idx in g.in_adj[y]:
                        bm |= 1 << idx
                bwd_cache[u] = bm
            mask |= bm
        masks.append(mask)
    target = 0
    for i in range(g.m):
        if i not in inst.optional_mask:
            target |= 1 << i
    return masks, target
