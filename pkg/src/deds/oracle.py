"""Brute-force exact solvers used as ground truth at desk scale.

``exact_min_deds`` enumerates arc subsets by size then lexicographic order
and is kept deliberately naive.  ``exact_min_deds_branching`` is a second,
independent exact engine that branches on "which arc dominates the hardest
still-undominated arc"; it reaches instance sizes the subset scan cannot and
the test suite cross-checks the two on the whole small-graph corpus.
"""

from __future__ import annotations

from itertools import combinations

from .domination import Instance, Solution, domination_masks
from .errors import InputError, ResourceLimitError
from .graph import Digraph, UndirectedGraph, UndirectedView, reach_within

__all__ = [
    "exact_min_deds",
    "exact_min_deds_branching",
    "enumerate_min_solutions",
    "exact_aim",
    "exact_ds",
]

DEFAULT_WORK_LIMIT = 50_000_000


def exact_min_deds(
    inst: Instance, k_max: int, work_limit: int = DEFAULT_WORK_LIMIT
) -> Solution | None:
    """Minimum (p,q)-edge dominating set of size <= k_max, or None.

    Subsets are tried by increasing cardinality, lexicographically within a
    cardinality, so the returned witness is deterministic.  Exceeding
    ``work_limit`` examined subsets raises; that is distinct from "no
    solution".
    """
    m = inst.g.m
    masks, target = domination_masks(inst)
    work = 0
    for size in range(0, min(k_max, m) + 1):
        for combo in combinations(range(m), size):
            work += 1
            if work > work_limit:
                raise ResourceLimitError(
                    f"subset scan exceeded work limit of {work_limit}"
                )
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc & target == target:
                return Solution(arcs=frozenset(combo), engine="oracle")
    return None


class _BranchTables:
    """Lazy dominator sets / domination masks shared across deepening rounds.

    Bit positions index mandatory arcs only.  The branching order puts arcs
    with the fewest dominators first; counts are capped during the ordering
    walk so the ordering never pays for dominator-rich arcs, whose full sets
    and masks get computed only if the search actually reaches them.
    """

    ORDER_CAP = 64

    def __init__(self, inst: Instance):
        self.inst = inst
        self.g = inst.g
        self.rev = inst.g.reversed()
        self.mandatory = inst.mandatory
        self.bit_of = {a: i for i, a in enumerate(self.mandatory)}
        counts = {a: self._capped_count(a) for a in self.mandatory}
        self.order = sorted(self.mandatory, key=lambda a: (counts[a], a))
        self.order_bits = [1 << self.bit_of[a] for a in self.order]
        self._doms: dict[int, list[int]] = {}
        self._masks: dict[int, int] = {}

    def _capped_count(self, a: int) -> int:
        cap = self.ORDER_CAP
        seen = {a}
        g, inst = self.g, self.inst
        x, y = g.arcs[a]
        if inst.q >= 1:
            for w in reach_within(self.rev, x, inst.q - 1):
                seen.update(g.in_adj[w])
                if len(seen) > cap:
                    return cap + 1
        if inst.p >= 1:
            for v in reach_within(g, y, inst.p - 1):
                seen.update(g.out_adj[v])
                if len(seen) > cap:
                    return cap + 1
        return len(seen)

    def dominators(self, a: int) -> list[int]:
        """Arcs whose selection dominates mandatory arc a (a itself included)."""
        got = self._doms.get(a)
        if got is None:
            g, inst = self.g, self.inst
            x, y = g.arcs[a]
            s = {a}
            if inst.q >= 1:
                for w in reach_within(self.rev, x, inst.q - 1):
                    s.update(g.in_adj[w])
            if inst.p >= 1:
                for v in reach_within(g, y, inst.p - 1):
                    s.update(g.out_adj[v])
            got = self._doms[a] = sorted(s)
        return got

    def mask(self, d: int) -> int:
        """Bitmask (over mandatory positions) of arcs dominated by selecting d."""
        got = self._masks.get(d)
        if got is None:
            g, inst = self.g, self.inst
            u, v = g.arcs[d]
            buf = bytearray((len(self.mandatory) + 7) // 8)
            bit_of = self.bit_of

            def set_arc(idx: int) -> None:
                pos = bit_of.get(idx)
                if pos is not None:
                    buf[pos >> 3] |= 1 << (pos & 7)

            set_arc(d)
            if inst.q >= 1:
                for x in reach_within(g, v, inst.q - 1):
                    for idx in g.out_adj[x]:
                        set_arc(idx)
            if inst.p >= 1:
                for y in reach_within(self.rev, u, inst.p - 1):
                    for idx in g.in_adj[y]:
                        set_arc(idx)
            got = self._masks[d] = int.from_bytes(buf, "little")
        return got


def _branch_search(
    tables: _BranchTables,
    k_max: int,
    work_limit: int,
    collect_all: bool,
) -> list[frozenset[int]]:
    """Shared engine: feasible arc sets of size <= k_max via dominator branching.

    Every minimal feasible set of size <= k_max appears in the branch tree:
    whatever set S is feasible, it contains a dominator of the first
    still-undominated mandatory arc, and that choice is one of the branches.
    Domination only grows along a branch, so the scan index never moves back.
    """
    order_bits = tables.order_bits
    order = tables.order
    found: set[frozenset[int]] = set()
    work = 0

    def rec(chosen: tuple[int, ...], acc: int, start: int) -> None:
        nonlocal work
        work += 1
        if work > work_limit:
            raise ResourceLimitError(f"branch search exceeded work limit of {work_limit}")
        hit = None
        for ai in range(start, len(order_bits)):
            if acc & order_bits[ai] == 0:
                hit = ai
                break
        if hit is None:
            found.add(frozenset(chosen))
            return
        if len(chosen) >= k_max:
            return
        for d in tables.dominators(order[hit]):
            if d in chosen:
                continue
            rec(chosen + (d,), acc | tables.mask(d), hit)
            if found and not collect_all:
                return

    rec((), 0, 0)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def exact_min_deds_branching(
    inst: Instance, k_max: int, work_limit: int = DEFAULT_WORK_LIMIT
) -> Solution | None:
    """Exact minimum via dominator branching; agrees with ``exact_min_deds``.

    Iterative deepening on the budget keeps the returned solution minimum.
    """
    tables = _BranchTables(inst)
    for k in range(0, k_max + 1):
        sols = _branch_search(tables, k, work_limit, collect_all=False)
        if sols:
            return Solution(arcs=sols[0], engine="oracle-branch")
    return None


def enumerate_min_solutions(
    inst: Instance, size: int, work_limit: int = DEFAULT_WORK_LIMIT
) -> list[frozenset[int]]:
    """All feasible sets of exactly ``size`` arcs, given size is the optimum.

    Optima are minimal (a feasible proper subset would contradict minimality),
    and the branch tree reaches every minimal feasible set, so the collection
    is complete.  Raises if a smaller feasible set shows up, since then
    ``size`` was not the optimum.
    """
    sols = _branch_search(_BranchTables(inst), size, work_limit, collect_all=True)
    for s in sols:
        if len(s) < size:
            raise InputError(f"feasible set of size {len(s)} < {size} exists")
    return [s for s in sols if len(s) == size]


def exact_aim(graph: UndirectedGraph | UndirectedView, limit: int = 24) -> tuple[int, set[int]]:
    """Maximum almost induced matching: largest S inducing max degree <= 1.

    Complete search over deletion sets: any vertex with two kept neighbors
    must lose itself or all but one neighbor, and all those cases are
    branched, so no maximal candidate is missed.  The size bound only prunes
    branches that cannot beat the incumbent.
    """
    n = graph.n
    if n > limit:
        raise ResourceLimitError(f"AIM oracle limited to {limit} vertices, got {n}")
    adj = [set() for _ in range(n)]
    for (u, v) in graph.edges:
        adj[u].add(v)
        adj[v].add(u)

    best_size = -1
    best_set: set[int] = set()

    def rec(deleted: set[int]) -> None:
        nonlocal best_size, best_set
        if n - len(deleted) <= best_size:
            return
        viol = -1
        for v in range(n):
            if v in deleted:
                continue
            if len(adj[v] - deleted) >= 2:
                viol = v
                break
        if viol == -1:
            kept = n - len(deleted)
            if kept > best_size:
                best_size = kept
                best_set = {v for v in range(n) if v not in deleted}
            return
        rec(deleted | {viol})
        nbrs = sorted(adj[viol] - deleted)
        for keep in nbrs:
            rec(deleted | (set(nbrs) - {keep}))
        rec(deleted | set(nbrs))

    rec(set())
    return best_size, best_set


def exact_ds(g: Digraph, limit: int = 24) -> tuple[int, set[int]]:
    """Minimum directed dominating set: every v outside has an in-neighbor inside."""
    if g.n > limit:
        raise ResourceLimitError(f"DS oracle limited to {limit} vertices, got {g.n}")
    n = g.n
    cover = [1 << v for v in range(n)]
    for (u, v) in g.arcs:
        cover[u] |= 1 << v
    full = (1 << n) - 1
    for size in range(0, n + 1):
        for combo in combinations(range(n), size):
            acc = 0
            for v in combo:
                acc |= cover[v]
            if acc == full:
                return size, set(combo)
    raise AssertionError("unreachable: the full vertex set always dominates")
