"""Branching solvers for (0,1)- and (1,1)-edge domination, parameterized by k.

Both solvers guess degree profiles of solution vertices, prune on a measure
that strictly drops along every branch, and finish each leaf with a
polynomial completion step.  Branch arcs are always the lowest-index
qualifying arc and "arbitrary" choices resolve to lowest index, so results
are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domination import Instance, Solution, is_feasible
from .errors import InputError
from .graph import Digraph, max_bipartite_matching

__all__ = ["Branch11State", "Branch01State", "solve_11", "solve_01"]


@dataclass(frozen=True)
class Branch11State:
    """Guessed degree profiles: out-only, in-only, and both-positive vertices."""

    v_plus: frozenset[int]
    v_minus: frozenset[int]
    v_plusminus: frozenset[int]

    def measure_used(self) -> int:
        return len(self.v_plus) + len(self.v_minus) + 2 * len(self.v_plusminus)


@dataclass(frozen=True)
class Branch01State:
    """(0,1) guesses: zero in-degree, identified in-arc, pending in-arc."""

    v0: frozenset[int]
    vF: frozenset[int]
    vQ: frozenset[int]
    forced: frozenset[int]


def _better(a: tuple[int, tuple[int, ...]] | None, arcs: frozenset[int]) -> bool:
    """Size first, then lexicographic on sorted arc indices."""
    cand = (len(arcs), tuple(sorted(arcs)))
    return a is None or cand < a


def solve_11(g: Digraph, k: int, stats: dict | None = None) -> Solution | None:
    """Minimum (1,1)-edge dominating set of size <= k, or None.

    Phase 1 branches five ways on an arc with both endpoints unmarked, then
    three ways on uncovered arcs with one marked endpoint; each branch fully
    guesses a vertex's degree profile.  Phase 2 takes the forced arcs from
    V+ to V- and covers the remaining profile obligations with a minimum
    edge cover of the bipartite candidate graph.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    best: tuple[int, tuple[int, ...]] | None = None
    counters = {"nodes": 0, "leaves": 0}

    def completion(vp: frozenset[int], vm: frozenset[int], vpm: frozenset[int]) -> frozenset[int] | None:
        out_side = vp | vpm
        in_side = vm | vpm
        forced = []
        h_out: dict[int, list[int]] = {u: [] for u in out_side}
        h_in: dict[int, list[int]] = {v: [] for v in in_side}
        for idx, (u, v) in enumerate(g.arcs):
            if u in out_side and v in in_side:
                h_out[u].append(idx)
                h_in[v].append(idx)
                if u in vp and v in vm:
                    forced.append(idx)
        touched_out = {g.arcs[i][0] for i in forced}
        touched_in = {g.arcs[i][1] for i in forced}
        need_out = sorted(out_side - touched_out)
        need_in = sorted(in_side - touched_in)
        for u in need_out:
            if not h_out[u]:
                return None  # profile unrealizable: no candidate out-arc
        for v in need_in:
            if not h_in[v]:
                return None
        need_in_set = set(need_in)
        adj = {
            u: [g.arcs[i][1] for i in h_out[u] if g.arcs[i][1] in need_in_set]
            for u in need_out
        }
        match_l = max_bipartite_matching(need_out, adj)
        matched_r = set(match_l.values())
        chosen = set(forced)
        for u, v in match_l.items():
            chosen.add(g.arc_index(u, v))
        for u in need_out:
            if u not in match_l:
                chosen.add(h_out[u][0])
        for v in need_in:
            if v not in matched_r:
                chosen.add(h_in[v][0])
        return frozenset(chosen)

    def rec(vp: frozenset[int], vm: frozenset[int], vpm: frozenset[int]) -> None:
        nonlocal best
        counters["nodes"] += 1
        if len(vp) + len(vm) + 2 * len(vpm) > 2 * k:
            return
        marked = vp | vm | vpm
        for (u, v) in g.arcs:
            if u not in marked and v not in marked:
                rec(vp | {v}, vm, vpm)
                rec(vp, vm, vpm | {v})
                rec(vp, vm | {u}, vpm)
                rec(vp, vm, vpm | {u})
                rec(vp | {u}, vm | {v}, vpm)
                return
        covered_tail = vm | vpm
        covered_head = vp | vpm
        for (u, v) in g.arcs:
            if u in covered_tail or v in covered_head:
                continue
            if u in marked and v not in marked:  # u in V+
                rec(vp | {v}, vm, vpm)
                rec(vp, vm | {v}, vpm)
                rec(vp, vm, vpm | {v})
                return
            if v in marked and u not in marked:  # v in V-
                rec(vp | {u}, vm, vpm)
                rec(vp, vm | {u}, vpm)
                rec(vp, vm, vpm | {u})
                return
        counters["leaves"] += 1
        sol = completion(vp, vm, vpm)
        if sol is not None and len(sol) <= k and _better(best, sol):
            best = (len(sol), tuple(sorted(sol)))

    rec(frozenset(), frozenset(), frozenset())
    if stats is not None:
        stats.update(counters)
    if best is None:
        return None
    arcs = frozenset(best[1])
    if not is_feasible(Instance(g, 1, 1), arcs):  # defensive; should never fire
        raise AssertionError("solve_11 produced an infeasible completion")
    return Solution(arcs=arcs, engine="fpt11")


def solve_01(g: Digraph, k: int, stats: dict | None = None) -> Solution | None:
    """Minimum (0,1)-edge dominating set of size <= k, or None.

    Reduction rules 1-6 run to a fixed point in numeric order before any
    branch; both branching rules grow the positive-in-degree guess, so the
    tree has at most 2^k leaves.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    n, arcs = g.n, g.arcs
    best: tuple[int, tuple[int, ...]] | None = None
    counters = {"nodes": 0, "leaves": 0}

    def apply_rules(
        v0: set[int], vF: set[int], vQ: set[int], forced: set[int]
    ) -> bool:
        """Fixed point of the six reduction rules; False means reject."""
        while True:
            if len(vF) + len(vQ) > k:
                return False
            restart = False
            for (u, v) in arcs:
                if u in v0 and v in v0:
                    return False
            for v in range(n):
                if v in v0 or v in vF or v in vQ:
                    continue
                if not g.in_adj[v]:  # source in Vr
                    v0.add(v)
                    restart = True
                    break
            if restart:
                continue
            # rule 4: an arc out of a zero-in-degree vertex is dominated only
            # by itself, so the whole out-star of u is forced and every head
            # gains in-degree; the trigger must also fire when the head is
            # already in vF but the arc itself is not yet forced.
            for idx, (u, v) in enumerate(arcs):
                if u in v0 and (v not in vF or idx not in forced):
                    vF.add(v)
                    vQ.discard(v)
                    forced.update(g.out_adj[u])
                    restart = True
                    break
            if restart:
                continue
            for (u, v) in arcs:
                if v in v0 and u not in vF and u not in vQ:
                    vQ.add(u)
                    restart = True
                    break
            if restart:
                continue
            for idx, (u, v) in enumerate(arcs):
                if v in vF and idx not in forced and u not in v0 and u not in vF and u not in vQ:
                    vQ.add(u)
                    restart = True
                    break
            if restart:
                continue
            return True

    def leaf(v0: set[int], vF: set[int], vQ: set[int], forced: set[int]) -> None:
        nonlocal best
        counters["leaves"] += 1
        chosen = set(forced)
        for v in sorted(vQ):
            picked = None
            for idx in g.in_adj[v]:
                u = arcs[idx][0]
                if u not in v0 and u not in vF and u not in vQ:  # u in Vr
                    picked = idx
                    break
            if picked is None:
                if not g.in_adj[v]:
                    return  # guess unrealizable: v cannot gain in-degree
                picked = g.in_adj[v][0]
            chosen.add(picked)
        if len(chosen) <= k and is_feasible(Instance(g, 0, 1), frozenset(chosen)):
            if _better(best, frozenset(chosen)):
                best = (len(chosen), tuple(sorted(chosen)))

    def rec(v0: set[int], vF: set[int], vQ: set[int], forced: set[int]) -> None:
        counters["nodes"] += 1
        if not apply_rules(v0, vF, vQ, forced):
            return
        marked = v0 | vF | vQ
        for idx, (u, v) in enumerate(arcs):
            if u not in marked and v not in marked:
                rec(set(v0), set(vF), set(vQ) | {u}, set(forced))
                rec(set(v0) | {u}, set(vF) | {v}, set(vQ), set(forced) | {idx})
                return
        for u in sorted(vQ):
            in_r = [
                idx
                for idx in g.in_adj[u]
                if arcs[idx][0] not in marked
            ]
            if len(in_r) >= 2:
                v1 = arcs[in_r[0]][0]
                rec(set(v0), set(vF), set(vQ) | {v1}, set(forced))
                rec(
                    set(v0) | {v1},
                    set(vF) | {u},
                    set(vQ) - {u},
                    set(forced) | {in_r[0]},
                )
                return
        leaf(v0, vF, vQ, forced)

    rec(set(), set(), set(), set())
    if stats is not None:
        stats.update(counters)
    if best is None:
        return None
    return Solution(arcs=frozenset(best[1]), engine="fpt01")
