"""The complete tournament classification as executable solvers.

Per (p,q): p+q <= 1 is polynomial (the optimum is n-1 except the trivial
(0,0) case), p = q = 1 falls back to the general branching solver, p = 2 or
q = 2 is quasi-polynomial via logarithmic solution-size bounds, and all
remaining cases with max(p,q) >= 3 are polynomial through king arguments.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations

from .domination import Instance, Solution, domination_masks, is_feasible
from .errors import InputError, ResourceLimitError, WrongEngineError
from .fpt import solve_11
from .graph import (
    Tournament,
    greedy_dominating_set,
    induced_subtournament,
    king,
    scc_partition,
)

__all__ = [
    "solve_t01",
    "solve_t_pq3",
    "solve_t_q2",
    "ds_to_02",
    "ds_to_p2_instance",
    "classify",
    "eds22_construction",
    "solve_tournament",
]


def solve_t01(t: Tournament) -> Solution:
    """Optimal (0,1)-edge dominating set; always of size n-1.

    BFS tree arcs inside the first strongly connected component from its
    lowest vertex s, plus all arcs from s to every vertex outside it: every
    vertex except s ends up with an incoming selected arc.
    """
    if t.n <= 1:
        return Solution(arcs=frozenset(), engine="tournament-01")
    comps = scc_partition(t)
    c1 = set(comps[0])
    s = min(c1)
    chosen: set[int] = set()
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for idx in t.out_adj[u]:
            w = t.arcs[idx][1]
            if w in c1 and w not in seen:
                seen.add(w)
                chosen.add(idx)
                queue.append(w)
    for u in range(t.n):
        if u not in c1:
            idx = t.arc_index(s, u)
            assert idx is not None  # all arcs leave the first component
            chosen.add(idx)
    assert len(chosen) == t.n - 1
    return Solution(arcs=frozenset(chosen), engine="tournament-01")


def solve_t_pq3(t: Tournament, p: int, q: int) -> Solution:
    """Optimal solution for max(p,q) >= 3 with neither p nor q equal to 2."""
    if max(p, q) < 3 or p == 2 or q == 2:
        raise WrongEngineError(f"(p,q)=({p},{q}) outside the max>=3, no-2 range")
    if t.n <= 1:
        return Solution(arcs=frozenset(), engine="tournament-pq3")
    if q < 3:
        rev = solve_t_pq3(t.reversed(), q, p)
        return Solution(arcs=rev.arcs, engine="tournament-pq3")
    kg = king(t)
    if t.in_adj[kg]:
        # any in-arc of the king (0,3)-dominates everything; one arc is optimal
        return Solution(arcs=frozenset({t.in_adj[kg][0]}), engine="tournament-pq3")
    s = kg  # the king with no in-arc is the unique source
    if p <= 1:
        return Solution(arcs=frozenset(t.out_adj[s]), engine="tournament-pq3")
    sinks = t.sinks()
    if not sinks:
        rev = t.reversed()
        kr = king(rev)
        return Solution(arcs=frozenset({rev.in_adj[kr][0]}), engine="tournament-pq3")
    t_sink = sinks[0]
    if t.n == 2:
        return Solution(arcs=frozenset({t.arc_index(s, t_sink)}), engine="tournament-pq3")
    others = [v for v in range(t.n) if v not in (s, t_sink)]
    s2 = max(others, key=lambda v: (t.out_degree(v), -v))
    t2 = max(others, key=lambda v: (t.in_degree(v), -v))
    cand = frozenset(
        {t.arc_index(s, t_sink), t.arc_index(s, s2), t.arc_index(t2, t_sink)}
    )
    inst = Instance(t, p, q)
    assert is_feasible(inst, cand)
    # the source-to-sink arc is dominated only by itself, so any smaller
    # solution must contain it; exhaust all such subsets of size <= 2
    st = t.arc_index(s, t_sink)
    if is_feasible(inst, frozenset({st})):
        return Solution(arcs=frozenset({st}), engine="tournament-pq3")
    for e in range(t.m):
        if e != st and is_feasible(inst, frozenset({st, e})):
            return Solution(arcs=frozenset({st, e}), engine="tournament-pq3")
    return Solution(arcs=cand, engine="tournament-pq3")


def solve_t_q2(t: Tournament, p: int, q: int, limit: int = 12) -> Solution:
    """Optimal solution for p = 2 or q = 2 by bounded exhaustive search.

    The search space is capped by the proven bounds: floor(log2 n)+1 via the
    dominating-set route when p <= 1 on sourceless tournaments, and
    2*floor(log2 n)+3 otherwise.
    """
    if p != 2 and q != 2:
        raise WrongEngineError(f"(p,q)=({p},{q}) needs p=2 or q=2")
    if t.n > limit:
        raise ResourceLimitError(
            f"quasi-polynomial search limited to {limit} vertices, got {t.n}"
        )
    if t.n <= 1:
        return Solution(arcs=frozenset(), engine="tournament-q2")
    if q != 2:
        rev = solve_t_q2(t.reversed(), q, p, limit)
        return Solution(arcs=rev.arcs, engine="tournament-q2")
    sources = t.sources()
    if p <= 1 and sources:
        return Solution(arcs=frozenset(t.out_adj[sources[0]]), engine="tournament-q2")
    logn = int(math.log2(t.n))
    ub = (logn + 1) if p <= 1 else (2 * logn + 3)
    cap = min(ub, t.n - 1, t.m)
    masks, target = domination_masks(Instance(t, p, 2))
    for size in range(cap + 1):
        for combo in combinations(range(t.m), size):
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc & target == target:
                return Solution(arcs=frozenset(combo), engine="tournament-q2")
    raise AssertionError("no solution within the proven size bound")


def ds_to_02(t: Tournament, d: set[int] | frozenset[int]) -> Solution:
    """One incoming arc per dominating-set vertex: a (0,2)-edge dominating set."""
    if t.sources():
        raise InputError("tournament has a source; the dominating-set route needs none")
    dset = set(d)
    for v in range(t.n):
        if v not in dset and not any(t.arcs[i][0] in dset for i in t.in_adj[v]):
            raise InputError(f"vertex {v} is not dominated by the given set")
    arcs = frozenset(t.in_adj[v][0] for v in sorted(dset))
    return Solution(arcs=arcs, engine="tournament-ds02")


def ds_to_p2_instance(t: Tournament) -> Tournament:
    """Append a sink receiving an arc from every vertex: OPT_(p,2) equals OPT_DS."""
    arcs = list(t.arcs) + [(v, t.n) for v in range(t.n)]
    return Tournament(t.n + 1, arcs)


def classify(t: Tournament, p: int, q: int) -> str:
    """Route (p,q) to the engine the classification prescribes."""
    if p + q <= 1:
        return "solve_t01"
    if p == 1 and q == 1:
        return "fpt11"
    if p == 2 or q == 2:
        return "solve_t_q2"
    return "solve_t_pq3"


def eds22_construction(t: Tournament) -> Solution:
    """A (2,2)-edge dominating set of size <= 2*floor(log2 n) + 3.

    Sourceless: one in-arc per greedy dominating-set vertex.  Sinkless: the
    same on the reversal.  Otherwise in-arcs of a dominating set of T-s,
    out-arcs of one for the reversal of T-t, plus the source-to-sink arc.
    """
    if t.n <= 1:
        return Solution(arcs=frozenset(), engine="tournament-22bound")
    sources = t.sources()
    if not sources:
        d = greedy_dominating_set(t)
        return Solution(arcs=frozenset(t.in_adj[v][0] for v in sorted(d)),
                        engine="tournament-22bound")
    sinks = t.sinks()
    if not sinks:
        rev = t.reversed()
        d = greedy_dominating_set(rev)
        return Solution(arcs=frozenset(rev.in_adj[v][0] for v in sorted(d)),
                        engine="tournament-22bound")
    s, t_sink = sources[0], sinks[0]
    if t.n == 2:
        return Solution(arcs=frozenset({t.arc_index(s, t_sink)}), engine="tournament-22bound")
    sub1, map1 = induced_subtournament(t, [v for v in range(t.n) if v != s])
    s1 = [map1[v] for v in greedy_dominating_set(sub1)]
    d1 = {t.in_adj[v][0] for v in sorted(s1)}
    rev = t.reversed()
    sub2, map2 = induced_subtournament(rev, [v for v in range(t.n) if v != t_sink])
    s2 = [map2[v] for v in greedy_dominating_set(sub2)]
    d2 = {rev.in_adj[v][0] for v in sorted(s2)}
    arcs = frozenset(d1 | d2 | {t.arc_index(s, t_sink)})
    return Solution(arcs=arcs, engine="tournament-22bound")


def solve_tournament(
    t: Tournament, p: int, q: int, k: int | None = None, qp_limit: int = 12
) -> Solution | None:
    """Auto-routed tournament solve; None only when a budget k is given and hit."""
    route = classify(t, p, q)
    if route == "solve_t01":
        if p == 0 and q == 0:
            # every arc only dominates itself: the arc set is the optimum
            sol = Solution(arcs=frozenset(range(t.m)), engine="tournament-00")
        elif q == 1:
            sol = solve_t01(t)
        else:  # (1,0): solve the reversal, indices map one-to-one
            sol = Solution(arcs=solve_t01(t.reversed()).arcs, engine="tournament-01")
    elif route == "fpt11":
        if k is not None:
            return solve_11(t, k)
        kk = 0
        while True:
            sol = solve_11(t, kk)
            if sol is not None:
                break
            kk += 1
    elif route == "solve_t_q2":
        sol = solve_t_q2(t, p, q, limit=qp_limit)
    else:
        sol = solve_t_pq3(t, p, q)
    if k is not None and sol is not None and sol.size > k:
        return None
    return sol
