"""Instance generators: random graphs and the reduction constructions.

Everything is driven by explicit integer seeds through ``random.Random``;
generator outputs embed their parameters and seed in a lineage dict so a run
can be reproduced byte for byte.  The reductions double as correctness
fixtures: at tiny scale the test suite replays their yes/no guarantees
against the exact solvers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .domination import Instance, Solution, is_feasible
from .errors import InputError
from .graph import Digraph, Tournament, UndirectedGraph, hamiltonian_path, induced_subtournament

__all__ = [
    "McInstance",
    "ReductionOutput",
    "gen_tournament",
    "gen_digraph",
    "mcc_to_optional",
    "clique_arcs",
    "optional_to_full",
    "is_to_aim",
    "aim_to_tournament",
    "sample_bias",
    "vertex_disjoint_paths",
    "certify_planted_solution",
]


@dataclass(frozen=True)
class McInstance:
    """Multicolored-clique input: k independent classes of n vertices each."""

    graph: UndirectedGraph
    classes: list[list[int]]

    def __post_init__(self):
        sizes = {len(c) for c in self.classes}
        if len(sizes) != 1:
            raise InputError("all classes must have the same size")
        flat = [v for c in self.classes for v in c]
        if sorted(flat) != list(range(self.graph.n)):
            raise InputError("classes must partition the vertex set")
        for c in self.classes:
            cs = set(c)
            for v in c:
                if any(w in cs for w in self.graph.adj[v]):
                    raise InputError("classes must be independent sets")

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def class_size(self) -> int:
        return len(self.classes[0])


@dataclass
class ReductionOutput:
    instance: Instance
    threshold: int
    lineage: dict = field(default_factory=dict)


def gen_tournament(n: int, seed: int) -> Tournament:
    """Random tournament: each pair oriented i->j with probability 1/2."""
    if n < 1:
        raise InputError("n must be positive")
    rng = random.Random(seed)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            arcs.append((i, j) if rng.random() < 0.5 else (j, i))
    return Tournament(n, arcs)


def gen_digraph(n: int, arc_prob: float, seed: int) -> Digraph:
    """Random digraph: each ordered pair gets an arc independently."""
    if not 0.0 <= arc_prob <= 1.0:
        raise InputError("arc_prob must be in [0,1]")
    rng = random.Random(seed)
    arcs = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < arc_prob:
                arcs.append((u, v))
    return Digraph(n, arcs)


def mcc_to_optional(mc: McInstance) -> ReductionOutput:
    """Multicolored clique -> optional (3n,3n)-instance.

    Class cycles encode the choice of one vertex per class, guard cycles of
    length 5n+1 force one selection per class, and per missing cross-class
    edge a gadget arc (e,f) with calibrated forward/backward paths stays
    undominated exactly when both endpoints of the non-edge are selected.
    All path arcs are optional; the gadget's cover set S (their internal
    vertices) is recorded in the lineage for the standard-instance transform.
    """
    k, n = mc.k, mc.class_size
    if n % 2 != 0:
        raise InputError("class size must be even")
    arcs: list[tuple[int, int]] = []
    optional: set[int] = set()
    vid = {(i, j): i * n + j for i in range(k) for j in range(n)}
    next_id = k * n

    def fresh() -> int:
        nonlocal next_id
        next_id += 1
        return next_id - 1

    def add_arc(u: int, v: int, opt: bool) -> None:
        if opt:
            optional.add(len(arcs))
        arcs.append((u, v))

    def add_path(src: int, dst: int, length: int, opt: bool) -> list[int]:
        inner = [fresh() for _ in range(length - 1)]
        chain = [src] + inner + [dst]
        for a, b in zip(chain, chain[1:]):
            add_arc(a, b, opt)
        return inner

    for i in range(k):
        for j in range(n):
            add_arc(vid[(i, j)], vid[(i, (j + 1) % n)], False)
    for i in range(k):
        # guard cycle of length 5n+1 through the class midpoint vertex
        add_path(vid[(i, n // 2)], vid[(i, n // 2)], 5 * n + 1, False)

    cover_set: list[int] = []
    gadgets: dict[tuple[int, int, int, int], tuple[int, int]] = {}
    for i in range(k):
        for j in range(i + 1, k):
            for a in range(n):
                for b in range(n):
                    if mc.graph.has_edge(mc.classes[i][a], mc.classes[j][b]):
                        continue
                    e, f = fresh(), fresh()
                    gadgets[(i, j, a, b)] = (e, f)
                    add_arc(e, f, False)
                    if a > 0:
                        cover_set += add_path(vid[(i, 0)], e, a + 2 * n, True)
                    if b > 0:
                        cover_set += add_path(vid[(j, 0)], e, b + 2 * n, True)
                    back_a = 3 * n - a + 1 if a > 0 else 2 * n + 1
                    cover_set += add_path(f, vid[(i, 0)], back_a, True)
                    back_b = 3 * n - b + 1 if b > 0 else 2 * n + 1
                    cover_set += add_path(f, vid[(j, 0)], back_b, True)

    g = Digraph(next_id, arcs)
    inst = Instance(g, 3 * n, 3 * n, budget=k, optional_mask=frozenset(optional))
    lineage = {
        "construction": "mcc-to-optional",
        "k": k,
        "n": n,
        "class_vertex": {f"{i},{j}": vid[(i, j)] for i in range(k) for j in range(n)},
        "gadget_arc_vertices": {",".join(map(str, key)): ef for key, ef in gadgets.items()},
        "cover_set": sorted(cover_set),
        "n_vertices": g.n,
        "n_arcs": g.m,
    }
    return ReductionOutput(instance=inst, threshold=k, lineage=lineage)


def clique_arcs(out: ReductionOutput, chosen: dict[int, int]) -> frozenset[int]:
    """The k class-cycle arcs whose heads encode the given clique choice."""
    n = out.lineage["n"]
    g = out.instance.g
    arcs = set()
    for i, j in chosen.items():
        u = out.lineage["class_vertex"][f"{i},{(j - 1) % n}"]
        v = out.lineage["class_vertex"][f"{i},{j}"]
        arcs.add(g.arc_index(u, v))
    return frozenset(arcs)


def optional_to_full(r: ReductionOutput, s_set: set[int] | frozenset[int]) -> ReductionOutput:
    """Optional instance -> standard instance at threshold k+1.

    Adds the arc (u1,u2), k+2 guard paths of 3n arcs into u1, and for every
    cover vertex u a path u2->u and a path u->u1 of length 3n-1 each, so
    (u1,u2) is forced into any small solution and on its own dominates every
    arc that used to be optional.
    """
    inst = r.instance
    g = inst.g
    three_n = inst.p
    if inst.p != inst.q:
        raise InputError("expected a symmetric optional instance")
    for idx in sorted(inst.optional_mask):
        u, v = g.arcs[idx]
        if u not in s_set and v not in s_set:
            raise InputError(f"optional arc ({u},{v}) not incident to the cover set")
    for u in sorted(s_set):
        if not g.in_adj[u] or not g.out_adj[u]:
            raise InputError(f"cover vertex {u} is a source or sink")
    k = r.threshold
    arcs = list(g.arcs)
    next_id = g.n

    def fresh() -> int:
        nonlocal next_id
        next_id += 1
        return next_id - 1

    def add_path(src: int | None, dst: int | None, length: int) -> None:
        chain = ([src] if src is not None else [fresh()]) + [
            fresh() for _ in range(length - 1)
        ] + ([dst] if dst is not None else [fresh()])
        for a, b in zip(chain, chain[1:]):
            arcs.append((a, b))

    u1, u2 = fresh(), fresh()
    arcs.append((u1, u2))
    for _ in range(k + 2):
        add_path(None, u1, three_n)
    for u in sorted(s_set):
        add_path(u2, u, three_n - 1)
        add_path(u, u1, three_n - 1)
    full = Digraph(next_id, arcs)
    inst_out = Instance(full, inst.p, inst.q, budget=k + 1)
    lineage = dict(r.lineage)
    lineage.update(
        construction="optional-to-full",
        u1=u1,
        u2=u2,
        n_vertices=full.n,
        n_arcs=full.m,
    )
    return ReductionOutput(instance=inst_out, threshold=k + 1, lineage=lineage)


def is_to_aim(g: UndirectedGraph, k: int) -> tuple[UndirectedGraph, int]:
    """Independent set (max degree 3) -> almost-induced-matching instance.

    Each edge (x,y) becomes the length-four path x, v_xe, v_e, v_ye, y and
    every vertex gains a pendant copy; the target becomes L = n + 2m + k.
    """
    if any(g.degree(v) > 3 for v in range(g.n)):
        raise InputError("input graph must have maximum degree 3")
    n, m = g.n, g.m
    edges: list[tuple[int, int]] = []
    for x in range(n):
        edges.append((x, n + x))  # pendant copy
    for e_idx, (x, y) in enumerate(g.edges):
        v_xe = 2 * n + 3 * e_idx
        v_e = v_xe + 1
        v_ye = v_xe + 2
        edges += [(x, v_xe), (v_xe, v_e), (v_e, v_ye), (v_ye, y)]
    return UndirectedGraph(2 * n + 3 * m, edges), n + 2 * m + k


def aim_to_tournament(
    g: UndirectedGraph, a_side: list[int], L: int, seed: int
) -> ReductionOutput:
    """Bipartite AIM instance -> (1,1) tournament at threshold |V(T)| - L/2 + 1.

    Edges orient A->B, non-edges B->A, and every remaining pair (inside A',
    inside B', inside the 4n helper block C, and across to C) is seeded
    random.  The guarantee is only with-high-probability, so callers treat
    per-seed failures as observations, not errors.
    """
    a = sorted(a_side)
    b = sorted(set(range(g.n)) - set(a))
    if len(a) != len(b):
        raise InputError("sides must have equal size")
    aset = set(a)
    for (x, y) in g.edges:
        if (x in aset) == (y in aset):
            raise InputError("graph is not bipartite over the given sides")
    if L % 2 != 0:
        raise InputError("L must be even")
    n = len(a)
    amap = {x: i for i, x in enumerate(a)}
    bmap = {y: n + i for i, y in enumerate(b)}
    total = 6 * n
    rng = random.Random(seed)
    arcs = []
    for i in range(total):
        for j in range(i + 1, total):
            if i < n and n <= j < 2 * n:
                x, y = a[i], b[j - n]
                arcs.append((i, j) if g.has_edge(x, y) else (j, i))
            else:
                arcs.append((i, j) if rng.random() < 0.5 else (j, i))
    t = Tournament(total, arcs)
    threshold = total - L // 2 + 1
    inst = Instance(t, 1, 1, budget=threshold)
    lineage = {
        "construction": "aim-to-tournament",
        "n": n,
        "L": L,
        "seed": seed,
        "a_map": {str(x): i for x, i in amap.items()},
        "b_map": {str(y): i for y, i in bmap.items()},
        "c_range": [2 * n, total],
        "n_vertices": total,
    }
    return ReductionOutput(instance=inst, threshold=threshold, lineage=lineage)


def sample_bias(t: Tournament, trials: int, seed: int = 0) -> dict:
    """Empirical frequency of the no-strong-bias property on sampled X, Y.

    Sets have size ceil((log2 n)^2) capped at n//2 so disjoint sampling stays
    possible at small n; informational only.
    """
    n = t.n
    size = 0 if n < 2 else min(math.ceil(math.log2(n) ** 2), n // 2)
    rng = random.Random(seed)
    hits = 0
    for _ in range(trials):
        if size == 0:
            hits += 1
            continue
        perm = rng.sample(range(n), 2 * size)
        xs, ys = perm[:size], set(perm[size:])
        ok_x = any(
            sum(1 for i in t.out_adj[x] if t.arcs[i][1] in ys) >= 2 for x in xs
        )
        xset = set(xs)
        ok_y = any(
            sum(1 for i in t.in_adj[y] if t.arcs[i][0] in xset) >= 2 for y in ys
        )
        hits += 1 if (ok_x and ok_y) else 0
    return {
        "n": n,
        "set_size": size,
        "trials": trials,
        "seed": seed,
        "frequency": hits / trials if trials else 1.0,
    }


def vertex_disjoint_paths(
    g: Digraph, xs: list[int], ys: list[int], forbidden: set[int]
) -> list[list[int]] | None:
    """min(|xs|,|ys|)-many vertex-disjoint directed paths from xs to ys, or None.

    Unit-capacity node-split max flow with BFS augmentation; deterministic.
    """
    want = min(len(xs), len(ys))
    if want == 0:
        return []
    allowed = [v for v in range(g.n) if v not in forbidden]
    src, dst = 2 * g.n, 2 * g.n + 1
    cap: dict[tuple[int, int], int] = {}
    forward: set[tuple[int, int]] = set()
    adj: dict[int, list[int]] = {src: [], dst: []}

    def add(a: int, b: int):
        cap[(a, b)] = cap.get((a, b), 0) + 1
        cap.setdefault((b, a), 0)
        forward.add((a, b))
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for v in allowed:
        add(2 * v, 2 * v + 1)  # vertex capacity 1
    allowed_set = set(allowed)
    for (u, v) in g.arcs:
        if u in allowed_set and v in allowed_set:
            add(2 * u + 1, 2 * v)
    for x in xs:
        if x in allowed_set:
            add(src, 2 * x)
    for y in ys:
        if y in allowed_set:
            add(2 * y + 1, dst)
    flow = 0
    while flow < want:
        prev = {src: src}
        queue = [src]
        qi = 0
        while qi < len(queue) and dst not in prev:
            a = queue[qi]
            qi += 1
            for b in adj.get(a, ()):
                if b not in prev and cap.get((a, b), 0) > 0:
                    prev[b] = a
                    queue.append(b)
        if dst not in prev:
            return None
        b = dst
        while b != src:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    # walk saturated forward edges; vertex capacities make the walk unique
    flowing = {e for e in forward if cap[e] == 0}
    paths = []
    for x in xs:
        if (src, 2 * x) not in flowing:
            continue
        path = [x]
        v = x
        while (2 * v + 1, dst) not in flowing:
            nxt = next(
                b // 2
                for b in adj[2 * v + 1]
                if (2 * v + 1, b) in flowing and b != dst
            )
            path.append(nxt)
            v = nxt
        paths.append(path)
    return paths


def certify_planted_solution(
    g: UndirectedGraph,
    a_side: list[int],
    planted: set[int],
    out: ReductionOutput,
) -> Solution | None:
    """Build a (1,1)-solution of size <= threshold from a planted AIM set.

    Mirrors the probabilistic argument: matched pairs keep their A->B arc,
    degree-zero vertices are wired through vertex-disjoint paths, and the
    rest is covered by a Hamiltonian path plus one incoming and one outgoing
    arc at its ends.  Returns None when the random block lacks the disjoint
    paths (expected to be rare); callers log that as a per-seed failure.
    """
    t: Tournament = out.instance.g  # type: ignore[assignment]
    amap = {int(k): v for k, v in out.lineage["a_map"].items()}
    bmap = {int(k): v for k, v in out.lineage["b_map"].items()}
    vmap = {**amap, **bmap}
    s0 = {v for v in planted if not any(w in planted for w in g.adj[v])}
    s1 = planted - s0
    for v in s1:
        if sum(1 for w in g.adj[v] if w in planted) != 1:
            raise InputError("planted set is not an almost induced matching")
    aset = set(a_side)
    chosen: set[int] = set()
    for v in sorted(s1 & aset):
        (w,) = [w for w in g.adj[v] if w in planted]
        idx = t.arc_index(vmap[v], vmap[w])
        assert idx is not None
        chosen.add(idx)
    xs = sorted(vmap[v] for v in s0 & aset)
    ys = sorted(vmap[v] for v in s0 - aset)
    if len(xs) != len(ys):
        raise InputError("planted degree-zero vertices must balance across sides")
    forbidden = {vmap[v] for v in s1}
    paths = vertex_disjoint_paths(t, xs, ys, forbidden)
    if paths is None or len(paths) < len(xs):
        return None
    used = set()
    for path in paths:
        used.update(path)
        for a, b in zip(path, path[1:]):
            chosen.add(t.arc_index(a, b))
    rest = [v for v in range(t.n) if v not in used and v not in forbidden]
    if rest:
        sub, back = induced_subtournament(t, rest)
        order = [back[v] for v in hamiltonian_path(sub)]
        for a, b in zip(order, order[1:]):
            chosen.add(t.arc_index(a, b))
        s_start, t_end = order[0], order[-1]
        if not t.in_adj[s_start] or not t.out_adj[t_end]:
            return None  # a source or sink in a random tournament: give up
        chosen.add(t.in_adj[s_start][0])
        chosen.add(t.out_adj[t_end][0])
    sol = Solution(arcs=frozenset(chosen), engine="planted-11")
    if len(sol.arcs) > out.threshold:
        return None
    if not is_feasible(Instance(t, 1, 1), sol.arcs):
        return None
    return sol
