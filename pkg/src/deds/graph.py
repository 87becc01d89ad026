"""Directed-graph substrate: storage, traversal, matchings and tournament primitives.

All structures are immutable after construction and all algorithms break ties
by lowest vertex id / lowest arc index, so every caller gets reproducible
results for the same input.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import InputError, NoEdgeCoverError

#: Sentinel for "no directed path"; compares greater than any finite length.
INF = float("inf")


class Digraph:
    """A directed graph on vertices ``0..n-1`` with an indexed arc list.

    Arcs keep their insertion order and are addressed by index everywhere in
    the package (solutions are sets of arc indices).  Self-loops and duplicate
    arcs are rejected; both ``(u, v)`` and ``(v, u)`` may coexist.
    """

    __slots__ = ("n", "arcs", "out_adj", "in_adj", "_index", "_rev")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        self.arcs: list[tuple[int, int]] = []
        self.out_adj: list[list[int]] = [[] for _ in range(n)]
        self.in_adj: list[list[int]] = [[] for _ in range(n)]
        self._index: dict[tuple[int, int], int] = {}
        self._rev: Digraph | None = None
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if (u, v) in self._index:
                raise InputError(f"duplicate arc ({u},{v})")
            idx = len(self.arcs)
            self.arcs.append((u, v))
            self._index[(u, v)] = idx
            self.out_adj[u].append(idx)
            self.in_adj[v].append(idx)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def arc_index(self, u: int, v: int) -> int | None:
        return self._index.get((u, v))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def out_neighbors(self, u: int) -> list[int]:
        return [self.arcs[i][1] for i in self.out_adj[u]]

    def in_neighbors(self, v: int) -> list[int]:
        return [self.arcs[i][0] for i in self.in_adj[v]]

    def out_degree(self, u: int) -> int:
        return len(self.out_adj[u])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.in_adj[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.out_adj[v]]

    def reversed(self) -> "Digraph":
        """Arc-reversed graph; arc i of the result reverses arc i of self."""
        if self._rev is None:
            self._rev = Digraph(self.n, [(v, u) for (u, v) in self.arcs])
        return self._rev

    def is_tournament(self) -> bool:
        if self.m != self.n * (self.n - 1) // 2:
            return False
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if ((u, v) in self._index) == ((v, u) in self._index):
                    return False
        return True

    def __repr__(self) -> str:  # pragma: no cover
        return f"Digraph(n={self.n}, m={self.m})"


class Tournament(Digraph):
    """A digraph with exactly one arc between every pair of distinct vertices."""

    __slots__ = ()

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        super().__init__(n, arcs)
        if not self.is_tournament():
            raise InputError("not a tournament: need exactly one arc per vertex pair")

    @classmethod
    def from_digraph(cls, g: Digraph) -> "Tournament":
        return cls(g.n, g.arcs)

    def reversed(self) -> "Tournament":
        if self._rev is None:
            self._rev = Tournament(self.n, [(v, u) for (u, v) in self.arcs])
        return self._rev


class UndirectedGraph:
    """A plain undirected graph (used by the reduction generators)."""

    __slots__ = ("n", "edges", "adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        self.edges: list[tuple[int, int]] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self._edge_set: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in self._edge_set:
                raise InputError(f"duplicate edge {e}")
            self._edge_set.add(e)
            self.edges.append(e)
            self.adj[u].append(v)
            self.adj[v].append(u)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])


class UndirectedView:
    """Underlying undirected graph of a digraph.

    A digon ``(u,v),(v,u)`` collapses to one edge.  Edges are listed in
    first-occurrence arc order, which fixes the order every greedy procedure
    sees.
    """

    __slots__ = ("g", "n", "edges", "adj", "arcs_of_edge")

    def __init__(self, g: Digraph):
        self.g = g
        self.n = g.n
        self.edges: list[tuple[int, int]] = []
        self.adj: list[list[int]] = [[] for _ in range(g.n)]
        #: edge position -> arc indices realizing it (1 or 2, ascending)
        self.arcs_of_edge: list[list[int]] = []
        seen: dict[tuple[int, int], int] = {}
        for idx, (u, v) in enumerate(g.arcs):
            e = (min(u, v), max(u, v))
            pos = seen.get(e)
            if pos is None:
                seen[e] = len(self.edges)
                self.edges.append(e)
                self.arcs_of_edge.append([idx])
                self.adj[e[0]].append(e[1])
                self.adj[e[1]].append(e[0])
            else:
                self.arcs_of_edge[pos].append(idx)

    @property
    def m(self) -> int:
        return len(self.edges)


def dist_from(g: Digraph, s: int, max_dist: int | float = INF) -> list[int | float]:
    """BFS distances from ``s``; unreachable vertices get ``INF``.

    ``max_dist`` truncates the search: distances beyond it are reported as
    ``INF``, which is all any threshold test needs.
    """
    if not 0 <= s < g.n:
        raise InputError(f"vertex {s} out of range")
    dist: list[int | float] = [INF] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if d >= max_dist:
            continue
        for idx in g.out_adj[u]:
            w = g.arcs[idx][1]
            if dist[w] is INF or dist[w] > d + 1:
                dist[w] = d + 1
                queue.append(w)
    return dist


def reach_within(g: Digraph, s: int, radius: int | float) -> list[int]:
    """Vertices at directed distance <= radius from s (s included), BFS order."""
    if radius < 0:
        return []
    dist: dict[int, int] = {s: 0}
    out = [s]
    queue = deque([s])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if d >= radius:
            continue
        for idx in g.out_adj[u]:
            w = g.arcs[idx][1]
            if w not in dist:
                dist[w] = d + 1
                out.append(w)
                queue.append(w)
    return out


def scc_partition(g: Digraph) -> list[list[int]]:
    """Strongly connected components in topological order.

    For components at positions i < j every arc between them points from
    component i to component j.  Each component is sorted ascending.
    Iterative Tarjan, so deep graphs do not hit the recursion limit.
    """
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        # explicit DFS stack: (vertex, iterator position into out_adj)
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for j in range(pi, len(g.out_adj[v])):
                w = g.arcs[g.out_adj[v][j]][1]
                if index[w] == -1:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    # Tarjan emits components in reverse topological order.
    comps.reverse()
    return comps


def maximal_matching(view: UndirectedView) -> list[tuple[int, int]]:
    """Greedy maximal matching over the view's edges in fixed order."""
    matched = [False] * view.n
    out = []
    for (u, v) in view.edges:
        if not matched[u] and not matched[v]:
            matched[u] = matched[v] = True
            out.append((u, v))
    return out


def max_bipartite_matching(
    left: Sequence[int], adj: dict[int, list[int]]
) -> dict[int, int]:
    """Maximum matching via augmenting paths; returns left -> right pairs.

    ``adj`` maps each left vertex to its right neighbors; iteration order is
    as given, so the result is deterministic.
    """
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in adj.get(u, ()):
            if w in seen:
                continue
            seen.add(w)
            if w not in match_r or augment(match_r[w], seen):
                match_l[u] = w
                match_r[w] = u
                return True
        return False

    for u in left:
        augment(u, set())
    return match_l


def min_edge_cover_bipartite(
    left: Sequence[int],
    right: Sequence[int],
    edges: Sequence[tuple[int, int]],
) -> list[tuple[int, int]]:
    """Minimum set of edges touching every vertex of a bipartite graph.

    Maximum matching plus one arbitrary (first-listed) incident edge per
    unmatched vertex, which is optimal by Gallai's identity.
    """
    left = list(left)
    right = list(right)
    adj: dict[int, list[int]] = {u: [] for u in left}
    radj: dict[int, list[tuple[int, int]]] = {w: [] for w in right}
    for (u, w) in edges:
        if u not in adj or w not in radj:
            raise InputError(f"edge ({u},{w}) not between the given sides")
        adj[u].append(w)
        radj[w].append((u, w))
    for u in left:
        if not adj[u]:
            raise NoEdgeCoverError(f"left vertex {u} is isolated")
    for w in right:
        if not radj[w]:
            raise NoEdgeCoverError(f"right vertex {w} is isolated")
    match_l = max_bipartite_matching(left, adj)
    matched_r = set(match_l.values())
    cover = [(u, w) for u, w in match_l.items()]
    for u in left:
        if u not in match_l:
            cover.append((u, adj[u][0]))
    for w in right:
        if w not in matched_r:
            cover.append(radj[w][0])
    # report in a canonical order
    order = {e: i for i, e in enumerate(edges)}
    cover.sort(key=lambda e: order[e])
    return cover


def hamiltonian_path(t: Tournament) -> list[int]:
    """A directed Hamiltonian path, built by insertion.

    Vertex v goes in front of the first ordered vertex it beats; this keeps
    the consecutive-arcs invariant at every step.
    """
    order: list[int] = []
    for v in range(t.n):
        pos = len(order)
        for i, w in enumerate(order):
            if t.has_arc(v, w):
                pos = i
                break
        order.insert(pos, v)
    return order


def king(t: Tournament) -> int:
    """A vertex reaching all others within two steps: max out-degree, lowest id."""
    if t.n == 0:
        raise InputError("empty tournament has no king")
    best = 0
    for v in range(1, t.n):
        if t.out_degree(v) > t.out_degree(best):
            best = v
    return best


def greedy_dominating_set(t: Tournament) -> list[int]:
    """Dominating set of size <= floor(log2 n) + 1.

    Repeatedly takes the max-out-degree vertex of the residual tournament on
    the still-undominated vertices; each round at least halves the residual.
    """
    if t.n == 0:
        return []
    out_mask = [0] * t.n
    for (u, v) in t.arcs:
        out_mask[u] |= 1 << v
    residual = (1 << t.n) - 1
    chosen: list[int] = []
    while residual:
        best_v = -1
        best_deg = -1
        r = residual
        while r:
            v = (r & -r).bit_length() - 1
            r &= r - 1
            deg = (out_mask[v] & residual).bit_count()
            if deg > best_deg:
                best_deg = deg
                best_v = v
        chosen.append(best_v)
        residual &= ~((out_mask[best_v] & residual) | (1 << best_v))
    return chosen


def induced_subtournament(t: Tournament, vertices: Sequence[int]) -> tuple[Tournament, list[int]]:
    """Tournament induced on ``vertices``; returns it with the id map (new -> old)."""
    vs = list(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    arcs = []
    for (u, v) in t.arcs:
        if u in pos and v in pos:
            arcs.append((pos[u], pos[v]))
    return Tournament(len(vs), arcs), vs
