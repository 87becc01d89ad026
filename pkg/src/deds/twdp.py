"""Dynamic programming over nice tree decompositions for arbitrary fixed (p,q).

Per bag vertex u the DP state holds f(u) in [0..q] and b(u) in [0..p]: the
claimed shortest distance from the head of some selected arc to u, and from u
to the tail of some selected arc (capped).  Two witness bits per vertex
record whether the claim has been backed up yet, either by an actual arc
selection or by arithmetic through a bag-mate (f(u) = f(w) + dist(w,u)).
A capped value claims nothing and needs no witness.  Arcs are selected, and
counted, exactly at the forget node of their first-forgotten endpoint, where
all arcs incident on the leaving vertex must be dominated.

Distances are always shortest-path distances in the whole graph, precomputed
once.  States violating the triangle inequality against a bag-mate can never
be the profile of a real solution, so they are pruned; this keeps dense bags
tractable without affecting the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .domination import Instance, Solution, is_feasible
from .errors import DecompositionError, GraphFormatError, InputError, ResourceLimitError
from .graph import INF, Digraph, dist_from

__all__ = [
    "TreeDecomposition",
    "NiceTreeDecomposition",
    "NiceNode",
    "validate_td",
    "make_nice",
    "heuristic_td",
    "solve_twdp",
    "parse_td",
    "format_td",
]


@dataclass
class TreeDecomposition:
    """Bags plus a tree over bag indices; width = max bag size - 1."""

    bags: list[frozenset[int]]
    edges: list[tuple[int, int]]
    n: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def validate_td(td: TreeDecomposition, g: Digraph) -> None:
    """Check the three defining properties; raise naming the violated one."""
    nb = len(td.bags)
    if nb == 0:
        raise DecompositionError("decomposition has no bags")
    adj = [[] for _ in range(nb)]
    for (a, b) in td.edges:
        if not (0 <= a < nb and 0 <= b < nb):
            raise DecompositionError(f"tree edge ({a},{b}) out of range")
        adj[a].append(b)
        adj[b].append(a)
    if len(td.edges) != nb - 1:
        raise DecompositionError("tree must have exactly (#bags - 1) edges")
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != nb:
        raise DecompositionError("tree is not connected")
    covered = set().union(*td.bags) if td.bags else set()
    if covered != set(range(td.n)):
        raise DecompositionError("property 1 violated: bags do not cover all vertices")
    for (u, v) in g.arcs:
        if not any(u in b and v in b for b in td.bags):
            raise DecompositionError(
                f"property 2 violated: no bag contains both endpoints of arc ({u},{v})"
            )
    for v in range(td.n):
        holders = [i for i in range(nb) if v in td.bags[i]]
        root = holders[0]
        reach = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holders and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if len(reach) != len(holders):
            raise DecompositionError(
                f"property 3 violated: bags containing vertex {v} are not connected"
            )


@dataclass(frozen=True)
class NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: tuple[int, ...]  # sorted
    children: tuple[int, ...] = ()
    vertex: int | None = None


@dataclass
class NiceTreeDecomposition:
    """Rooted binary leaf/introduce/forget/join tree; root bag is empty.

    Nodes are stored in postorder: children always precede their parent and
    the last node is the root.
    """

    nodes: list[NiceNode]
    n: int

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def validate(self) -> None:
        for i, nd in enumerate(self.nodes):
            if any(c >= i for c in nd.children):
                raise DecompositionError("children must precede parents")
            if nd.kind == "leaf":
                if nd.children or len(nd.bag) != 1:
                    raise DecompositionError("leaf bags must have exactly one vertex")
            elif nd.kind == "introduce":
                (c,) = nd.children
                if set(nd.bag) != set(self.nodes[c].bag) | {nd.vertex}:
                    raise DecompositionError("introduce must add exactly one vertex")
            elif nd.kind == "forget":
                (c,) = nd.children
                if set(nd.bag) != set(self.nodes[c].bag) - {nd.vertex}:
                    raise DecompositionError("forget must drop exactly one vertex")
            elif nd.kind == "join":
                a, b = nd.children
                if not (nd.bag == self.nodes[a].bag == self.nodes[b].bag):
                    raise DecompositionError("join children must share the parent bag")
            else:
                raise DecompositionError(f"unknown node kind {nd.kind!r}")
        if self.nodes[-1].bag != ():
            raise DecompositionError("root bag must be empty")
        parent = [-1] * len(self.nodes)
        for i, nd in enumerate(self.nodes):
            for c in nd.children:
                parent[c] = i
        for v in range(self.n):
            tops = 0
            for i, nd in enumerate(self.nodes):
                if v in nd.bag and (parent[i] == -1 or v not in self.nodes[parent[i]].bag):
                    tops += 1
            if tops != 1:
                raise DecompositionError(
                    f"bags containing vertex {v} do not form one connected subtree"
                )


def make_nice(td: TreeDecomposition, g: Digraph | None = None) -> NiceTreeDecomposition:
    """Convert to a nice decomposition of the same width with an empty root."""
    if g is not None:
        validate_td(td, g)
    bags = [frozenset(b) for b in td.bags]
    adj: dict[int, list[int]] = {i: [] for i in range(len(bags))}
    for (a, b) in td.edges:
        adj[a].append(b)
        adj[b].append(a)
    # drop bags that are subsets of a neighbor (splicing their other neighbors)
    alive = set(range(len(bags)))
    changed = True
    while changed and len(alive) > 1:
        changed = False
        for i in sorted(alive):
            swallow = next(
                (j for j in adj[i] if j in alive and bags[i] <= bags[j]), None
            )
            if swallow is not None:
                for j in adj[i]:
                    if j in alive and j != swallow:
                        adj[j].append(swallow)
                        adj[swallow].append(j)
                adj[swallow] = [x for x in adj[swallow] if x != i]
                for j in adj[i]:
                    if j in alive:
                        adj[j] = [x for x in adj[j] if x != i]
                alive.discard(i)
                changed = True
                break
    order = sorted(alive)
    if any(not bags[i] for i in order):
        raise DecompositionError("cannot build a nice decomposition from empty bags")

    nodes: list[NiceNode] = []

    def emit(kind, bag, children=(), vertex=None) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex))
        return len(nodes) - 1

    def chain_to(bag_from: frozenset[int], bag_to: frozenset[int], top: int) -> int:
        cur = set(bag_from)
        for v in sorted(bag_from - bag_to):
            cur.discard(v)
            top = emit("forget", cur, (top,), v)
        for v in sorted(bag_to - bag_from):
            cur.add(v)
            top = emit("introduce", cur, (top,), v)
        return top

    def leaf_chain(bag: frozenset[int]) -> int:
        vs = sorted(bag)
        top = emit("leaf", {vs[0]})
        cur = {vs[0]}
        for v in vs[1:]:
            cur.add(v)
            top = emit("introduce", cur, (top,), v)
        return top

    root_bag_idx = order[0]
    # iterative postorder over the bag tree
    done: dict[int, int] = {}
    stack: list[tuple[int, int, bool]] = [(root_bag_idx, -1, False)]
    while stack:
        i, parent, expanded = stack.pop()
        kids = [j for j in adj[i] if j in alive and j != parent]
        if not expanded:
            stack.append((i, parent, True))
            for j in kids:
                stack.append((j, i, False))
            continue
        if not kids:
            done[i] = leaf_chain(bags[i])
            continue
        tops = [chain_to(bags[j], bags[i], done[j]) for j in kids]
        acc = tops[0]
        for t in tops[1:]:
            acc = emit("join", bags[i], (acc, t))
        done[i] = acc
    top = done[root_bag_idx]
    cur = set(bags[root_bag_idx])
    for v in sorted(bags[root_bag_idx]):
        cur.discard(v)
        top = emit("forget", cur, (top,), v)
    ntd = NiceTreeDecomposition(nodes, td.n)
    ntd.validate()
    return ntd


def heuristic_td(g: Digraph) -> TreeDecomposition:
    """Min-degree elimination on the underlying graph; no optimality claim."""
    if g.n == 0:
        raise InputError("cannot decompose an empty graph")
    n = g.n
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for (u, v) in g.arcs:
        nbrs[u].add(v)
        nbrs[v].add(u)
    alive = set(range(n))
    bags: list[frozenset[int]] = []
    elim_bag: dict[int, int] = {}
    order: list[int] = []
    while alive:
        v = min(alive, key=lambda x: (len(nbrs[x] & alive), x))
        live_nbrs = sorted(nbrs[v] & alive)
        bags.append(frozenset([v] + live_nbrs))
        elim_bag[v] = len(bags) - 1
        order.append(v)
        for a in live_nbrs:
            for b in live_nbrs:
                if a != b:
                    nbrs[a].add(b)
        alive.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for v in order:
        i = elim_bag[v]
        rest = [w for w in bags[i] if w != v]
        if rest:
            w = min(rest, key=lambda x: pos[x])  # next eliminated bag member
            edges.append((i, elim_bag[w]))
        elif i + 1 < len(bags):
            edges.append((i, i + 1))  # isolated bag: chain to keep one tree
    td = TreeDecomposition(bags, edges, n)
    validate_td(td, g)
    return td


def parse_td(text: str) -> TreeDecomposition:
    """PACE-style format: ``s td <bags> <max-bag-size> <n>``, ``b <id> <v...>``,
    then tree edges ``<id> <id>``.  Bag ids are 1-based, vertex ids 0-based."""
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    header = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise GraphFormatError("bad or duplicate 's td' header")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            bid = int(parts[1])
            bags[bid] = frozenset(int(x) for x in parts[2:])
        else:
            if len(parts) != 2:
                raise GraphFormatError(f"bad tree edge line: {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise GraphFormatError("missing 's td' header")
    num_bags, max_bag, n = header
    if sorted(bags) != list(range(1, num_bags + 1)):
        raise GraphFormatError("bag ids must be 1..num-bags")
    if any(len(b) > max_bag for b in bags.values()):
        raise GraphFormatError("a bag exceeds the declared maximum size")
    bag_list = [bags[i] for i in range(1, num_bags + 1)]
    tree = [(a - 1, b - 1) for (a, b) in edges]
    return TreeDecomposition(bag_list, tree, n)


def format_td(td: TreeDecomposition) -> str:
    lines = [f"s td {len(td.bags)} {max((len(b) for b in td.bags), default=0)} {td.n}"]
    for i, b in enumerate(td.bags, start=1):
        lines.append("b " + " ".join([str(i)] + [str(v) for v in sorted(b)]))
    for (a, b) in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the DP proper


def _closure(vals: list[list[int]], bag: tuple[int, ...], dist, p: int, q: int) -> None:
    """Set witness bits justified by arithmetic through a bag-mate, in place."""
    k = len(bag)
    for i in range(k):
        f_i, b_i, sf_i, sb_i = vals[i]
        if not sf_i and f_i < q:
            for j in range(k):
                if j != i and vals[j][0] + dist[bag[j]][bag[i]] == f_i:
                    vals[i][2] = 1
                    break
        if not sb_i and b_i < p:
            for j in range(k):
                if j != i and vals[j][1] + dist[bag[i]][bag[j]] == b_i:
                    vals[i][3] = 1
                    break


def solve_twdp(
    g: Digraph,
    p: int,
    q: int,
    ntd: NiceTreeDecomposition,
    optional_mask: frozenset[int] = frozenset(),
    max_table_entries: int = 2_000_000,
    stats: dict | None = None,
) -> tuple[int, Solution]:
    """Optimal (p,q)-edge dominating set size and a witness solution.

    Raises ResourceLimitError when the running table size passes the ceiling.
    """
    inst = Instance(g, p, q, optional_mask=optional_mask)
    mandatory = set(inst.mandatory)
    if stats is not None:
        stats.update(max_table=0, total_entries=0,
                     per_vertex_states=4 * (p + 1) * (q + 1))
    if not mandatory:
        return 0, Solution(arcs=frozenset(), engine="twdp")
    if ntd.n != g.n:
        raise InputError("decomposition is for a different vertex count")
    dist = [dist_from(g, v) for v in range(g.n)]
    per_vertex_states = 4 * (p + 1) * (q + 1)
    tables: list[dict[tuple, tuple[int, tuple]]] = []
    total_entries = 0
    max_per_node = 0

    def put(table, sig, cnt, back):
        old = table.get(sig)
        if old is None or cnt < old[0]:
            table[sig] = (cnt, back)

    for ni, node in enumerate(ntd.nodes):
        bag = node.bag
        table: dict[tuple, tuple[int, tuple]] = {}
        if node.kind == "leaf":
            for f in range(q + 1):
                for b in range(p + 1):
                    put(table, ((f, b, 0, 0),), 0, ("leaf",))
        elif node.kind == "introduce":
            (ci,) = node.children
            child = tables[ci]
            cbag = ntd.nodes[ci].bag
            u = node.vertex
            pos = bag.index(u)
            for sig, (cnt, _) in child.items():
                for f_u in range(q + 1):
                    for b_u in range(p + 1):
                        ok = True
                        for j, w in enumerate(cbag):
                            f_w, b_w = sig[j][0], sig[j][1]
                            if f_u > min(f_w + dist[w][u], q) or f_w > min(
                                f_u + dist[u][w], q
                            ):
                                ok = False
                                break
                            if b_u > min(b_w + dist[u][w], p) or b_w > min(
                                b_u + dist[w][u], p
                            ):
                                ok = False
                                break
                        if not ok:
                            continue
                        vals = [list(t) for t in sig]
                        vals.insert(pos, [f_u, b_u, 0, 0])
                        _closure(vals, bag, dist, p, q)
                        put(table, tuple(tuple(v) for v in vals), cnt, ("intro", sig))
        elif node.kind == "join":
            a, b = node.children
            groups: dict[tuple, list[tuple]] = {}
            for sig in tables[b]:
                groups.setdefault(tuple((t[0], t[1]) for t in sig), []).append(sig)
            for lsig, (lcnt, _) in tables[a].items():
                key = tuple((t[0], t[1]) for t in lsig)
                for rsig in groups.get(key, ()):
                    rcnt = tables[b][rsig][0]
                    vals = [
                        [lt[0], lt[1], lt[2] | rt[2], lt[3] | rt[3]]
                        for lt, rt in zip(lsig, rsig)
                    ]
                    _closure(vals, bag, dist, p, q)
                    put(
                        table,
                        tuple(tuple(v) for v in vals),
                        lcnt + rcnt,
                        ("join", lsig, rsig),
                    )
        elif node.kind == "forget":
            (ci,) = node.children
            child = tables[ci]
            cbag = ntd.nodes[ci].bag
            u = node.vertex
            upos = cbag.index(u)
            bag_set = set(bag)
            cand = sorted(
                [i for i in g.out_adj[u] if g.arcs[i][1] in bag_set]
                + [i for i in g.in_adj[u] if g.arcs[i][0] in bag_set]
            )
            cpos = {v: j for j, v in enumerate(cbag)}
            for sig, (cnt, _) in child.items():
                for mask in range(1 << len(cand)):
                    selected = [cand[j] for j in range(len(cand)) if (mask >> j) & 1]
                    vals = [list(t) for t in sig]
                    for idx in selected:
                        x, y = g.arcs[idx]
                        vals[cpos[y]][0] = 0
                        vals[cpos[y]][2] = 1
                        vals[cpos[x]][1] = 0
                        vals[cpos[x]][3] = 1
                    _closure(vals, cbag, dist, p, q)
                    f_u, b_u, sf_u, sb_u = vals[upos]
                    if (f_u < q and not sf_u) or (b_u < p and not sb_u):
                        continue
                    ok = True
                    for idx in cand:
                        if idx not in mandatory or idx in selected:
                            continue
                        x, y = g.arcs[idx]
                        if not (
                            vals[cpos[x]][0] <= q - 1 or vals[cpos[y]][1] <= p - 1
                        ):
                            ok = False
                            break
                    if not ok:
                        continue
                    del vals[upos]
                    put(
                        table,
                        tuple(tuple(v) for v in vals),
                        cnt + len(selected),
                        ("forget", sig, tuple(selected)),
                    )
        else:  # pragma: no cover
            raise AssertionError(node.kind)
        if len(table) > per_vertex_states ** len(bag):
            raise AssertionError("table exceeds the per-bag signature bound")
        total_entries += len(table)
        max_per_node = max(max_per_node, len(table))
        if total_entries > max_table_entries:
            raise ResourceLimitError(
                f"DP tables exceeded the ceiling of {max_table_entries} entries"
            )
        tables.append(table)

    root = tables[-1]
    if () not in root:
        raise AssertionError("DP root lost all states; the full arc set is feasible")
    opt, _ = root[()]

    # witness reconstruction via back-pointers
    arcs: set[int] = set()
    stack: list[tuple[int, tuple]] = [(len(ntd.nodes) - 1, ())]
    while stack:
        ni, sig = stack.pop()
        back = tables[ni][sig][1]
        node = ntd.nodes[ni]
        if back[0] == "leaf":
            continue
        if back[0] == "intro":
            stack.append((node.children[0], back[1]))
        elif back[0] == "join":
            stack.append((node.children[0], back[1]))
            stack.append((node.children[1], back[2]))
        else:  # forget
            arcs.update(back[2])
            stack.append((node.children[0], back[1]))
    if stats is not None:
        stats.update(
            max_table=max_per_node,
            total_entries=total_entries,
            per_vertex_states=per_vertex_states,
        )
    sol = Solution(arcs=frozenset(arcs), engine="twdp")
    if len(sol.arcs) != opt or not is_feasible(inst, sol.arcs):
        raise AssertionError("DP witness does not match the computed optimum")
    return opt, sol
