"""Polynomial kernels for (0,1)- and (1,1)-edge domination.

Both kernels emit a size-certified reduced instance that preserves the yes/no
answer at the (possibly updated) budget.  "First k+1" and other arbitrary
choices resolve to lowest vertex id, so kernels are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .domination import Instance
from .errors import InputError
from .graph import Digraph, UndirectedView, maximal_matching

__all__ = ["KernelResult", "kernelize_01", "kernelize_11", "lift_solution_01"]


@dataclass
class KernelResult:
    reduced: Instance
    k_out: int
    verdict: str  # "reduced" | "rejected-no" | "trivially-yes"
    certificate: dict = field(default_factory=dict)


def _reindex(g: Digraph, keep: list[int]) -> tuple[Digraph, dict[int, int]]:
    """Induced subgraph on ``keep`` with vertices renumbered to 0..len-1."""
    vmap = {old: new for new, old in enumerate(keep)}
    arcs = [(vmap[u], vmap[v]) for (u, v) in g.arcs if u in vmap and v in vmap]
    return Digraph(len(keep), arcs), vmap


def kernelize_11(g: Digraph, k: int) -> KernelResult:
    """(1,1) kernel: at most 8k^2+12k vertices, C(4k,2)+32k^3+32k^2 arcs.

    A maximal matching larger than 2k certifies "no" (the vertex cover number
    is at most twice the optimum).  Otherwise each matched vertex marks its
    first k+1 in-arc tails and first k+1 out-arc heads; unmarked vertices
    outside the cover are deleted.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    view = UndirectedView(g)
    matching = maximal_matching(view)
    cert: dict = {"matching_size": len(matching), "matching": matching}
    if len(matching) > 2 * k:
        cert.update(n_out=g.n, m_out=g.m)
        return KernelResult(Instance(g, 1, 1, budget=k), k, "rejected-no", cert)
    s_cover = sorted({v for e in matching for v in e})
    marked = set(s_cover)
    for v in s_cover:
        tails = sorted(g.arcs[i][0] for i in g.in_adj[v])
        heads = sorted(g.arcs[i][1] for i in g.out_adj[v])
        marked.update(tails[: k + 1])
        marked.update(heads[: k + 1])
    keep = [v for v in range(g.n) if v in marked]
    reduced_g, vmap = _reindex(g, keep)
    verdict = "trivially-yes" if reduced_g.m == 0 else "reduced"
    if verdict == "reduced":
        assert reduced_g.n <= 8 * k * k + 12 * k
        assert reduced_g.m <= (4 * k) * (4 * k - 1) // 2 + 32 * k**3 + 32 * k**2
    cert.update(
        n_out=reduced_g.n,
        m_out=reduced_g.m,
        vertex_map={old: new for old, new in vmap.items()},
        cover=s_cover,
    )
    return KernelResult(Instance(reduced_g, 1, 1, budget=k), k, verdict, cert)


def kernelize_01(g: Digraph, k: int) -> KernelResult:
    """(0,1) kernel: at most 3k+1 vertices.

    Source-to-sink arcs are dominated only by themselves and dominate nothing
    else, so each is deleted against the budget.  Then: reject if a maximal
    matching exceeds k or if k+1 vertices outside the cover still have
    out-arcs; finally all sinks outside the cover collapse into one fresh
    vertex.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    arcs = list(g.arcs)
    k_out = k
    deleted_arcs: list[tuple[int, int]] = []
    while True:
        in_deg = [0] * g.n
        out_deg = [0] * g.n
        for (u, v) in arcs:
            out_deg[u] += 1
            in_deg[v] += 1
        hit = None
        for (u, v) in arcs:
            if in_deg[u] == 0 and out_deg[v] == 0:
                hit = (u, v)
                break
        if hit is None:
            break
        arcs.remove(hit)
        deleted_arcs.append(hit)
        k_out -= 1
        if k_out < 0:
            cert = {"deleted_source_sink_arcs": deleted_arcs, "n_out": g.n, "m_out": len(arcs)}
            return KernelResult(Instance(g, 0, 1, budget=k), k_out, "rejected-no", cert)
    work = Digraph(g.n, arcs)
    cert = {"deleted_source_sink_arcs": deleted_arcs}
    view = UndirectedView(work)
    matching = maximal_matching(view)
    cert["matching_size"] = len(matching)
    cert["matching"] = matching
    if len(matching) > k_out:
        cert.update(n_out=work.n, m_out=work.m)
        return KernelResult(Instance(work, 0, 1, budget=k_out), k_out, "rejected-no", cert)
    s_cover = sorted({v for e in matching for v in e})
    cert["cover"] = s_cover
    outside = [v for v in range(work.n) if v not in set(s_cover)]
    non_sinks_outside = [v for v in outside if work.out_adj[v]]
    if len(non_sinks_outside) >= k_out + 1:
        cert.update(n_out=work.n, m_out=work.m)
        return KernelResult(Instance(work, 0, 1, budget=k_out), k_out, "rejected-no", cert)
    sinks_outside = [v for v in outside if not work.out_adj[v]]
    keep = [v for v in range(work.n) if v in set(s_cover) or v in set(non_sinks_outside)]
    vmap = {old: new for new, old in enumerate(keep)}
    new_arcs = [
        (vmap[u], vmap[v]) for (u, v) in work.arcs if u in vmap and v in vmap
    ]
    sink_vertex = None
    redirected: dict[int, int] = {}
    if sinks_outside:
        sink_vertex = len(keep)
        sink_set = set(sinks_outside)
        for v in s_cover:
            targets = sorted(
                work.arcs[i][1] for i in work.out_adj[v] if work.arcs[i][1] in sink_set
            )
            if targets:
                new_arcs.append((vmap[v], sink_vertex))
                redirected[v] = targets[0]
    n_new = len(keep) + (1 if sink_vertex is not None else 0)
    reduced_g = Digraph(n_new, new_arcs)
    verdict = "trivially-yes" if reduced_g.m == 0 else "reduced"
    if verdict == "reduced":
        assert reduced_g.n <= 3 * k_out + 1
    cert.update(
        n_out=reduced_g.n,
        m_out=reduced_g.m,
        vertex_map=vmap,
        sink_vertex=sink_vertex,
        replaced_sinks=sinks_outside,
        redirected=redirected,
    )
    return KernelResult(Instance(reduced_g, 0, 1, budget=k_out), k_out, verdict, cert)


def lift_solution_01(result: KernelResult, arcs: frozenset[int], original: Digraph) -> frozenset[int]:
    """Map a reduced-instance solution back to original arc indices.

    Arcs into the merged sink vertex become the lowest-index original arc to
    a deleted sink; deleted source-to-sink arcs are re-added (they were paid
    for by the budget drops).
    """
    vmap = result.certificate.get("vertex_map", {})
    inv = {new: old for old, new in vmap.items()}
    sink_vertex = result.certificate.get("sink_vertex")
    redirected = result.certificate.get("redirected", {})
    out: set[int] = set()
    rg = result.reduced.g
    for idx in arcs:
        u, v = rg.arcs[idx]
        if sink_vertex is not None and v == sink_vertex:
            ou = inv[u]
            orig_idx = original.arc_index(ou, redirected[ou])
        else:
            orig_idx = original.arc_index(inv[u], inv[v])
        if orig_idx is None:
            raise InputError("reduced arc has no preimage in the original graph")
        out.add(orig_idx)
    for (u, v) in result.certificate.get("deleted_source_sink_arcs", []):
        idx = original.arc_index(u, v)
        if idx is not None:
            out.add(idx)
    return frozenset(out)
