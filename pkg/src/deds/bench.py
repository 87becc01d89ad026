"""Named, seed-pinned benchmark suites with CSV + figure reports.

Every suite is a fixed recipe of generator calls, so repeated runs produce
byte-identical delimited output; report figures are rendered alongside via
matplotlib with pinned metadata.
"""

from __future__ import annotations

import csv
import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .approx import approx_01, approx_11
from .domination import Instance
from .fpt import solve_01, solve_11
from .gen import gen_digraph, gen_tournament
from .graph import greedy_dominating_set
from .oracle import exact_min_deds
from .tournament import classify, solve_tournament
from .twdp import heuristic_td, make_nice, solve_twdp

__all__ = ["SUITES", "run_suite"]


def _suite_random_small():
    rows = []
    for seed in range(12):
        g = gen_digraph(7, 0.25, seed=1000 + seed)
        for (p, q) in [(0, 1), (1, 1)]:
            inst = Instance(g, p, q)
            opt = exact_min_deds(inst, g.m)
            rows.append(
                dict(instance=f"digraph-7-{seed}", n=g.n, m=g.m, p=p, q=q,
                     engine="oracle", size=opt.size)
            )
            fpt = solve_01(g, opt.size) if (p, q) == (0, 1) else solve_11(g, opt.size)
            rows.append(
                dict(instance=f"digraph-7-{seed}", n=g.n, m=g.m, p=p, q=q,
                     engine=f"fpt{p}{q}", size=fpt.size)
            )
            apx = approx_01(g) if (p, q) == (0, 1) else approx_11(g)
            rows.append(
                dict(instance=f"digraph-7-{seed}", n=g.n, m=g.m, p=p, q=q,
                     engine=apx.engine, size=apx.size)
            )
            ntd = make_nice(heuristic_td(g), g)
            size, _ = solve_twdp(g, p, q, ntd)
            rows.append(
                dict(instance=f"digraph-7-{seed}", n=g.n, m=g.m, p=p, q=q,
                     engine="twdp", size=size)
            )
    return rows


def _suite_tournaments():
    rows = []
    for n in range(3, 8):
        for seed in range(10):
            t = gen_tournament(n, seed=100 * n + seed)
            for (p, q) in [(0, 1), (0, 2), (0, 3), (3, 3)]:
                sol = solve_tournament(t, p, q)
                rows.append(
                    dict(instance=f"tournament-{n}-{seed}", n=n, m=t.m, p=p, q=q,
                         engine=classify(t, p, q), size=sol.size)
                )
    for n in (16, 64, 256, 1024):
        t = gen_tournament(n, seed=n)
        rows.append(
            dict(instance=f"tournament-{n}-0", n=n, m=t.m, p=-1, q=-1,
                 engine="greedy-ds", size=len(greedy_dominating_set(t)))
        )
    return rows


SUITES = {
    "random-small": _suite_random_small,
    "tournaments": _suite_tournaments,
}


def _figure(rows: list[dict], out_png: str) -> None:
    engines = sorted({r["engine"] for r in rows})
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for eng in engines:
        pts = [(i, r["size"]) for i, r in enumerate(rows) if r["engine"] == eng]
        if pts:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o",
                    linestyle="", markersize=3, label=eng)
    ax.set_xlabel("run index")
    ax.set_ylabel("solution size")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(os.path.splitext(os.path.basename(out_png))[0])
    fig.tight_layout()
    fig.savefig(out_png, dpi=120, metadata={"Software": "deds-bench"})
    plt.close(fig)


def run_suite(name: str, out_dir: str) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; have {sorted(SUITES)}")
    rows = SUITES[name]()
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    png_path = os.path.join(out_dir, f"{name}.png")
    _figure(rows, png_path)
    summary = {
        "suite": name,
        "rows": len(rows),
        "csv": csv_path,
        "figure": png_path,
        "engines": sorted({r["engine"] for r in rows}),
    }
    with open(os.path.join(out_dir, f"{name}.json"), "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    return summary
