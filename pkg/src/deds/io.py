"""Text formats: graphs (with optional-arc marks) and solutions.

Graph format: first non-comment line ``n m``, then m lines ``u v`` with
0-based endpoints; ``u v opt`` marks the arc as optional (exempt from
domination).  Lines starting with ``#`` are comments.

Solution format: one line ``k <size>`` followed by ``<size>`` arc lines
``u v``.
"""

from __future__ import annotations

from .errors import GraphFormatError, MalformedSolutionError
from .graph import Digraph

__all__ = [
    "parse_digraph",
    "format_digraph",
    "load_digraph",
    "save_digraph",
    "parse_solution",
    "format_solution",
]


def _content_lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def parse_digraph(text: str) -> tuple[Digraph, frozenset[int]]:
    """Parse the graph format; returns the digraph and its optional-arc indices."""
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty graph file")
    header = lines[0]
    if len(header) != 2:
        raise GraphFormatError(f"expected header 'n m', got {' '.join(header)!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header: {exc}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header promises {m} arcs, file has {len(lines) - 1}")
    arcs: list[tuple[int, int]] = []
    optional: set[int] = set()
    for i, parts in enumerate(lines[1:]):
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "opt"):
            raise GraphFormatError(f"bad arc line: {' '.join(parts)!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad arc line: {exc}") from exc
        arcs.append((u, v))
        if len(parts) == 3:
            optional.add(i)
    try:
        g = Digraph(n, arcs)
    except Exception as exc:
        raise GraphFormatError(str(exc)) from exc
    return g, frozenset(optional)


def format_digraph(g: Digraph, optional_mask: frozenset[int] = frozenset()) -> str:
    lines = [f"{g.n} {g.m}"]
    for idx, (u, v) in enumerate(g.arcs):
        lines.append(f"{u} {v} opt" if idx in optional_mask else f"{u} {v}")
    return "\n".join(lines) + "\n"


def load_digraph(path: str) -> tuple[Digraph, frozenset[int]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_digraph(fh.read())


def save_digraph(path: str, g: Digraph, optional_mask: frozenset[int] = frozenset()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_digraph(g, optional_mask))


def parse_solution(text: str, g: Digraph) -> frozenset[int]:
    """Parse a solution file into arc indices of ``g``."""
    lines = _content_lines(text)
    if not lines or lines[0][0] != "k" or len(lines[0]) != 2:
        raise MalformedSolutionError("expected first line 'k <size>'")
    try:
        size = int(lines[0][1])
    except ValueError as exc:
        raise MalformedSolutionError(f"bad size: {exc}") from exc
    if len(lines) - 1 != size:
        raise MalformedSolutionError(
            f"size line promises {size} arcs, file has {len(lines) - 1}"
        )
    arcs: set[int] = set()
    for parts in lines[1:]:
        if len(parts) != 2:
            raise MalformedSolutionError(f"bad arc line: {' '.join(parts)!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedSolutionError(f"bad arc line: {exc}") from exc
        idx = g.arc_index(u, v)
        if idx is None:
            raise MalformedSolutionError(f"arc ({u},{v}) not in the graph")
        arcs.add(idx)
    return frozenset(arcs)


def format_solution(g: Digraph, arcs: frozenset[int]) -> str:
    lines = [f"k {len(arcs)}"]
    for idx in sorted(arcs):
        u, v = g.arcs[idx]
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"
