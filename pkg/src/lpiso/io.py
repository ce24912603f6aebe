"""Plain-text graph file format.

First line ``n m``, then m lines ``u v w`` with 1-based vertex ids and a real
weight.  Lines starting with ``#`` and blank lines are ignored.  Edges are
stored symmetrically on load; listing the same unordered pair twice is an
error.
"""

from __future__ import annotations

import numpy as np

from .graphs import WeightedGraph

__all__ = ["GraphFormatError", "load_graph", "save_graph", "loads_graph", "dumps_graph"]


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""


def loads_graph(text: str) -> WeightedGraph:
    lines = text.splitlines()
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        rows.append((lineno, s))
    if not rows:
        raise GraphFormatError("empty graph file")

    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError(f"line {lineno}: expected header 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: header fields must be integers") from None
    if n < 1 or m < 0:
        raise GraphFormatError(f"line {lineno}: invalid header n={n} m={m}")
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges but file lists {len(rows) - 1}")

    A = np.zeros((n, n))
    seen: set[tuple[int, int]] = set()
    for lineno, s in rows[1:]:
        parts = s.split()
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v w', got {s!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: malformed edge {s!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex id out of range 1..{n}")
        if not np.isfinite(w):
            raise GraphFormatError(f"line {lineno}: non-finite weight")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        A[u - 1, v - 1] = w
        A[v - 1, u - 1] = w
    return WeightedGraph(A)


def dumps_graph(g: WeightedGraph) -> str:
    edges = []
    for i in range(g.n):
        for j in range(i, g.n):
            w = float(g.adj[i, j])
            if w != 0.0:
                edges.append(f"{i + 1} {j + 1} {w!r}")
    out = [f"{g.n} {len(edges)}"]
    out.extend(edges)
    return "\n".join(out) + "\n"


def load_graph(path) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_graph(fh.read())


def save_graph(g: WeightedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(g))
