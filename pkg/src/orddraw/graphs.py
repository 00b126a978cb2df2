"""Undirected simple graphs and the two-coloring primitive.

Vertices are 0..n-1.  The coloring routine is shared by the incompatibility
graph check and by all bipartization strategies, and reports an odd closed
walk whenever two-coloring fails.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np


class SimpleGraph:
    """Immutable undirected graph without loops or parallel edges."""

    __slots__ = ("n", "edges", "_adj", "_nbrs")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        self.n = n
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.add((u, v) if u < v else (v, u))
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        adj = np.zeros((n, n), dtype=bool)
        for u, v in self.edges:
            adj[u, v] = adj[v, u] = True
        adj.setflags(write=False)
        self._adj = adj
        self._nbrs = tuple(tuple(int(w) for w in np.flatnonzero(adj[i])) for i in range(n))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self._nbrs[u]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    def __repr__(self) -> str:
        return f"SimpleGraph({self.n} vertices, {self.m} edges)"


def _tree_cycle(parent: list[int], depth: list[int], u: int, v: int) -> tuple[int, ...]:
    """Closed walk through BFS-tree paths of u and v plus the edge (u, v)."""
    pu, pv = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        pu.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        pv.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        pu.append(a)
        pv.append(b)
    # pu ends at the common ancestor; pv's copy of it is dropped
    return tuple(pu + pv[-2::-1])


def two_coloring(g: SimpleGraph, removed: Iterable[int] = ()) \
        -> tuple[list[int | None] | None, tuple[int, ...] | None]:
    """BFS 2-coloring of g minus `removed`.

    Returns (colors, None) on success, where colors[v] is 0 or 1 and None
    for removed vertices; or (None, cycle) where cycle is an odd closed
    walk (vertex tuple, no repeated endpoint) witnessing non-bipartiteness.
    """
    gone = set(removed)
    color: list[int | None] = [None] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for start in range(g.n):
        if start in gone or color[start] is not None:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w in gone:
                    continue
                if color[w] is None:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return None, _tree_cycle(parent, depth, u, w)
    return color, None


def is_bipartite_without(g: SimpleGraph, removed: Iterable[int] = ()) -> bool:
    return two_coloring(g, removed)[1] is None


def forced_coloring(g: SimpleGraph, removed: Iterable[int] = ()) \
        -> tuple[list[int | None], list[int], list[int]]:
    """BFS coloring that pushes past conflicts.

    Every kept vertex receives a 0/1 color from its BFS tree even when the
    graph is not bipartite; monochromatic edges are left for the caller.
    Returns (colors, parent, depth); removed vertices stay None.
    """
    gone = set(removed)
    color: list[int | None] = [None] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for start in range(g.n):
        if start in gone or color[start] is not None:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w in gone or color[w] is not None:
                    continue
                color[w] = 1 - color[u]
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
    return color, parent, depth


def odd_cycle_census(g: SimpleGraph, removed: Iterable[int] = ()) \
        -> dict[int, int] | None:
    """Count, per vertex, the BFS odd-cycle witnesses it lies on.

    Every monochromatic edge under the forced coloring contributes one
    BFS-tree cycle.  Returns None when the remainder is bipartite.
    """
    gone = set(removed)
    color, parent, depth = forced_coloring(g, gone)
    counts: dict[int, int] = {}
    for u, v in g.edges:
        if u in gone or v in gone or color[u] != color[v]:
            continue
        for x in _tree_cycle(parent, depth, u, v):
            counts[x] = counts.get(x, 0) + 1
    return counts or None


def conflict_edge_count(g: SimpleGraph, labels: Sequence[int | None]) -> int:
    """Edges whose endpoints carry the same 0/1 label (None = removed)."""
    bad = 0
    for u, v in g.edges:
        if labels[u] is not None and labels[u] == labels[v]:
            bad += 1
    return bad
