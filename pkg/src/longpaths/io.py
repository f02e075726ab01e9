"""Plain-text dumps of graphs, point clouds and cycles, and their readers.

Graph:  ``n m`` then ``m`` lines ``i j`` with ``i < j``.
Points: ``n r`` then ``n`` lines ``x y`` at 17 significant digits, which
        round-trips a float64 exactly.
Cycle:  ``cycle k`` then ``k`` vertex ids, one per line, in cycle order.
"""

from __future__ import annotations

import numpy as np

from .graphs import Graph, PointCloud
from .paths import CycleWalk


def dump_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{i} {j}" for i, j in g.edges.tolist()]
    return "\n".join(lines) + "\n"


def load_graph(text: str) -> Graph:
    rows = text.split("\n")
    n, m = (int(x) for x in rows[0].split())
    edges = np.array([[int(x) for x in row.split()] for row in rows[1:1 + m]], dtype=np.int64).reshape(-1, 2)
    if len(edges) != m:
        raise ValueError(f"expected {m} edges, found {len(edges)}")
    return Graph(n, edges)


def dump_points(cloud: PointCloud) -> str:
    lines = [f"{cloud.n} {cloud.r:.17g}"]
    lines += [f"{x:.17g} {y:.17g}" for x, y in cloud.points.tolist()]
    return "\n".join(lines) + "\n"


def load_points(text: str) -> tuple[np.ndarray, float]:
    rows = text.strip().split("\n")
    head = rows[0].split()
    n, r = int(head[0]), float(head[1])
    pts = np.array([[float(x) for x in row.split()] for row in rows[1:1 + n]]).reshape(-1, 2)
    if len(pts) != n:
        raise ValueError(f"expected {n} points, found {len(pts)}")
    return pts, r


def dump_cycle(walk: CycleWalk) -> str:
    return "\n".join([f"cycle {len(walk)}"] + [str(v) for v in walk.vertices]) + "\n"


def load_cycle(text: str) -> CycleWalk:
    rows = text.strip().split("\n")
    tag, k = rows[0].split()
    if tag != "cycle":
        raise ValueError(f"not a cycle dump: {rows[0]!r}")
    vs = tuple(int(v) for v in rows[1:1 + int(k)])
    if len(vs) != int(k):
        raise ValueError(f"expected {k} vertices, found {len(vs)}")
    return CycleWalk(vs, closed=True)
