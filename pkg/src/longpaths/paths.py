"""Longest simple paths: an exact subset DP for small graphs and a rotation-extension heuristic."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graphs import Graph
from .rng import make_rng

EXACT_MAX_N = 24


@dataclass(frozen=True)
class CycleWalk:
    """An ordered vertex sequence; a cycle when ``closed`` (last vertex joins the first)."""

    vertices: tuple
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self):
        return len(self.vertices)

    def hops(self) -> list[tuple[int, int]]:
        vs = self.vertices
        pairs = list(zip(vs, vs[1:]))
        if self.closed and len(vs) > 1:
            pairs.append((vs[-1], vs[0]))
        return pairs


@lru_cache(maxsize=4)
def _masks_by_size(n: int) -> tuple[np.ndarray, ...]:
    masks = np.arange(1 << n, dtype=np.uint32)
    size = np.bitwise_count(masks)
    order = np.argsort(size, kind="stable")
    bounds = np.searchsorted(size[order], np.arange(n + 2))
    return tuple(masks[order[bounds[k]:bounds[k + 1]]] for k in range(n + 1))


def _end_table(n: int, adj: np.ndarray) -> np.ndarray:
    # ends[S] = bitmask of vertices v such that some simple path covering exactly S ends at v
    ends = np.zeros(1 << n, dtype=np.uint32)
    bits = (np.uint32(1) << np.arange(n, dtype=np.uint32)).astype(np.uint32)
    ends[bits] = bits
    levels = _masks_by_size(n)
    for k in range(1, n):
        masks = levels[k]
        e = ends[masks]
        live = e != 0
        masks, e = masks[live], e[live]
        if not len(masks):
            break
        for u in range(n):
            ok = ((masks & bits[u]) == 0) & ((e & adj[u]) != 0)
            tgt = masks[ok] | bits[u]
            ends[tgt] |= bits[u]
    return ends


def longest_path_exact(g: Graph) -> CycleWalk:
    """Maximum-vertex simple path, lexicographically smallest among the longest.

    Subset DP over ``2^n`` vertex sets, so ``n`` is capped at 24.
    """
    n = g.n
    if n > EXACT_MAX_N:
        raise ValueError(f"exact solver handles n <= {EXACT_MAX_N}, got n={n}; "
                         "use longest_path_rotation for larger graphs")
    adj = np.array(g.adjacency_bitmasks(), dtype=np.uint32)
    ends = _end_table(n, adj)
    levels = _masks_by_size(n)
    length = max(k for k in range(1, n + 1) if (ends[levels[k]] != 0).any())

    path: list[int] = []
    used = 0
    allowed_first = (1 << n) - 1
    for step in range(length):
        masks = levels[length - step]
        masks = masks[(masks & np.uint32(used)) == 0]
        reach = int(np.bitwise_or.reduce(ends[masks])) if len(masks) else 0
        reach &= int(adj[path[-1]]) if path else allowed_first
        w = (reach & -reach).bit_length() - 1
        path.append(w)
        used |= 1 << w
    return CycleWalk(tuple(path))


def longest_path_rotation(g: Graph, budget: int = 10_000, seed: int = 0) -> CycleWalk:
    """Rotation-extension search for a long path.

    Each restart begins at a fresh vertex (random order) and extends
    greedily at both ends, always stepping to the unvisited neighbour with
    the fewest unvisited neighbours (ties at random). When both ends are
    blocked, one end is chosen at random and the path is rotated about a
    uniformly chosen chord from that end, exposing a new endpoint. A
    restart is abandoned after ``4 n`` rotations without growth. Each
    rotation and each restart costs one unit of ``budget``; extension is
    free, so every restart at least finishes its greedy path.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = g.n
    rng = make_rng(seed)
    nbrs = [a.tolist() for a in g.neighbors]
    best: list[int] = []
    spent = 0
    starts = rng.permutation(n).tolist()
    stall_limit = 4 * n

    while spent < budget and len(best) < n:
        start = starts.pop(0)
        path = [start]
        on_path = np.zeros(n, dtype=bool)
        on_path[start] = True
        free = np.array([len(a) for a in nbrs])  # unvisited-neighbour counts
        for w in nbrs[start]:
            free[w] -= 1
        stall = 0

        def extend_tail() -> bool:
            tail = path[-1]
            cands = [w for w in nbrs[tail] if not on_path[w]]
            if not cands:
                return False
            scores = free[cands]
            pick = np.flatnonzero(scores == scores.min())
            w = cands[int(pick[rng.integers(len(pick))])]
            path.append(w)
            on_path[w] = True
            for x in nbrs[w]:
                free[x] -= 1
            return True

        while True:
            # greedy extension is free; only rotations and restarts spend budget
            grew = False
            while extend_tail():
                grew = True
            path.reverse()
            while extend_tail():
                grew = True
            if grew:
                stall = 0
            if len(path) == n or spent >= budget:
                break
            spent += 1
            if rng.random() < 0.5:
                path.reverse()
            tail = path[-1]
            pos = {v: i for i, v in enumerate(path)}
            chords = [pos[w] for w in nbrs[tail] if on_path[w] and pos[w] < len(path) - 2]
            stall += 1
            if not chords or stall > stall_limit:
                break
            i = chords[rng.integers(len(chords))]
            path[i + 1:] = path[i + 1:][::-1]
        if len(path) > len(best):
            best = list(path)
        spent += 1
        if not starts:
            starts = rng.permutation(n).tolist()
    return CycleWalk(tuple(best))


def min_degree_event(g: Graph, exclude: int, t0: float) -> bool:
    """True when every vertex of ``g`` minus ``exclude`` keeps degree >= ``t0`` there."""
    if not 0 <= exclude < g.n:
        raise ValueError(f"vertex {exclude} out of range")
    deg = g.degrees.copy()
    deg[g.neighbors[exclude]] -= 1
    deg = np.delete(deg, exclude)
    return bool((deg >= t0).all())
