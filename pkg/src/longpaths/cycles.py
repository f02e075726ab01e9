"""Build long and Hamiltonian cycles on a tiled random geometric graph.

Each dense backbone square contributes a cycle through its own vertices
(ascending ids). Squares are merged one at a time: the newcomer's cycle is
opened into a path, an edge ``(u, v)`` of a neighbouring square's cycle that
is still on the big cycle is removed, and the path is spliced in between
``u`` and ``v``. Sparse squares are then spliced in the same way as paths.
Correctness relies on every vertex pair in star-adjacent squares being
joined, which the tiling side guarantees.

Every splice costs a square one of its own in-square edges. A square with
at least 8 vertices has at least 8 such edges and at most 8 star
neighbours, each of which takes at most one, so the supply never runs out
when every backbone square is dense. Running out anyway is reported as a
``ConstructionError`` naming the square.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graphs import Graph, PointCloud
from .paths import CycleWalk
from .tiling import Backbone, Tiling, STAR_STEPS


class ConstructionError(RuntimeError):
    def __init__(self, message: str, square=None):
        super().__init__(message)
        self.square = square


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    where: Optional[int] = None

    def __bool__(self):
        return self.ok


def validate_cycle(walk: CycleWalk, g: Graph, cloud: Optional[PointCloud] = None) -> ValidationReport:
    """Check distinctness, adjacency of every hop and, given points, every hop length ``< r``."""
    vs = np.asarray(walk.vertices, dtype=np.int64)
    if len(vs) == 0:
        return ValidationReport(False, "empty")
    if vs.min() < 0 or vs.max() >= g.n:
        return ValidationReport(False, "range", int(np.argmax((vs < 0) | (vs >= g.n))))
    _, first, counts = np.unique(vs, return_index=True, return_counts=True)
    if (counts > 1).any():
        dup = vs[first[counts > 1]]
        return ValidationReport(False, "distinctness", int(np.flatnonzero(np.isin(vs, dup))[1]))
    if walk.closed and len(vs) < 3:
        return ValidationReport(False, "length")
    u = vs
    v = np.roll(vs, -1) if walk.closed else vs[1:]
    u = u if walk.closed else vs[:-1]
    bad = np.flatnonzero(~g.has_edges(u, v))
    if len(bad):
        return ValidationReport(False, "adjacency", int(bad[0]))
    if cloud is not None:
        d = np.linalg.norm(cloud.points[u] - cloud.points[v], axis=1)
        bad = np.flatnonzero(~(d < cloud.r))
        if len(bad):
            return ValidationReport(False, "geometry", int(bad[0]))
    return ValidationReport(True)


def square_cycle(vertices) -> CycleWalk:
    vs = sorted(int(v) for v in vertices)
    if len(vs) < 3:
        raise ValueError(f"a square cycle needs at least 3 vertices, got {len(vs)}")
    return CycleWalk(tuple(vs), closed=True)


class _Ring:
    """Cycle stored as a successor map."""

    def __init__(self, vertices):
        vs = list(vertices)
        self.succ = dict(zip(vs, vs[1:] + vs[:1]))

    def splice(self, u: int, v: int, path) -> None:
        """Replace ring edge ``{u, v}`` by ``u -> path[0] ... path[-1] -> v``."""
        if self.succ.get(u) != v:
            if self.succ.get(v) != u:
                raise ConstructionError(f"({u}, {v}) is not an edge of the current cycle")
            u, v = v, u
            path = path[::-1]
        prev = u
        for w in path:
            self.succ[prev] = w
            prev = w
        self.succ[prev] = v

    def walk(self) -> CycleWalk:
        start = min(self.succ)
        out = [start]
        x = self.succ[start]
        while x != start:
            out.append(x)
            x = self.succ[x]
        return CycleWalk(tuple(out), closed=True)

    def __len__(self):
        return len(self.succ)


@dataclass
class MergeState:
    """Running cycle plus, per square, the in-square edges still on it."""

    ring: _Ring
    square_of: dict
    ledger: dict = field(default_factory=dict)
    removed: dict = field(default_factory=dict)
    processed: list = field(default_factory=list)
    log: list = field(default_factory=list)

    def cycle(self) -> CycleWalk:
        return self.ring.walk()

    def take_edge(self, sq) -> tuple[int, int]:
        edges = self.ledger.get(sq)
        if not edges:
            raise ConstructionError(f"square {sq} has no in-square edge left on the cycle", sq)
        e = min(edges)
        edges.discard(e)
        self.removed[sq] = self.removed.get(sq, 0) + 1
        return e

    def attach(self, host, path: list[int], new_sq=None) -> None:
        u, v = self.take_edge(host)
        self.ring.splice(u, v, path)
        self.log.append((host, new_sq, (u, v)))


def _path_edges(path):
    return {(min(a, b), max(a, b)) for a, b in zip(path, path[1:])}


def _star_neighbors(sq, k):
    a, b = sq
    for da, db in STAR_STEPS:
        x, y = a + da, b + db
        if 0 <= x < k and 0 <= y < k:
            yield (x, y)


def _bfs_order(squares: set, k: int) -> list:
    start = min(squares)
    order, seen = [start], {start}
    queue = deque([start])
    while queue:
        sq = queue.popleft()
        for q in sorted(_star_neighbors(sq, k)):
            if q in squares and q not in seen:
                seen.add(q)
                order.append(q)
                queue.append(q)
    return order


def _check_step(state: MergeState, g: Graph, t: Tiling) -> None:
    report = validate_cycle(state.cycle(), g)
    if not report:
        raise ConstructionError(f"intermediate cycle invalid: {report.reason} at {report.where}")
    done = set(state.processed)
    for sq, count in state.removed.items():
        limit = sum(1 for q in _star_neighbors(sq, t.k) if q in done)
        if count > limit:
            raise ConstructionError(f"square {sq} lost {count} edges with {limit} attached neighbours", sq)


def merge_backbone_state(t: Tiling, b: Backbone, g: Graph, check: bool = False) -> MergeState:
    squares = set(b.squares)
    if not squares:
        raise ValueError("backbone is empty")
    sparse = [sq for sq in squares if not t.dense[sq]]
    if sparse:
        raise ValueError(f"backbone square {min(sparse)} is not dense")
    order = _bfs_order(squares, t.k)
    if len(order) != len(squares):
        raise ValueError("backbone squares are not star-connected")

    first = order[0]
    eta = square_cycle(t.vertices(first)).vertices
    state = MergeState(_Ring(eta), {})
    state.ledger[first] = {(min(a, b), max(a, b)) for a, b in CycleWalk(eta, True).hops()}
    state.processed.append(first)
    for sq in order[1:]:
        path = list(square_cycle(t.vertices(sq)).vertices)  # opened at the (max, min) edge
        done = set(state.processed)
        hosts = [q for q in sorted(_star_neighbors(sq, t.k)) if q in done and state.ledger.get(q)]
        if not hosts:
            raise ConstructionError(f"no processed neighbour of square {sq} has an edge to give", sq)
        state.attach(hosts[0], path, sq)
        state.removed[sq] = state.removed.get(sq, 0) + 1
        state.ledger[sq] = _path_edges(path)
        state.processed.append(sq)
        if check:
            _check_step(state, g, t)
    return state


def merge_backbone_cycles(t: Tiling, b: Backbone, g: Graph, check: bool = False) -> CycleWalk:
    """One cycle through every vertex of every backbone square.

    Squares join in breadth-first order (star adjacency, from the lowest
    square); each attaches to its lowest processed neighbour that still has
    an in-square edge on the cycle. ``check`` validates after every step.
    """
    return merge_backbone_state(t, b, g, check).cycle()


def extend_with_sparse(tau: CycleWalk, t: Tiling, b: Backbone, g: Graph, check: bool = False) -> CycleWalk:
    """Splice every nonempty square outside the backbone into ``tau``.

    Such squares are taken in ascending square id; each one's vertices
    (ascending ids) form a path that replaces an in-square edge of its
    lowest backbone star neighbour still holding one. A square with no
    backbone neighbour, or whose neighbours have no edge left, raises
    ``ConstructionError`` naming it.
    """
    squares = set(b.squares)
    ring = _Ring(tau.vertices)
    on_cycle = set(tau.vertices)
    expected = {int(v) for sq in squares for v in t.vertices(sq)}
    if on_cycle != expected:
        raise ValueError("tau must cover exactly the backbone vertices")
    sq_index = t.square_of
    ledger: dict = {sq: set() for sq in squares}
    for u, v in tau.hops():
        su, sv = int(sq_index[u]), int(sq_index[v])
        if su == sv:
            ledger[divmod(su, t.k)].add((min(u, v), max(u, v)))
    state = MergeState(ring, {}, ledger, processed=sorted(squares))

    for sid in np.flatnonzero(t.counts.ravel()):
        sq = divmod(int(sid), t.k)
        if sq in squares:
            continue
        hosts = [q for q in sorted(_star_neighbors(sq, t.k)) if q in squares]
        if not hosts:
            raise ConstructionError(f"square {sq} has no dense star neighbour in the backbone", sq)
        hosts = [q for q in hosts if state.ledger[q]]
        if not hosts:
            raise ConstructionError(f"backbone neighbours of square {sq} have no edge left", sq)
        path = sorted(int(v) for v in t.vertices(sq))
        state.attach(hosts[0], path, sq)
        state.processed.append(sq)
        if check:
            _check_step(state, g, t)
    return state.cycle()
