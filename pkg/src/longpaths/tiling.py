"""Square tilings of the unit square, dense-square crossings, the backbone and its events.

Grid conventions: square ``(a, b)`` is column ``a`` (x) and row ``b`` (y),
covering ``[-1/2 + a s, -1/2 + (a+1) s) x [-1/2 + b s, -1/2 + (b+1) s)``;
points on the top/right edge of the unit square go to the last row/column.
Square ids are ``a * k + b`` (C order of a ``(k, k)`` array indexed
``[a, b]``). Row 0 is the bottom row.

Plus adjacency means sharing a side, star adjacency sharing a side or a
corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage

from .graphs import Graph, PointCloud

DENSE_THRESHOLD = 8
DEFAULT_M = 4

PLUS = ndimage.generate_binary_structure(2, 1)
STAR = np.ones((3, 3), dtype=bool)
STAR_STEPS = [(da, db) for da in (-1, 0, 1) for db in (-1, 0, 1) if da or db]


def _strict_ceil(x: float) -> int:
    """Least integer strictly above ``x``; values within 1e-12 (relative) of an integer count as that integer."""
    near = round(x)
    if abs(x - near) <= 1e-12 * max(1.0, abs(x)):
        return int(near) + 1
    return math.floor(x) + 1


def compute_Kn(n: int, r: float) -> int:
    """Band-height multiplier: least integer strictly larger than ``log n / (n r^2)``."""
    if n < 1 or not r > 0:
        raise ValueError("need n >= 1 and r > 0")
    return _strict_ceil(math.log(n) / (n * r * r))


def choose_epsilon1(r: float) -> tuple[float, int]:
    """Side ``s = 1/k`` with ``k`` the least integer in ``(4/r, 5/r)``.

    Then ``s / r`` lies in ``(1/5, 1/4)``, so points in corner-sharing
    squares are within ``2 sqrt(2) s < r`` of each other.
    """
    if not 0 < r <= 1:
        raise ValueError(f"radius must lie in (0, 1], got {r}")
    k = _strict_ceil(4 / r)
    upper = 5 / r
    if not k < upper - 1e-12 * upper:
        raise ValueError(f"no integer strictly between 4/r = {4 / r:.6g} and 5/r = {upper:.6g}")
    return 1.0 / k, k


def choose_tn(n: int, omega: float) -> tuple[float, int, float]:
    """Side ``t = 1/k`` with ``8 n t^2 = log n + 7 log log n + omega - delta``, ``delta`` in (1, 2).

    Returns ``(t, k, delta)`` for the least admissible ``k``.
    """
    if n < 3:
        raise ValueError("need n >= 3 so that log log n is defined")
    target = math.log(n) + 7 * math.log(math.log(n)) + omega
    if target <= 2:
        raise ValueError(f"log n + 7 log log n + omega = {target:.4g} leaves no room for delta in (1, 2)")
    k_lo = math.sqrt(8 * n / (target - 1))
    k_hi = math.sqrt(8 * n / (target - 2))
    k = math.floor(k_lo) + 1
    delta = target - 8 * n / (k * k)
    if not (k < k_hi and 1 < delta < 2):
        raise ValueError(
            f"no integer 1/t in ({k_lo:.4f}, {k_hi:.4f}) for n={n}, omega={omega}: "
            "the side-length interval for delta in (1, 2) contains no reciprocal integer"
        )
    return 1.0 / k, k, delta


def side_for_radius(r: float) -> tuple[float, int]:
    """Largest side ``1/k`` (``k >= 2``) with ``2 sqrt(2) / k < r``."""
    if not r > 0:
        raise ValueError("radius must be positive")
    k = max(2, _strict_ceil(2 * math.sqrt(2) / r))
    return 1.0 / k, k


@dataclass(frozen=True, eq=False)
class Tiling:
    k: int
    counts: np.ndarray = field(repr=False)
    square_of: np.ndarray = field(repr=False)
    _members: tuple = field(repr=False)

    @property
    def s(self) -> float:
        return 1.0 / self.k

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def dense(self) -> np.ndarray:
        return self.counts >= DENSE_THRESHOLD

    def vertices(self, sq) -> np.ndarray:
        a, b = sq
        return self._members[a * self.k + b]

    def square_id(self, sq) -> int:
        return sq[0] * self.k + sq[1]

    def star_neighbors(self, sq):
        a, b = sq
        for da, db in STAR_STEPS:
            x, y = a + da, b + db
            if 0 <= x < self.k and 0 <= y < self.k:
                yield (x, y)

    @classmethod
    def from_counts(cls, counts) -> "Tiling":
        """Synthetic tiling with the given per-square counts; vertex ids run square by square."""
        counts = np.asarray(counts, dtype=np.int64)
        k = counts.shape[0]
        if counts.shape != (k, k):
            raise ValueError("counts must be a square array")
        flat = counts.ravel()
        square_of = np.repeat(np.arange(k * k), flat)
        members = tuple(np.split(np.arange(len(square_of)), np.cumsum(flat)[:-1]))
        return cls(k, counts, square_of, members)


def build_tiling(cloud: PointCloud, s: float) -> Tiling:
    k = round(1 / s)
    if k < 1 or not math.isclose(k * s, 1.0, rel_tol=1e-12):
        raise ValueError(f"1/s must be an integer, got 1/s = {1 / s}")
    idx = np.floor((cloud.points + 0.5) * k).astype(np.int64)
    np.clip(idx, 0, k - 1, out=idx)
    square_of = idx[:, 0] * k + idx[:, 1]
    flat = np.bincount(square_of, minlength=k * k)
    order = np.argsort(square_of, kind="stable")
    members = tuple(np.split(order, np.cumsum(flat)[:-1]))
    return Tiling(k, flat.reshape(k, k), square_of, members)


@dataclass(frozen=True)
class Band:
    """Rows ``[start, stop)`` (horizontal) or columns (vertical) of the grid."""

    orientation: str
    start: int
    stop: int
    overlap: bool = False


@dataclass(frozen=True)
class BandSet:
    orientation: str
    height: int
    bands: tuple

    def __iter__(self):
        return iter(self.bands)

    def __len__(self):
        return len(self.bands)


def make_bands(k: int, height: int, orientation: str) -> BandSet:
    """Cut ``k`` rows (or columns) into bands of ``height`` from the bottom (left).

    When ``height`` does not divide ``k`` the last band is shifted to end at
    the top edge and overlaps its predecessor. A height beyond ``k`` gives a
    single band covering the grid.
    """
    if orientation not in ("horizontal", "vertical"):
        raise ValueError(f"bad orientation {orientation!r}")
    if height < 1:
        raise ValueError("band height must be >= 1")
    h = min(height, k)
    bands = [Band(orientation, a, a + h) for a in range(0, k - h + 1, h)]
    if bands[-1].stop < k:
        bands.append(Band(orientation, k - h, k, overlap=True))
    return BandSet(orientation, h, tuple(bands))


def band_pair(k: int, height: int) -> tuple[BandSet, BandSet]:
    return make_bands(k, height, "horizontal"), make_bands(k, height, "vertical")


def _band_grid(dense: np.ndarray, band: Band) -> np.ndarray:
    # local grid [along, across]: crossing runs from along=0 to along=k-1
    if band.orientation == "horizontal":
        return dense[:, band.start:band.stop]
    return dense[band.start:band.stop, :].T


def _to_global(band: Band, along: int, across: int) -> tuple[int, int]:
    if band.orientation == "horizontal":
        return (along, band.start + across)
    return (band.start + across, along)


# lowest-first move order in local coordinates: down, forward, up, back
_MOVES = ((0, -1), (1, 0), (0, 1), (-1, 0))


def find_crossing(t: Tiling, band: Band) -> Optional[tuple]:
    """Dense plus-connected crossing of ``band`` or ``None``.

    Horizontal bands are crossed left to right, vertical bands bottom to
    top. Depth-first search from the near-side squares in order of
    increasing offset, trying moves down/left-hugging first, so the
    crossing keeps as low (left) as the search allows. The squares are
    returned in order as global ``(a, b)`` pairs.
    """
    grid = _band_grid(t.dense, band)
    length, width = grid.shape
    seen = np.zeros_like(grid, dtype=bool)
    for b0 in range(width):
        if not grid[0, b0] or seen[0, b0]:
            continue
        seen[0, b0] = True
        stack = [((0, b0), 0)]
        while stack:
            (a, b), i = stack[-1]
            if a == length - 1:
                return tuple(_to_global(band, x, y) for (x, y), _ in stack)
            if i == len(_MOVES):
                stack.pop()
                continue
            stack[-1] = ((a, b), i + 1)
            da, db = _MOVES[i]
            x, y = a + da, b + db
            if 0 <= x < length and 0 <= y < width and grid[x, y] and not seen[x, y]:
                seen[x, y] = True
                stack.append(((x, y), 0))
    return None


def star_components(dense: np.ndarray) -> tuple[np.ndarray, int]:
    """Labels (0 = sparse) of star-connected dense components."""
    return ndimage.label(dense, structure=STAR)


@dataclass(frozen=True)
class Backbone:
    """Dense squares carrying the long cycle.

    ``crossings`` holds ``(band, squares)`` for every band that was crossed;
    ``crossing_squares`` is their union and ``squares`` the star-connected
    dense component(s) containing it. When some band had no crossing,
    ``fallback`` is set and ``squares`` is the largest star-connected dense
    component instead (ties go to the component holding the lowest square
    id), possibly empty.
    """

    squares: frozenset
    crossing_squares: frozenset
    crossings: tuple
    connected: bool
    fallback: bool

    @property
    def F_n(self) -> bool:
        return not self.fallback


def _is_star_connected(squares) -> bool:
    squares = set(squares)
    if not squares:
        return False
    start = min(squares)
    seen = {start}
    todo = [start]
    while todo:
        a, b = todo.pop()
        for da, db in STAR_STEPS:
            q = (a + da, b + db)
            if q in squares and q not in seen:
                seen.add(q)
                todo.append(q)
    return len(seen) == len(squares)


def _label_squares(labels: np.ndarray, ids) -> frozenset:
    a, b = np.nonzero(np.isin(labels, list(ids)))
    return frozenset(zip(a.tolist(), b.tolist()))


def build_backbone(t: Tiling, bands: tuple[BandSet, BandSet]) -> Backbone:
    """Cross every band; on success the backbone is the dense component of the crossings."""
    crossings = []
    ok = True
    for band_set in bands:
        for band in band_set:
            c = find_crossing(t, band)
            if c is None:
                ok = False
            else:
                crossings.append((band, c))
    labels, count = star_components(t.dense)
    if ok and crossings:
        cross = frozenset(sq for _, c in crossings for sq in c)
        ids = {int(labels[sq]) for sq in cross}
        squares = _label_squares(labels, ids)
        return Backbone(squares, cross, tuple(crossings), len(ids) == 1 and _is_star_connected(cross), False)
    if count == 0:
        return Backbone(frozenset(), frozenset(), tuple(crossings), False, True)
    sizes = np.bincount(labels.ravel(), minlength=count + 1)[1:]
    # np.argmax takes the first maximum, and labels are numbered in C order of first square
    best = int(np.argmax(sizes)) + 1
    squares = _label_squares(labels, {best})
    return Backbone(squares, frozenset(), tuple(crossings), True, True)


@dataclass(frozen=True)
class EventReport:
    F_n: bool
    I_n: bool
    J_n: bool
    H_n: bool
    X_O: int
    backbone_squares: int
    backbone_vertices: int
    component_size: int


def isolated_sparse_squares(t: Tiling) -> list[tuple[int, int]]:
    """Squares all of whose in-grid star neighbours are sparse."""
    d = t.dense.astype(np.int64)
    padded = np.pad(d, 1)
    nbr = sum(padded[1 + da:1 + da + t.k, 1 + db:1 + db + t.k] for da, db in STAR_STEPS)
    a, b = np.nonzero(nbr == 0)
    return list(zip(a.tolist(), b.tolist()))


def detect_events(t: Tiling, b: Optional[Backbone], g: Optional[Graph] = None) -> EventReport:
    """Evaluate the crossing, isolated-component and isolated-square events.

    ``I_n``: a dense square lies outside the backbone component. ``J_n``:
    some square has no dense star neighbour. ``H_n = F_n and not I_n and
    not J_n``. ``X_O`` counts vertices outside the graph component that
    holds the backbone; without ``g`` it falls back to vertices outside
    the backbone squares.
    """
    F = b is not None and b.F_n
    squares = b.squares if b is not None else frozenset()
    n_dense = int(t.dense.sum())
    I = bool(squares) and n_dense > len(squares)
    J = bool(isolated_sparse_squares(t))
    verts = np.concatenate([t.vertices(sq) for sq in squares]) if squares else np.empty(0, np.int64)
    if g is not None and len(verts):
        labels = g.components()
        comp = int(np.isin(labels, np.unique(labels[verts])).sum())
    else:
        comp = len(verts)
    return EventReport(F, I, J, F and not I and not J, t.n - comp, len(squares), len(verts), comp)


def check_star_edges(t: Tiling, squares, g: Graph) -> bool:
    """Every vertex pair in the same or star-adjacent ``squares`` is an edge of ``g``."""
    squares = set(squares)
    for sq in squares:
        vs = t.vertices(sq)
        group = [vs] + [t.vertices(q) for q in t.star_neighbors(sq) if q in squares and q > sq]
        others = np.concatenate(group)
        u = np.repeat(vs, len(others))
        v = np.tile(others, len(vs))
        keep = u != v
        if not g.has_edges(u[keep], v[keep]).all():
            return False
    return True


def render_grid(t: Tiling, b: Optional[Backbone] = None) -> str:
    """Text dump: ``D``/``S`` per square, ``#`` on crossing squares, top row first."""
    rows = []
    cross = b.crossing_squares if b is not None else frozenset()
    for y in range(t.k - 1, -1, -1):
        rows.append("".join(
            "#" if (x, y) in cross else ("D" if t.dense[x, y] else "S") for x in range(t.k)
        ))
    return "\n".join(rows) + "\n"
