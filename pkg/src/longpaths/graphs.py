"""Random graph models: inhomogeneous Erdos-Renyi graphs and random geometric graphs.

Vertices are 0-based. Edges are stored as an ``(m, 2)`` integer array with
``i < j`` in each row and rows sorted lexicographically, so two graphs with
the same edge set compare equal array-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .rng import make_rng


def _ceil(x: float) -> int:
    # ceil that ignores float noise such as 0.3 * 100 * 0.5 = 15.000000000000002
    return math.ceil(round(x, 9))


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            if (e[:, 0] == e[:, 1]).any():
                raise ValueError("self-loops are not allowed")
            if e.min() < 0 or e.max() >= self.n:
                raise ValueError("edge endpoint out of range")
            e = np.sort(e, axis=1)
            # 1-d unique over keys i*n + j: same order as a row-wise unique, much faster
            keys = np.unique(e[:, 0] * self.n + e[:, 1])
            e = np.column_stack(np.divmod(keys, self.n))
        e.setflags(write=False)
        object.__setattr__(self, "edges", e)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, np.array(list(edges), dtype=np.int64).reshape(-1, 2))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        i, j = np.triu_indices(n, 1)
        return cls(n, np.column_stack([i, j]))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _keys(self) -> np.ndarray:
        return self.edges[:, 0] * self.n + self.edges[:, 1]

    def has_edges(self, u, v) -> np.ndarray:
        """Vectorised adjacency test for vertex arrays ``u`` and ``v``."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * self.n + hi
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, max(len(self._keys) - 1, 0))
        found = self._keys[pos] == keys if len(self._keys) else np.zeros(keys.shape, bool)
        return found & (u != v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.has_edges([u], [v])[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    @cached_property
    def neighbors(self) -> list[np.ndarray]:
        """Sorted neighbour arrays, one per vertex."""
        both = np.concatenate([self.edges, self.edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        splits = np.cumsum(self.degrees)[:-1]
        return np.split(both[:, 1], splits)

    def adjacency_bitmasks(self) -> list[int]:
        masks = [0] * self.n
        for i, j in self.edges.tolist():
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def components(self) -> np.ndarray:
        """Connected-component label per vertex."""
        data = np.ones(self.m, dtype=np.int8)
        a = coo_matrix((data, (self.edges[:, 0], self.edges[:, 1])), shape=(self.n, self.n))
        return connected_components(a, directed=False)[1]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))


@dataclass(frozen=True, eq=False)
class EdgeProbModel:
    """Edge probabilities ``p(i, j)`` of an inhomogeneous ER graph.

    ``kind`` is one of ``"homogeneous"`` (every pair has probability
    ``p_n``), ``"weighted-product"`` (``min(1, p_n * w_i * w_j)``) or
    ``"explicit-matrix"`` (a symmetric ``n x n`` matrix; diagonal ignored).
    Use the classmethod constructors rather than the raw initialiser.
    """

    n: int
    p_n: float
    kind: str = "homogeneous"
    weights: Optional[np.ndarray] = field(default=None, repr=False)
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p_n <= 1.0:
            raise ValueError(f"p_n must lie in [0, 1], got {self.p_n}")
        if self.kind == "homogeneous":
            pass
        elif self.kind == "weighted-product":
            w = np.asarray(self.weights, dtype=float)
            if w.shape != (self.n,):
                raise ValueError("need one weight per vertex")
            if not (w > 0).all():
                raise ValueError("weights must be strictly positive")
            object.__setattr__(self, "weights", w)
        elif self.kind == "explicit-matrix":
            p = np.array(self.matrix, dtype=float)
            if p.shape != (self.n, self.n):
                raise ValueError("matrix must be n x n")
            off = ~np.eye(self.n, dtype=bool)
            if not np.array_equal(p[off], p.T[off]):
                raise ValueError("matrix must be symmetric")
            if ((p[off] < 0) | (p[off] > 1) | np.isnan(p[off])).any():
                raise ValueError("probabilities must lie in [0, 1]")
            np.fill_diagonal(p, np.nan)
            object.__setattr__(self, "matrix", p)
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    @classmethod
    def homogeneous(cls, n: int, p: float) -> "EdgeProbModel":
        return cls(n, p)

    @classmethod
    def weighted(cls, p_n: float, weights) -> "EdgeProbModel":
        w = np.asarray(weights, dtype=float)
        return cls(len(w), p_n, "weighted-product", weights=w)

    @classmethod
    def explicit(cls, p_n: float, matrix) -> "EdgeProbModel":
        m = np.asarray(matrix, dtype=float)
        return cls(m.shape[0], p_n, "explicit-matrix", matrix=m)

    def prob_matrix(self) -> np.ndarray:
        """Full ``n x n`` matrix of ``p(i, j)`` with NaN on the diagonal."""
        if self.kind == "homogeneous":
            p = np.full((self.n, self.n), self.p_n)
        elif self.kind == "weighted-product":
            p = np.minimum(1.0, self.p_n * np.outer(self.weights, self.weights))
        else:
            p = self.matrix.copy()
        np.fill_diagonal(p, np.nan)
        return p

    def pair_probs(self) -> np.ndarray:
        """``p(i, j)`` for ``i < j`` in row-major (``np.triu_indices``) order."""
        i, j = np.triu_indices(self.n, 1)
        if self.kind == "homogeneous":
            return np.full(len(i), self.p_n)
        if self.kind == "weighted-product":
            return np.minimum(1.0, self.p_n * self.weights[i] * self.weights[j])
        return self.matrix[i, j]


def sample_er(model: EdgeProbModel, seed: int) -> Graph:
    """Sample an inhomogeneous ER graph.

    One uniform is drawn per pair, pairs visited in ``(i < j)`` row-major
    order; the pair is an edge when the uniform falls below ``p(i, j)``.
    """
    probs = model.pair_probs()
    if ((probs < 0) | (probs > 1) | np.isnan(probs)).any():
        raise ValueError("edge probabilities must lie in [0, 1]")
    rng = make_rng(seed)
    u = rng.random(len(probs))
    i, j = np.triu_indices(model.n, 1)
    keep = u < probs
    return Graph(model.n, np.column_stack([i[keep], j[keep]]))


@dataclass(frozen=True)
class ConditionAudit:
    """Empirical constants of the degree and set-density conditions.

    ``beta3_hat`` is the smallest row average of ``p(i, .)`` over ``p_n``;
    ``beta1_hat`` is the smallest average of the ``m0`` lowest entries of a
    row over ``p_n``. For sorted entries the prefix averages only grow, so
    that average is the infimum over every set of size at least ``m0``.
    An infeasible audit (``m0 > n - 1``) has no admissible set and reports
    ``beta1_hat = inf``.
    """

    beta3_hat: float
    beta1_hat: float
    m0: int
    feasible: bool


def audit_conditions(model: EdgeProbModel, beta2: float) -> ConditionAudit:
    if not 0 < beta2 <= 1:
        raise ValueError(f"beta2 must lie in (0, 1], got {beta2}")
    if model.n < 2:
        raise ValueError("audit needs n >= 2")
    if model.p_n <= 0:
        raise ValueError("audit needs p_n > 0")
    n = model.n
    p = model.prob_matrix()
    off = ~np.eye(n, dtype=bool)
    rows = p[off].reshape(n, n - 1)
    beta3_hat = float(rows.mean(axis=1).min() / model.p_n)
    m0 = max(1, _ceil(beta2 * n * model.p_n))
    if m0 > n - 1:
        return ConditionAudit(beta3_hat, math.inf, m0, False)
    smallest = np.sort(rows, axis=1)[:, :m0]
    beta1_hat = float(smallest.mean(axis=1).min() / model.p_n)
    return ConditionAudit(beta3_hat, beta1_hat, m0, True)


@dataclass(frozen=True)
class Density:
    """A density on the unit square given by an evaluator and declared bounds.

    ``f`` maps an ``(k, 2)`` array of points to ``k`` density values. The
    declared ``sup`` is the rejection envelope; values above it or below
    ``inf`` are reported when sampling.
    """

    f: Optional[Callable[[np.ndarray], np.ndarray]] = None
    inf: float = 1.0
    sup: float = 1.0
    name: str = "uniform"

    def __post_init__(self):
        if not self.sup > 0:
            raise ValueError("degenerate density: sup f must be positive")
        if not 0 < self.inf <= self.sup or not math.isfinite(self.sup):
            raise ValueError("density bounds must satisfy 0 < inf f <= sup f < inf")

    @property
    def is_uniform(self) -> bool:
        return self.f is None

    def __call__(self, xy: np.ndarray) -> np.ndarray:
        if self.f is None:
            return np.ones(len(xy))
        return np.asarray(self.f(xy), dtype=float)


UNIFORM = Density()


@dataclass(frozen=True, eq=False)
class PointCloud:
    n: int
    points: np.ndarray = field(repr=False)
    r: float
    density: Density = UNIFORM
    proposals: int = 0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if len(pts) != self.n:
            raise ValueError("point count does not match n")
        if (np.abs(pts) > 0.5).any():
            raise ValueError("points must lie in [-1/2, 1/2]^2")
        if not self.r > 0:
            raise ValueError("radius must be positive")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def acceptance_rate(self) -> float:
        return self.n / self.proposals if self.proposals else 1.0


def _draw_points(n: int, density: Density, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    if density.is_uniform:
        return rng.random((n, 2)) - 0.5, n
    accepted = []
    have = proposals = 0
    batch = max(64, int(math.ceil(n * density.sup)))
    while have < n:
        xy = rng.random((batch, 2)) - 0.5
        fx = density(xy)
        if (fx > density.sup * (1 + 1e-12)).any() or (fx < density.inf * (1 - 1e-12)).any():
            raise ValueError(f"density {density.name!r} violates its declared bounds")
        u = rng.random(batch)
        keep = xy[u * density.sup < fx]
        need = n - have
        if len(keep) >= need:
            # count proposals up to and including the n-th acceptance
            idx = np.flatnonzero(u * density.sup < fx)[need - 1]
            proposals += int(idx) + 1
            keep = keep[:need]
        else:
            proposals += batch
        accepted.append(keep)
        have += len(keep)
    return np.concatenate(accepted), proposals


def geometric_edges(points: np.ndarray, r: float) -> np.ndarray:
    """Pairs at Euclidean distance strictly below ``r``."""
    if len(points) < 2:
        return np.empty((0, 2), dtype=np.int64)
    pairs = cKDTree(points).query_pairs(r, output_type="ndarray").astype(np.int64)
    if len(pairs):
        d = np.linalg.norm(points[pairs[:, 0]] - points[pairs[:, 1]], axis=1)
        pairs = pairs[d < r]
    return pairs


def sample_rgg(n: int, r: float, density: Density = UNIFORM, seed: int = 0) -> tuple[PointCloud, Graph]:
    """Sample ``n`` points from ``density`` and join pairs closer than ``r``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    rng = make_rng(seed)
    pts, proposals = _draw_points(n, density, rng)
    cloud = PointCloud(n, pts, r, density, proposals)
    return cloud, Graph(n, geometric_edges(cloud.points, r))
