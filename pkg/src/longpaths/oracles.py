"""Slow reference computations used to cross-check the fast code paths.

Nothing here shares logic with the module it checks: longest paths come
from permutation scans, binomial tails from exact rational summation,
``q`` from 50-digit arithmetic, grid events from plain-Python flood fills.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np

# literal copy on purpose; a mutated package threshold must not leak in here
DENSE = 8


def longest_path_bruteforce(n: int, edges) -> tuple:
    """Lexicographically smallest among the longest simple paths, by scanning all permutations."""
    adj = {(min(a, b), max(a, b)) for a, b in edges}
    best = (0, None)
    for perm in itertools.permutations(range(n)):
        length = 1
        while length < n and (min(perm[length - 1], perm[length]), max(perm[length - 1], perm[length])) in adj:
            length += 1
        cand = perm[:length]
        if length > best[0] or (length == best[0] and cand < best[1]):
            best = (length, cand)
    return best[1]


def binomial_two_sided_tail(n: int, p: str | Fraction, alpha: str | Fraction) -> float:
    """``P(|T - np| >= alpha np)`` for ``T ~ Bin(n, p)``, summed exactly in rationals."""
    p, alpha = Fraction(p), Fraction(alpha)
    mu = n * p
    total = Fraction(0)
    for k in range(n + 1):
        if abs(k - mu) >= alpha * mu:
            total += math.comb(n, k) * p**k * (1 - p) ** (n - k)
    return float(total)


def chernoff_q_mp(delta, dps: int = 50) -> mpmath.mpf:
    with mpmath.workdps(dps):
        d = mpmath.mpf(delta)
        up = mpmath.e**d / (1 + d) ** (1 + d)
        lo = mpmath.e ** (-d) / (1 - d) ** (1 - d) if d < 1 else mpmath.e ** (-1)
        return -mpmath.log(min(up, lo))


def beta1_bruteforce(pmat: np.ndarray, p_n: float, m0: int) -> float:
    """Minimum over rows ``i`` and all sets ``S`` (``i`` not in ``S``, ``#S >= m0``) of the mean of ``p(i, S)``."""
    n = len(pmat)
    best = math.inf
    for i in range(n):
        others = [j for j in range(n) if j != i]
        for size in range(m0, n):
            for S in itertools.combinations(others, size):
                best = min(best, sum(pmat[i, j] for j in S) / size)
    return best / p_n


def recount_squares(points: np.ndarray, k: int) -> np.ndarray:
    """Per-square point counts by explicit box membership tests."""
    counts = np.zeros((k, k), dtype=np.int64)
    x, y = points[:, 0], points[:, 1]
    for a in range(k):
        xlo, xhi = -0.5 + a / k, -0.5 + (a + 1) / k
        inx = (x >= xlo) & ((x < xhi) | (a == k - 1))
        for b in range(k):
            ylo, yhi = -0.5 + b / k, -0.5 + (b + 1) / k
            iny = (y >= ylo) & ((y < yhi) | (b == k - 1))
            counts[a, b] = int((inx & iny).sum())
    return counts


def _components(cells: set, steps) -> list[set]:
    comps, seen = [], set()
    for c in sorted(cells):
        if c in seen:
            continue
        comp, todo = {c}, [c]
        seen.add(c)
        while todo:
            a, b = todo.pop()
            for da, db in steps:
                q = (a + da, b + db)
                if q in cells and q not in seen:
                    seen.add(q)
                    comp.add(q)
                    todo.append(q)
        comps.append(comp)
    return comps


PLUS_STEPS = [(1, 0), (-1, 0), (0, 1), (0, -1)]
STAR_STEPS = [(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1) if a or b]


def bands(k: int, h: int) -> list[tuple[int, int]]:
    h = min(h, k)
    out = []
    start = 0
    while start + h <= k:
        out.append((start, start + h))
        start += h
    if out[-1][1] < k:
        out.append((k - h, k))
    return out


def crossing_exists(dense: np.ndarray, orientation: str, lo: int, hi: int) -> bool:
    """Plus-connected dense crossing of the band, by component analysis."""
    k = dense.shape[0]
    if orientation == "horizontal":
        cells = {(a, b) for a in range(k) for b in range(lo, hi) if dense[a, b]}
        near = lambda c: c[0] == 0  # noqa: E731
        far = lambda c: c[0] == k - 1  # noqa: E731
    else:
        cells = {(a, b) for a in range(lo, hi) for b in range(k) if dense[a, b]}
        near = lambda c: c[1] == 0  # noqa: E731
        far = lambda c: c[1] == k - 1  # noqa: E731
    return any(any(map(near, c)) and any(map(far, c)) for c in _components(cells, PLUS_STEPS))


def grid_events(counts: np.ndarray, height: int) -> dict:
    """Events of a tiling given only its per-square counts."""
    k = counts.shape[0]
    dense = counts >= DENSE
    F = all(crossing_exists(dense, o, lo, hi) for o in ("horizontal", "vertical") for lo, hi in bands(k, height))
    cells = {(a, b) for a in range(k) for b in range(k) if dense[a, b]}
    comps = _components(cells, STAR_STEPS)
    if F:
        # any crossing cell identifies the backbone component
        lo, hi = bands(k, height)[0]
        plus = _components({c for c in cells if lo <= c[1] < hi}, PLUS_STEPS)
        seed = next(c for c in plus if any(x[0] == 0 for x in c) and any(x[0] == k - 1 for x in c))
        backbone = next(c for c in comps if c & seed)
    elif comps:
        backbone = max(comps, key=lambda c: (len(c), -min(c)[0] * k - min(c)[1]))
    else:
        backbone = set()
    I = bool(backbone) and len(cells) > len(backbone)
    J = False
    for a in range(k):
        for b in range(k):
            nbrs = [(a + da, b + db) for da, db in STAR_STEPS if 0 <= a + da < k and 0 <= b + db < k]
            if not any(dense[q] for q in nbrs):
                J = True
    return {"F_n": F, "I_n": I, "J_n": J, "H_n": F and not I and not J, "backbone": frozenset(backbone)}
