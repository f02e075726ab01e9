"""Tiling, crossings and the backbone on one random geometric graph.

Run:  python3 demos/02_tiling_walkthrough.py

A dense regime first (r = 0.45, about 25 points per square) where every
band is crossed, then the regime n r^2 = 2 log n at n = 2000 where squares
hold about one point and nothing is dense.
"""
import math

from longpaths.graphs import sample_rgg
from longpaths.tiling import (
    band_pair,
    build_backbone,
    build_tiling,
    choose_epsilon1,
    compute_Kn,
    detect_events,
    render_grid,
)

M = 4
for n, r in [(2000, 0.45), (2000, math.sqrt(2 * math.log(2000) / 2000))]:
    cloud, g = sample_rgg(n, r, seed=7)
    s, k = choose_epsilon1(r)
    K = compute_Kn(n, r)
    t = build_tiling(cloud, s)
    b = build_backbone(t, band_pair(k, M * K))
    ev = detect_events(t, b, g)
    print(f"n={n} r={r:.4f}: k={k}, K_n={K}, band height {M * K}, "
          f"{n / k**2:.2f} points per square, {int(t.dense.sum())} dense squares")
    print(f"  F_n={ev.F_n} I_n={ev.I_n} J_n={ev.J_n} H_n={ev.H_n} X_O={ev.X_O}")
    print(f"  backbone: {ev.backbone_squares} squares, {ev.backbone_vertices} vertices")
    if k <= 12:
        # '#' marks squares on a selected crossing, D other dense squares, S sparse
        print(render_grid(t, b))
