"""Longest paths in Erdos-Renyi graphs against the closed-form lower bounds.

Run:  python3 demos/01_er_longest_paths.py

For n = 18 the exact subset DP gives L_n directly, so the Monte Carlo mean
can sit next to the bound n - 2n exp(-n p^2). Then a weighted model, where
the audit reports the beta constants that feed the bound.
"""
import math

import numpy as np

from longpaths.bounds import BoundParams, theorem1_bounds
from longpaths.graphs import EdgeProbModel, audit_conditions, sample_er
from longpaths.paths import longest_path_exact, longest_path_rotation
from longpaths.rng import trial_seed

n = 18
seeds = 200
print(f"homogeneous ER, n={n}, {seeds} seeds per row")
print(f"{'n p^2':>6} {'p':>6} {'mean L':>8} {'se':>6} {'bound':>8}")
for x in [1.0, 2.0, 3.0, 4.0]:
    p = math.sqrt(x / n)
    model = EdgeProbModel.homogeneous(n, p)
    L = np.array([len(longest_path_exact(sample_er(model, trial_seed(1, i)))) for i in range(seeds)])
    rep = theorem1_bounds(BoundParams(n, p))
    # the raw value can be negative at small n p^2; the report clamps it at 0
    print(f"{x:6.1f} {p:6.3f} {L.mean():8.3f} {L.std(ddof=1) / math.sqrt(seeds):6.3f} {rep.raw['expected_Ln_lower']:8.3f}")

# Larger graphs: the rotation heuristic only gives a lower bound on L_n,
# which is still enough to see the bound is loose.
n, p = 300, 0.12
model = EdgeProbModel.homogeneous(n, p)
L = [len(longest_path_rotation(sample_er(model, trial_seed(2, i)), budget=5000, seed=i)) for i in range(20)]
rep = theorem1_bounds(BoundParams(n, p, delta=0.5))
print(f"\nn={n}, p={p}: heuristic mean L >= {np.mean(L):.1f}; bound on E L: {rep.expected_Ln_lower:.1f}; "
      f"P(L >= {rep.Ln_threshold:.1f}) >= {rep.prob_lower:.3f}")

# An inhomogeneous model: weights spread from 0.5 to 1.5.
n, p = 400, 0.2
model = EdgeProbModel.weighted(p, np.linspace(0.5, 1.5, n))
audit = audit_conditions(model, beta2=0.5)
print(f"\nweighted model: beta3_hat={audit.beta3_hat:.3f}, beta1_hat={audit.beta1_hat:.3f} (m0={audit.m0})")
rep = theorem1_bounds(BoundParams(n, p, beta1=min(1.0, audit.beta1_hat), beta2=0.5))
print(f"bound with the audited beta1: E L >= {rep.expected_Ln_lower:.2f}")
