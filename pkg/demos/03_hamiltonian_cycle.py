"""Build a Hamiltonian cycle by merging square cycles, then splicing sparse squares.

Run:  python3 demos/03_hamiltonian_cycle.py

omega = 61 at n = 2000 gives a t_n tiling with k = 14 and about 10 points
per square, with bands of M = 7 squares. The script walks through the
two construction stages and validates the result hop by hop.
"""
import collections

from longpaths.cycles import extend_with_sparse, merge_backbone_state, validate_cycle
from longpaths.harness.config import ExperimentConfig
from longpaths.harness.runner import rgg_instance
from longpaths.rng import trial_seed
from longpaths.tiling import detect_events

cfg = ExperimentConfig(mode="rgg-hamiltonian", n=2000, omega=61.0, M=7)
for index in range(5):
    cloud, g, t, b, note = rgg_instance(cfg, trial_seed(cfg.seed, index))
    ev = detect_events(t, b, g)
    print(f"trial {index}: k={t.k}, dense {int(t.dense.sum())}/{t.k**2}, H_n={ev.H_n}")
    if not ev.H_n:
        continue
    state = merge_backbone_state(t, b, g, check=True)
    tau = state.cycle()
    print(f"  backbone cycle: {len(tau)} vertices from {len(b.squares)} squares")
    removed = collections.Counter(state.removed.values())
    print(f"  in-square edges given up per square: {dict(sorted(removed.items()))}")
    chi = extend_with_sparse(tau, t, b, g, check=True)
    report = validate_cycle(chi, g, cloud)
    print(f"  after splicing sparse squares: {len(chi)} vertices, valid={report.ok}")
    break
