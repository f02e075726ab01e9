"""How large must the band multiplier M be at finite n?

Run:  python3 demos/04_calibrate_M.py

The asymptotic argument only needs M "large enough". This script measures
F_n and H_n frequencies as M grows, at two radii where the t_n tiling is
well populated. Taller bands are easier to cross, and there are fewer of them.
"""
from longpaths.harness.config import ExperimentConfig
from longpaths.harness.runner import run_experiment

trials = 40
print(f"{'omega':>6} {'M':>3} {'F_n':>6} {'H_n':>6} {'ham':>6}")
for omega in (61.0, 74.0):
    for M in (2, 4, 7, 14):
        cfg = ExperimentConfig(mode="rgg-hamiltonian", n=2000, omega=omega, M=M, trials=trials, seed=3)
        s = run_experiment(cfg).summary
        print(f"{omega:6.0f} {M:3d} {s['freq_F_n']:6.3f} {s['freq_H_n']:6.3f} {s['freq_hamiltonian']:6.3f}")
