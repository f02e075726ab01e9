"""Sweep omega through the Hamiltonicity window and write the table as CSV.

Run:  python3 demos/05_omega_sweep.py [out.csv]

At n = 2000 and omega in {-4, ..., 12} the t_n squares hold 2 to 4 points,
so the constructive frequency stays at zero; the upper values (51, 61, 74)
are the ones where the tiling becomes dense enough to see it rise.
"""
import sys

from longpaths.harness.config import ExperimentConfig
from longpaths.harness.runner import run_sweep

cfg = ExperimentConfig(mode="sweep", sweep_mode="rgg-hamiltonian", sweep_param="omega",
                       sweep_values="-4,0,4,8,12,51,61,74", n=2000, trials=30, M=4,
                       output=sys.argv[1] if len(sys.argv) > 1 else "")
sweep = run_sweep(cfg)
print(f"{'omega':>6} {'F_n':>6} {'H_n':>6} {'ham':>6} {'95% CI':>16} {'bound':>8}")
for row in sweep.rows:
    print(f"{row['value']:6.0f} {row['freq_F_n']:6.3f} {row['freq_H_n']:6.3f} {row['freq_hamiltonian']:6.3f} "
          f"  [{row['ci_low']:.3f}, {row['ci_high']:.3f}] {row['bound']:8.4f}")
