"""Long paths in inhomogeneous Erdos-Renyi graphs; long and Hamiltonian cycles in random geometric graphs.

Submodules:

* ``graphs``  graph containers, ER and RGG samplers, condition audits
* ``bounds``  Chernoff exponents and closed-form longest-path / cycle bounds
* ``paths``   exact and heuristic longest paths, min-degree events
* ``tiling``  square tilings, band crossings, backbone and events
* ``cycles``  cycle merging, sparse-square extension, validation
* ``io``      text dumps
* ``harness`` configs, Monte Carlo runner, verification, CLI

Random numbers come from numpy's Philox counter-based generator; a trial's
seed is derived from ``(master seed, trial index)``.
"""

from .bounds import (
    BoundParams,
    chernoff_q,
    chernoff_tail_bound,
    corollary1_bounds,
    theorem1_bounds,
)
from .cycles import ConstructionError, extend_with_sparse, merge_backbone_cycles, validate_cycle
from .graphs import EdgeProbModel, Graph, PointCloud, audit_conditions, sample_er, sample_rgg
from .paths import CycleWalk, longest_path_exact, longest_path_rotation
from .tiling import build_backbone, build_tiling, detect_events, find_crossing

__version__ = "0.1.0"
