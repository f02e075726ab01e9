"""Verification batteries: oracle equivalence, bound arithmetic and seeded statistical checks.

Every check returns a ``CheckResult``; ``verify_suite`` strings them
together. All seeds are fixed here so a run is reproducible bit for bit.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import oracles
from ..bounds import (
    BoundParams,
    chernoff_q,
    chernoff_tail_bound,
    corollary1_bounds,
    theorem1_bounds,
)
from ..cycles import ConstructionError, extend_with_sparse, merge_backbone_cycles, validate_cycle
from ..graphs import EdgeProbModel, Graph, sample_er
from ..paths import CycleWalk, longest_path_exact
from ..rng import make_rng, trial_seed
from ..tiling import (
    Tiling,
    band_pair,
    build_backbone,
    compute_Kn,
    detect_events,
    find_crossing,
)
from .config import ExperimentConfig
from .runner import is_monotone_nondecreasing, rgg_instance, run_sweep

MASTER_SEED = 20240607
SWEEP_OMEGAS = "-4,0,4,8,12"
MIN_GAP = 0.05


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, str, dict]], limit: float = math.inf) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail, data = fn()
    except Exception as e:  # a crashing check is a failing check
        ok, detail, data = False, f"raised {type(e).__name__}: {e}", {}
    elapsed = time.perf_counter() - start
    if ok and elapsed > limit:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s > {limit:.0f}s"
    return CheckResult(name, ok, detail, elapsed, data)


# 1 -----------------------------------------------------------------------


def check_longest_path_oracle(graphs: int = 200, seed: int = MASTER_SEED) -> CheckResult:
    def run():
        rng = make_rng(seed)
        probs = (0.2, 0.5, 0.8)
        bad = []
        for i in range(graphs):
            n = int(rng.integers(1, 8))
            p = probs[i % 3]
            g = sample_er(EdgeProbModel.homogeneous(n, p), trial_seed(seed, i))
            got = longest_path_exact(g).vertices
            want = oracles.longest_path_bruteforce(n, g.edges.tolist())
            if len(got) != len(want) or not validate_cycle_path(got, g):
                bad.append((i, n, p, len(got), len(want)))
        return not bad, f"{graphs - len(bad)}/{graphs} graphs agree", {"mismatches": bad}

    return _timed("longest-path oracle equivalence", run, limit=30)


def validate_cycle_path(vertices, g: Graph) -> bool:
    return bool(validate_cycle(CycleWalk(vertices), g)) if vertices else False


# 2 -----------------------------------------------------------------------


def check_chernoff(tol: float = 1e-12) -> CheckResult:
    def run():
        worst = []
        for n in (10, 50, 200):
            for p in ("0.1", "0.5"):
                for a in ("0.25", "0.5", "0.9"):
                    exact = oracles.binomial_two_sided_tail(n, p, a)
                    bound = chernoff_tail_bound(n * float(p), float(a)).raw
                    worst.append((n, p, a, exact, bound))
        dominated = sum(e <= b for *_, e, b in worst)
        deltas = np.linspace(0.01, 1.0, 100)
        err = max(abs(chernoff_q(d) - float(oracles.chernoff_q_mp(d))) for d in deltas)
        ok = dominated == len(worst) and err <= tol
        return ok, f"{dominated}/{len(worst)} cells dominated, max |q - q_mp| = {err:.2e}", {"cells": worst}

    return _timed("Chernoff dominance", run)


# 3 -----------------------------------------------------------------------


def check_bound_arithmetic() -> CheckResult:
    def run():
        problems = []
        rep = theorem1_bounds(BoundParams(100, beta1=1, beta2=1, M=2))
        if rep.ham_prob_lower != 0.98:
            problems.append(f"ham_prob_lower = {rep.ham_prob_lower!r}")
        for n, p, d in [(50, 0.4, 0.1), (200, 0.2, 0.25), (1000, 0.1, 0.4), (30, 0.9, 0.3)]:
            cor = corollary1_bounds(n, p, d)
            thm = theorem1_bounds(BoundParams(n, p, beta1=1 - d, beta2=1, delta=d / (1 - d)))
            for f in ("expected_Ln_lower", "Ln_threshold", "prob_lower"):
                a, b = getattr(cor, f), getattr(thm, f)
                if not math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12):
                    problems.append(f"{f} at n={n}, p={p}, delta={d}: {a} vs {b}")
        for n, M, M1 in [(100, 3.0, 2.0), (1000, 4.0, 1.5)]:
            p = math.sqrt(M * math.log(n) / n)
            cor = corollary1_bounds(n, p, 0.2, M1=M1)
            thm = theorem1_bounds(BoundParams(n, p, beta1=M1 / M, beta2=1, M=M))
            for f in ("expected_Ln_lower_log", "ham_prob_lower"):
                a, b = getattr(cor, f), getattr(thm, f)
                if not math.isclose(a, b, rel_tol=1e-12):
                    problems.append(f"{f} at n={n}, M={M}, M1={M1}: {a} vs {b}")
        return not problems, "; ".join(problems) or "0.98 exact, homogeneous forms coincide", {}

    return _timed("bound arithmetic", run)


# 4 -----------------------------------------------------------------------


def long_cycle_config(trials: int = 500, n: int = 2000, c: float = 2.0, **kw) -> ExperimentConfig:
    base = dict(mode="rgg-long-cycle", n=n, trials=trials, seed=MASTER_SEED, radius_rule="clog", c=c)
    base.update(kw)
    return ExperimentConfig(**base)


def check_construction_validity(config: ExperimentConfig, name: str = "construction validity",
                                limit: float = 300, min_qualifying: int = 0) -> CheckResult:
    """Every trial with ``F_n`` yields a valid cycle on exactly the backbone vertices."""

    def run():
        qualifying, bad = 0, []
        for i in range(config.trials):
            cloud, g, t, bb, _ = rgg_instance(config, trial_seed(config.seed, i))
            if not bb.F_n:
                continue
            qualifying += 1
            try:
                cycle = merge_backbone_cycles(t, bb, g)
            except ConstructionError as e:
                bad.append((i, str(e)))
                continue
            report = validate_cycle(cycle, g, cloud)
            expected = {int(v) for sq in bb.squares for v in t.vertices(sq)}
            if not report or set(cycle.vertices) != expected:
                bad.append((i, report.reason or "coverage"))
        ok = not bad and qualifying >= min_qualifying
        detail = f"{qualifying - len(bad)}/{qualifying} trials with F_n valid ({config.trials} run)"
        if qualifying < min_qualifying:
            detail += f"; fewer than {min_qualifying} trials had F_n"
        return ok, detail, {"qualifying": qualifying, "failures": bad}

    return _timed(name, run, limit)


# 5 -----------------------------------------------------------------------


def hamiltonian_config(trials: int = 200, n: int = 2000, omega: float = 10.0, **kw) -> ExperimentConfig:
    base = dict(mode="rgg-hamiltonian", n=n, trials=trials, seed=MASTER_SEED,
                radius_rule="hamiltonian", omega=omega)
    base.update(kw)
    return ExperimentConfig(**base)


def check_hamiltonian_construction(config: ExperimentConfig, name: str = "Hamiltonian construction",
                                   min_qualifying: int = 0) -> CheckResult:
    """Every trial with ``H_n`` (so no isolated sparse square) yields an n-cycle and ``X_O = 0``."""

    def run():
        qualifying, bad = 0, []
        for i in range(config.trials):
            cloud, g, t, bb, _ = rgg_instance(config, trial_seed(config.seed, i))
            ev = detect_events(t, bb, g)
            if not ev.H_n:
                continue
            qualifying += 1
            try:
                cycle = extend_with_sparse(merge_backbone_cycles(t, bb, g), t, bb, g)
            except ConstructionError as e:
                bad.append((i, str(e)))
                continue
            if len(cycle) != config.n or not validate_cycle(cycle, g, cloud):
                bad.append((i, f"length {len(cycle)}"))
            if ev.X_O != 0:
                bad.append((i, f"X_O = {ev.X_O}"))
        ok = not bad and qualifying >= min_qualifying
        detail = f"{qualifying - len(bad)}/{qualifying} trials with H_n Hamiltonian ({config.trials} run)"
        if qualifying < min_qualifying:
            detail += f"; fewer than {min_qualifying} trials had H_n"
        return ok, detail, {"qualifying": qualifying, "failures": bad}

    return _timed(name, run)


# 6 -----------------------------------------------------------------------


def check_threshold_monotonicity(trials: int = 200, n: int = 2000, values: str = SWEEP_OMEGAS,
                                 workers: int = 1) -> CheckResult:
    def run():
        cfg = ExperimentConfig(mode="sweep", n=n, trials=trials, seed=MASTER_SEED,
                               sweep_mode="rgg-hamiltonian", sweep_param="omega",
                               sweep_values=values, workers=workers)
        sweep = run_sweep(cfg)
        freqs = sweep.column("freq_hamiltonian")
        mono = is_monotone_nondecreasing(freqs)
        gap = freqs[-1] - freqs[0]
        ok = mono and gap >= MIN_GAP
        shown = ", ".join(f"{v:g}:{f:.3f}" for v, f in zip(sweep.column("value"), freqs))
        return ok, f"frequencies {shown}; monotone={mono}, gap={gap:.3f} (need >= {MIN_GAP})", {
            "frequencies": freqs, "rows": sweep.rows}

    return _timed("threshold monotonicity", run)


# 7 -----------------------------------------------------------------------


def check_longest_path_bound_empirical(seeds: int = 500, n: int = 18, densities=(2.0, 4.0)) -> CheckResult:
    def run():
        parts, ok, data = [], True, {}
        for x in densities:
            p = math.sqrt(x / n)
            model = EdgeProbModel.homogeneous(n, p)
            lengths = np.array([len(longest_path_exact(sample_er(model, trial_seed(MASTER_SEED + int(x), i))))
                                for i in range(seeds)], dtype=float)
            mean = lengths.mean()
            se = lengths.std(ddof=1) / math.sqrt(seeds)
            bound = theorem1_bounds(BoundParams(n, p)).raw["expected_Ln_lower"]
            good = mean >= bound - 2 * se
            ok &= good
            parts.append(f"np^2={x:g}: mean {mean:.3f} (se {se:.3f}) vs bound {bound:.3f}")
            data[x] = (mean, se, bound)
        return ok, "; ".join(parts), data

    return _timed("empirical longest-path bound", run, limit=600)


# 8 -----------------------------------------------------------------------


def random_counts(rng: np.random.Generator, k: int = 6, dense_frac=None) -> np.ndarray:
    """Counts with a random dense pattern; sparse squares hold 0..7 points (7 often)."""
    frac = rng.uniform(0.3, 0.9) if dense_frac is None else dense_frac
    dense = rng.random((k, k)) < frac
    sparse = rng.choice([0, 1, 3, 7, 7, 7], size=(k, k))
    return np.where(dense, rng.integers(8, 12, size=(k, k)), sparse)


def check_grid_events(samples: int = 10_000, k: int = 6, heights=(2, 4), seed: int = MASTER_SEED) -> CheckResult:
    def run():
        rng = make_rng(seed)
        bad = []
        for i in range(samples):
            counts = random_counts(rng, k)
            h = heights[i % len(heights)]
            t = Tiling.from_counts(counts)
            bands = band_pair(k, h)
            bb = build_backbone(t, bands)
            ev = detect_events(t, bb)
            want = oracles.grid_events(counts, h)
            got = {"F_n": ev.F_n, "I_n": ev.I_n, "J_n": ev.J_n, "H_n": ev.H_n, "backbone": bb.squares}
            mismatch = [key for key in got if got[key] != want[key]]
            dense = counts >= oracles.DENSE
            for band_set in bands:
                for band in band_set:
                    c = find_crossing(t, band)
                    exists = oracles.crossing_exists(dense, band.orientation, band.start, band.stop)
                    if (c is not None) != exists or (c is not None and not _is_crossing(c, dense, band)):
                        mismatch.append(f"crossing {band.orientation}[{band.start},{band.stop})")
            if mismatch:
                bad.append((i, mismatch))
        return not bad, f"{samples - len(bad)}/{samples} sampled grids agree", {"mismatches": bad[:20]}

    return _timed("small-grid event oracle", run)


def _is_crossing(squares, dense, band) -> bool:
    k = dense.shape[0]
    lo, hi = band.start, band.stop
    across = 1 if band.orientation == "horizontal" else 0
    along = 1 - across
    if not all(dense[sq] and lo <= sq[across] < hi for sq in squares):
        return False
    if squares[0][along] != 0 or squares[-1][along] != k - 1:
        return False
    return all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(squares, squares[1:]))


# invariants ---------------------------------------------------------------


def check_strict_ceiling() -> CheckResult:
    """``K_n`` at integer ratios is the ratio plus one."""

    def run():
        problems = []
        for n in (100, 2000, 10_000):
            for ratio in (1, 2, 3):
                r = math.sqrt(math.log(n) / (ratio * n))
                if compute_Kn(n, r) != ratio + 1:
                    problems.append(f"n={n}, ratio={ratio}: K_n={compute_Kn(n, r)}")
            r = math.sqrt(2 * math.log(n) / n)
            if compute_Kn(n, r) != 1:
                problems.append(f"n={n}, ratio=1/2: K_n={compute_Kn(n, r)}")
        return not problems, "; ".join(problems) or "integer ratios map to ratio + 1", {}

    return _timed("strict ceiling", run)


def check_dense_threshold(seed: int = MASTER_SEED) -> CheckResult:
    """Squares holding exactly 7 or 8 points land on the right side of the threshold."""

    def run():
        counts = np.array([[7, 8], [0, 9]])
        t = Tiling.from_counts(counts)
        want = counts >= oracles.DENSE
        ok = bool((t.dense == want).all())
        return ok, "7 sparse, 8 dense" if ok else f"dense flags {t.dense.tolist()}", {}

    return _timed("dense threshold", run)


def check_determinism() -> CheckResult:
    def run():
        from .runner import run_trial

        cfg = hamiltonian_config(trials=2, n=300, omega=10.0)
        a, b = run_trial(cfg, 1), run_trial(cfg, 1)
        er = ExperimentConfig(mode="er-longest-path", n=40, p_n=0.2, trials=1, seed=5)
        c, d = run_trial(er, 0), run_trial(er, 0)
        strip = lambda rec: rec.__class__(**{**rec.__dict__, "wall_time": 0.0})  # noqa: E731
        ok = strip(a) == strip(b) and strip(c) == strip(d)
        return ok, "repeated trials identical" if ok else "trial records differ between runs", {}

    return _timed("determinism", run)


# suites -------------------------------------------------------------------


def acceptance_checks(level: str = "full") -> list[Callable[[], CheckResult]]:
    """The eight acceptance batteries; ``fast`` shrinks the Monte Carlo ones and skips the sweep."""
    if level == "full":
        return [
            check_longest_path_oracle,
            check_chernoff,
            check_bound_arithmetic,
            lambda: check_construction_validity(long_cycle_config()),
            lambda: check_hamiltonian_construction(hamiltonian_config()),
            check_threshold_monotonicity,
            check_longest_path_bound_empirical,
            check_grid_events,
        ]
    return [
        check_longest_path_oracle,
        check_chernoff,
        check_bound_arithmetic,
        lambda: check_construction_validity(long_cycle_config(trials=40)),
        lambda: check_hamiltonian_construction(hamiltonian_config(trials=40)),
        lambda: check_longest_path_bound_empirical(seeds=60),
        lambda: check_grid_events(samples=2000),
    ]


def dense_regime_checks(level: str = "full") -> list[Callable[[], CheckResult]]:
    """Regimes where the construction actually fires, so the merge code is exercised."""
    trials = 60 if level == "full" else 10
    return [
        lambda: check_construction_validity(
            long_cycle_config(trials=trials, radius_rule="explicit", r=0.45),
            "construction validity, dense regime", min_qualifying=trials // 2),
        lambda: check_hamiltonian_construction(
            hamiltonian_config(trials=trials, omega=61.0, M=7),
            "Hamiltonian construction, dense regime", min_qualifying=trials // 2),
    ]


def invariant_checks() -> list[Callable[[], CheckResult]]:
    return [check_strict_ceiling, check_dense_threshold, check_determinism]


@dataclass
class SuiteReport:
    level: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        n_ok = sum(r.passed for r in self.results)
        lines.append(f"{self.level}: {n_ok}/{len(self.results)} checks passed")
        return "\n".join(lines)


def verify_suite(level: str = "fast", echo: Callable[[str], None] | None = None) -> SuiteReport:
    """Run the invariant, oracle and statistical batteries. ``fast`` fits in about two minutes."""
    if level not in ("fast", "full"):
        raise ValueError(f"level must be fast or full, got {level!r}")
    results = []
    for check in invariant_checks() + acceptance_checks(level) + dense_regime_checks(level):
        res = check()
        results.append(res)
        if echo is not None:
            echo(res.line())
    return SuiteReport(level, results)
