"""Seeded Monte Carlo trials, experiment tables and parameter sweeps."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

from ..bounds import (
    BoundParams,
    min_degree_failure_bound,
    rgg_hamiltonian_bound,
    rgg_long_cycle_bound,
    theorem1_bounds,
)
from ..cycles import ConstructionError, extend_with_sparse, merge_backbone_cycles, validate_cycle
from ..graphs import EdgeProbModel, audit_conditions, sample_er, sample_rgg
from ..paths import longest_path_exact, longest_path_rotation, min_degree_event
from ..rng import trial_seed
from ..tiling import (
    band_pair,
    build_backbone,
    build_tiling,
    choose_epsilon1,
    choose_tn,
    compute_Kn,
    detect_events,
    side_for_radius,
)
from .config import ExperimentConfig


@dataclass(frozen=True)
class TrialRecord:
    index: int
    seed: int
    length: int
    hamiltonian: bool
    F_n: Optional[bool] = None
    I_n: Optional[bool] = None
    J_n: Optional[bool] = None
    H_n: Optional[bool] = None
    A_i: Optional[bool] = None
    X_O: int = 0
    outcome: str = "ok"
    wall_time: float = 0.0


CSV_FIELDS = [f.name for f in fields(TrialRecord) if f.name != "wall_time"]
EVENT_FIELDS = ("hamiltonian", "F_n", "I_n", "J_n", "H_n", "A_i")


def er_model(config: ExperimentConfig) -> EdgeProbModel:
    if config.weights:
        lo, hi = config.weight_range()
        return EdgeProbModel.weighted(config.p_n, np.linspace(lo, hi, config.n))
    return EdgeProbModel.homogeneous(config.n, config.p_n)


def rgg_tiling_plan(config: ExperimentConfig, r: float) -> tuple[float, int, int, str]:
    """``(side, k, band height, note)`` for the configured RGG mode."""
    n, note = config.n, ""
    if config.mode == "rgg-long-cycle" or (config.mode == "sweep" and config.sweep_mode == "rgg-long-cycle"):
        try:
            s, k = choose_epsilon1(r)
        except ValueError:
            s, k = side_for_radius(r)
            note = "side-fallback"
        return s, k, config.M * compute_Kn(n, r), note
    if config.radius_rule == "hamiltonian":
        try:
            s, k, _ = choose_tn(n, config.omega)
        except ValueError:
            s, k = side_for_radius(r)
            note = "tn-fallback"
    else:
        s, k = side_for_radius(r)
    return s, k, config.M, note


def rgg_instance(config: ExperimentConfig, seed: int):
    """Sample, tile and cross: ``(cloud, graph, tiling, backbone, note)``."""
    r = config.radius()
    cloud, g = sample_rgg(config.n, r, seed=seed)
    s, k, height, note = rgg_tiling_plan(config, r)
    t = build_tiling(cloud, s)
    return cloud, g, t, build_backbone(t, band_pair(k, height)), note


def _er_trial(config: ExperimentConfig, index: int, seed: int) -> TrialRecord:
    g = sample_er(er_model(config), seed)
    n = config.n
    if n <= config.exact_max_n:
        path, how = longest_path_exact(g), "exact"
    else:
        path, how = longest_path_rotation(g, config.budget, seed), "heuristic"
    t0 = config.beta2 * n * config.p_n
    return TrialRecord(index, seed, len(path), len(path) == n,
                       A_i=min_degree_event(g, 0, t0), X_O=n - len(path), outcome=how)


def _rgg_trial(config: ExperimentConfig, index: int, seed: int, hamiltonian_mode: bool) -> TrialRecord:
    cloud, g, t, bb, note = rgg_instance(config, seed)
    ev = detect_events(t, bb, g)
    flags = dict(F_n=ev.F_n, I_n=ev.I_n, J_n=ev.J_n, H_n=ev.H_n, X_O=ev.X_O)
    prefix = f"{note};" if note else ""
    if not bb.squares:
        return TrialRecord(index, seed, 0, False, outcome=prefix + "no-dense-squares", **flags)
    try:
        tau = merge_backbone_cycles(t, bb, g)
    except ConstructionError as e:
        return TrialRecord(index, seed, 0, False, outcome=prefix + f"construction-failed: {e}", **flags)
    cycle, stage = tau, "long-cycle"
    if hamiltonian_mode:
        try:
            cycle, stage = extend_with_sparse(tau, t, bb, g), "extended"
        except ConstructionError as e:
            stage = f"extension-failed: {e}"
    report = validate_cycle(cycle, g, cloud)
    if not report:
        return TrialRecord(index, seed, 0, False, outcome=prefix + f"invalid: {report.reason}", **flags)
    return TrialRecord(index, seed, len(cycle), len(cycle) == config.n, outcome=prefix + stage, **flags)


def run_trial(config: ExperimentConfig, index: int) -> TrialRecord:
    """One trial; the seed is derived from ``(config.seed, index)``. Pipeline errors land in ``outcome``."""
    seed = trial_seed(config.seed, index)
    mode = config.sweep_mode if config.mode == "sweep" else config.mode
    start = time.perf_counter()
    if mode == "er-longest-path":
        rec = _er_trial(config, index, seed)
    else:
        rec = _rgg_trial(config, index, seed, mode == "rgg-hamiltonian")
    return _with_time(rec, time.perf_counter() - start)


def _replace(rec: TrialRecord, **changes) -> TrialRecord:
    d = asdict(rec)
    d.update(changes)
    return TrialRecord(**d)


def _with_time(rec: TrialRecord, seconds: float) -> TrialRecord:
    return _replace(rec, wall_time=seconds)


def _run_indexed(args):
    return run_trial(*args)


def proportion_interval(k: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """95% interval for a frequency: normal approximation, Wilson when fewer than 5 successes or failures."""
    p = k / n
    if min(k, n - k) < 5:
        denom = 1 + z * z / n
        centre = (p + z * z / (2 * n)) / denom
        half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    else:
        centre, half = p, z * math.sqrt(p * (1 - p) / n)
    return max(0.0, centre - half), min(1.0, centre + half)


def summarize(config: ExperimentConfig, records: list[TrialRecord]) -> dict:
    mode = config.sweep_mode if config.mode == "sweep" else config.mode
    lengths = np.array([r.length for r in records], dtype=float)
    out = {"mode": mode, "trials": len(records), "mean_length": float(lengths.mean())}
    out["sd_length"] = float(lengths.std(ddof=1)) if len(records) > 1 else 0.0
    out["se_length"] = out["sd_length"] / math.sqrt(len(records))
    out["mean_X_O"] = float(np.mean([r.X_O for r in records]))
    for name in EVENT_FIELDS:
        vals = [getattr(r, name) for r in records if getattr(r, name) is not None]
        if vals:
            k = int(sum(vals))
            lo, hi = proportion_interval(k, len(vals))
            out[f"freq_{name}"] = k / len(vals)
            out[f"ci_{name}"] = (lo, hi)
    out.update(model_bounds(config))
    return out


def model_bounds(config: ExperimentConfig) -> dict:
    """Bound columns for the configured model, straight from the bounds module."""
    mode = config.sweep_mode if config.mode == "sweep" else config.mode
    n = config.n
    if mode == "er-longest-path":
        if n < 3 or config.p_n <= 0:
            return {}
        model = er_model(config)
        audit = audit_conditions(model, config.beta2)
        beta1 = min(1.0, audit.beta1_hat) if audit.feasible else 1.0
        rep = theorem1_bounds(BoundParams(n, config.p_n, beta1, config.beta2, config.delta))
        return {
            "beta1_hat": audit.beta1_hat, "beta3_hat": audit.beta3_hat,
            "bound_expected_Ln_lower": rep.expected_Ln_lower,
            "bound_Ln_threshold": rep.Ln_threshold, "bound_prob_lower": rep.prob_lower,
            "bound_a_n": min_degree_failure_bound(n, config.p_n, config.beta2, config.delta).value,
        }
    r = config.radius()
    threshold, prob = rgg_long_cycle_bound(n, r, config.delta1, config.delta2)
    out = {"r": r, "nr2": n * r * r, "bound_LC_threshold": threshold, "bound_LC_prob_lower": prob}
    if config.radius_rule == "hamiltonian":
        out["bound_ham_prob_lower"] = rgg_hamiltonian_bound(config.omega, config.C)
    return out


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list
    summary: dict
    elapsed: float = 0.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# longpaths run {stamp} elapsed={self.elapsed:.3f}s\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for rec in self.records:
            writer.writerow([_cell(getattr(rec, f)) for f in CSV_FIELDS])
        for line in _config_lines(self.config):
            buf.write(f"# config {line}\n")
        for key, value in self.summary.items():
            buf.write(f"# {key}={_cell(value)}\n")
        return buf.getvalue()

    def write(self, path) -> None:
        Path(path).write_text(self.to_csv())


def _config_lines(config: ExperimentConfig) -> list[str]:
    # the worker count cannot change any result, so it stays out of the file
    return [line for line in config.to_lines() if not line.startswith("workers=")]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple):
        return ";".join(_cell(x) for x in v)
    return str(v)


def run_records(config: ExperimentConfig) -> list[TrialRecord]:
    jobs = [(config, i) for i in range(config.trials)]
    if config.workers == 1:
        return [run_trial(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(_run_indexed, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """All trials (in parallel when ``workers > 1``), ordered by index, plus the summary block."""
    start = time.perf_counter()
    records = run_records(config)
    result = ExperimentResult(config, records, summarize(config, records), time.perf_counter() - start)
    if config.output:
        try:
            result.write(config.output)
        except OSError as e:
            raise OSError(f"cannot write {config.output}: {e}") from e
    return result


SWEEP_FIELDS = ["value", "trials", "mean_length", "freq_hamiltonian", "ci_low", "ci_high",
                "freq_F_n", "freq_I_n", "freq_J_n", "freq_H_n", "mean_X_O", "bound"]


@dataclass
class SweepResult:
    config: ExperimentConfig
    param: str
    rows: list

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# longpaths sweep {stamp} param={self.param}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_FIELDS)
        for row in self.rows:
            writer.writerow([_cell(row.get(f)) for f in SWEEP_FIELDS])
        for line in _config_lines(self.config):
            buf.write(f"# config {line}\n")
        return buf.getvalue()


def run_sweep(config: ExperimentConfig) -> SweepResult:
    """Run ``sweep_mode`` once per value of ``sweep_param``; one summary row per value."""
    rows = []
    for value in config.sweep_points():
        sub = config.replace(mode=config.sweep_mode, output="", **{config.sweep_param: value})
        summary = run_experiment(sub).summary
        lo, hi = summary["ci_hamiltonian"]
        bound = summary.get("bound_ham_prob_lower", summary.get("bound_prob_lower"))
        rows.append({
            "value": value, "trials": summary["trials"], "mean_length": summary["mean_length"],
            "freq_hamiltonian": summary["freq_hamiltonian"], "ci_low": lo, "ci_high": hi,
            "freq_F_n": summary.get("freq_F_n"), "freq_I_n": summary.get("freq_I_n"),
            "freq_J_n": summary.get("freq_J_n"), "freq_H_n": summary.get("freq_H_n"),
            "mean_X_O": summary["mean_X_O"], "bound": bound,
        })
    result = SweepResult(config, config.sweep_param, rows)
    if config.output:
        Path(config.output).write_text(result.to_csv())
    return result


def is_monotone_nondecreasing(values) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))
