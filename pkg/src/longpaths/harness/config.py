"""Experiment configuration: a flat ``key = value`` file plus command-line overrides."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path

from ..bounds import hamiltonian_radius

MODES = ("er-longest-path", "rgg-long-cycle", "rgg-hamiltonian", "sweep")
RADIUS_RULES = ("explicit", "clog", "hamiltonian")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = "rgg-hamiltonian"
    n: int = 2000
    trials: int = 100
    seed: int = 1
    # ER model
    p_n: float = 0.3
    weights: str = ""  # "lo:hi" gives weights spaced linearly from lo to hi
    beta2: float = 0.5
    delta: float = 0.5
    exact_max_n: int = 20
    budget: int = 10_000
    # RGG model
    radius_rule: str = "hamiltonian"
    r: float = 0.0
    c: float = 2.0
    omega: float = 10.0
    M: int = 4
    # constants of the RGG bounds, not fixed by the asymptotics
    delta1: float = 1.0
    delta2: float = 1.0
    C: float = 1.0
    # sweep
    sweep_mode: str = "rgg-hamiltonian"
    sweep_param: str = "omega"
    sweep_values: str = "-4,0,4,8,12"
    # execution
    workers: int = 1
    output: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.sweep_mode not in MODES[:3]:
            raise ConfigError(f"sweep_mode must be one of {MODES[:3]}")
        if self.radius_rule not in RADIUS_RULES:
            raise ConfigError(f"radius_rule must be one of {RADIUS_RULES}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if not 0 <= self.p_n <= 1:
            raise ConfigError("p_n must lie in [0, 1]")
        if not 0 < self.beta2 <= 1:
            raise ConfigError("beta2 must lie in (0, 1]")
        if not 0 < self.delta < 1:
            raise ConfigError("delta must lie in (0, 1)")
        if self.M < 1 or self.workers < 1 or self.budget < 1:
            raise ConfigError("M, workers and budget must be >= 1")
        swept_r = self.mode == "sweep" and self.sweep_param == "r"
        if self.radius_rule == "explicit" and not self.r > 0 and not swept_r:
            raise ConfigError("explicit radius rule needs r > 0")
        if self.weights:
            self.weight_range()
        if self.mode == "sweep":
            if self.sweep_param not in {f.name for f in dataclasses.fields(self)}:
                raise ConfigError(f"unknown sweep parameter {self.sweep_param!r}")
            self.sweep_points()

    def radius(self) -> float:
        if self.radius_rule == "explicit":
            return self.r
        if self.radius_rule == "clog":
            return math.sqrt(self.c * math.log(self.n) / self.n)
        try:
            return hamiltonian_radius(self.n, self.omega)
        except ValueError as e:
            raise ConfigError(str(e)) from None

    def weight_range(self) -> tuple[float, float]:
        try:
            lo, hi = (float(x) for x in self.weights.split(":"))
        except ValueError:
            raise ConfigError(f"weights must look like lo:hi, got {self.weights!r}") from None
        if not 0 < lo <= hi:
            raise ConfigError("weights need 0 < lo <= hi")
        return lo, hi

    def sweep_points(self) -> list:
        kind = _field_types()[self.sweep_param]
        try:
            return [kind(v) for v in self.sweep_values.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"bad sweep values {self.sweep_values!r}") from None

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def to_lines(self) -> list[str]:
        return [f"{f.name}={getattr(self, f.name)}" for f in dataclasses.fields(self)]


def _field_types() -> dict:
    defaults = ExperimentConfig()
    return {f.name: type(getattr(defaults, f.name)) for f in dataclasses.fields(ExperimentConfig)}


def coerce(key: str, value: str):
    types = _field_types()
    if key not in types:
        raise ConfigError(f"unknown config key {key!r}")
    kind = types[key]
    try:
        if kind is int:
            try:
                return int(value)
            except ValueError:
                f = float(value)
                if not f.is_integer():
                    raise
                return int(f)
        return kind(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot read {value!r} as {kind.__name__}") from None


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = coerce(key, value)
    return out


def load_config(path=None, **overrides) -> ExperimentConfig:
    values = {}
    if path is not None:
        try:
            values.update(parse_config_text(Path(path).read_text()))
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)
