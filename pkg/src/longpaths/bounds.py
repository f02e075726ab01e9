"""Closed-form bounds on longest paths and cycles, plus the Chernoff machinery behind them.

All bounds are asymptotic statements; at small ``n`` the formulas can leave
their natural range (a negative expected length, a negative probability).
Reports keep the raw value, clamp the public field into range and name the
clamped fields in ``clamped``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional


def _check_fraction(delta: float) -> float:
    if not 0 < delta <= 1:
        raise ValueError(f"Chernoff deviation must lie in (0, 1], got {delta}")
    return float(delta)


def chernoff_q(delta: float) -> float:
    """Exponent ``q`` with ``exp(-q) = min(e^d/(1+d)^(1+d), e^-d/(1-d)^(1-d))``.

    At ``delta = 1`` the lower-tail factor uses ``0^0 = 1``.
    """
    d = _check_fraction(delta)
    upper = d - (1 + d) * math.log1p(d)
    lower = -1.0 if d == 1 else -d - (1 - d) * math.log1p(-d)
    return -min(upper, lower)


def chernoff_q_conservative(delta: float) -> float:
    """Exponent from the weaker of the two tail factors, ``-log max(...)``.

    ``2 exp(-q mu)`` with this ``q`` bounds the two-sided tail for every
    ``mu``; the ``min`` form of ``chernoff_q`` can undercut the upper tail
    (e.g. ``Bin(200, 0.1)`` at ``delta = 0.9``).
    """
    d = _check_fraction(delta)
    upper = d - (1 + d) * math.log1p(d)
    lower = -1.0 if d == 1 else -d - (1 - d) * math.log1p(-d)
    return -max(upper, lower)


class Bound(NamedTuple):
    value: float
    raw: float
    clamped: bool


def _clamp(x: float, lo: float, hi: float) -> tuple[float, bool]:
    if x < lo:
        return lo, True
    if x > hi:
        return hi, True
    return x, False


def chernoff_tail_bound(mu: float, alpha: float) -> Bound:
    """``2 exp(-q(alpha) mu)``, bounding ``P(|T - mu| >= alpha mu)`` for a Bernoulli sum."""
    if not mu > 0:
        raise ValueError(f"mean must be positive, got {mu}")
    raw = 2.0 * math.exp(-chernoff_q(alpha) * mu)
    return Bound(min(raw, 1.0), raw, raw > 1.0)


def min_degree_failure_bound(n: int, p_n: float, beta2: float, delta: float) -> Bound:
    """``a_n = n exp(-q(delta) beta2 n p_n)``: bound on P(some vertex of G - i has degree < beta2 n p_n)."""
    raw = n * math.exp(-chernoff_q(delta) * beta2 * n * p_n)
    return Bound(min(raw, 1.0), raw, raw > 1.0)


@dataclass(frozen=True)
class BoundParams:
    """Inputs to the longest-path bounds.

    Give ``p_n`` directly, or ``M`` for the regime ``n p_n^2 = M log n``
    (``p_n`` is then derived). Giving both requires them to agree.
    """

    n: int
    p_n: Optional[float] = None
    beta1: float = 1.0
    beta2: float = 1.0
    delta: float = 0.5
    M: Optional[float] = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        for name in ("beta1", "beta2"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {v}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.M is not None and not self.M > 0:
            raise ValueError("M must be positive")
        if self.p_n is None:
            if self.M is None:
                raise ValueError("need p_n or M")
            object.__setattr__(self, "p_n", math.sqrt(self.M * math.log(self.n) / self.n))
        elif not 0 <= self.p_n <= 1:
            raise ValueError(f"p_n must lie in [0, 1], got {self.p_n}")
        elif self.M is not None:
            implied = self.n * self.p_n**2 / math.log(self.n)
            if not math.isclose(implied, self.M, rel_tol=1e-9):
                raise ValueError(f"p_n gives n p_n^2 = {implied:.6g} log n, not M = {self.M}")

    @property
    def density(self) -> float:
        """``n p_n^2``."""
        return self.n * self.p_n**2


@dataclass(frozen=True)
class TheoremOneReport:
    expected_Ln_lower: float
    Ln_threshold: float
    prob_lower: float
    regime: str
    expected_Ln_lower_log: Optional[float] = None
    ham_prob_lower: Optional[float] = None
    M1: Optional[float] = None
    clamped: frozenset = frozenset()
    raw: dict = field(default_factory=dict, compare=False)
    notes: tuple = ()


def _report(n, expected, threshold, prob, regime, exp_log=None, ham=None, M1=None, notes=()):
    raw = {"expected_Ln_lower": expected, "Ln_threshold": threshold, "prob_lower": prob}
    ranges = {"expected_Ln_lower": (0.0, n), "Ln_threshold": (0.0, n), "prob_lower": (0.0, 1.0)}
    if exp_log is not None:
        raw["expected_Ln_lower_log"] = exp_log
        raw["ham_prob_lower"] = ham
        ranges["expected_Ln_lower_log"] = (0.0, n)
        ranges["ham_prob_lower"] = (0.0, 1.0)
    out, clamped = {}, set()
    for k, v in raw.items():
        out[k], hit = _clamp(v, *ranges[k])
        if hit:
            clamped.add(k)
    return TheoremOneReport(
        out["expected_Ln_lower"], out["Ln_threshold"], out["prob_lower"], regime,
        out.get("expected_Ln_lower_log"), out.get("ham_prob_lower"), M1,
        frozenset(clamped), raw, tuple(notes),
    )


def theorem1_bounds(params: BoundParams) -> TheoremOneReport:
    """Lower bounds on the longest path ``L_n`` of an inhomogeneous ER graph.

    * ``E L_n >= n - 2n exp(-b1 b2 n p^2)``
    * ``P(L_n >= n - 2n exp(-b1 b2 (1 - delta) n p^2)) >= 1 - exp(-b1 b2 delta n p^2)``
    * if ``n p^2 = M log n`` and ``M1 = M b1 b2 > 1``:
      ``E L_n >= n - 2 / n^(M1-1)`` and ``P(L_n = n) >= 1 - 2 / n^(M1-1)``.

    With ``M1 <= 1`` the log-regime fields stay ``None`` and a note says why.
    """
    n, b = params.n, params.beta1 * params.beta2
    x = params.density
    expected = n - 2 * n * math.exp(-b * x)
    threshold = n - 2 * n * math.exp(-b * (1 - params.delta) * x)
    prob = 1 - math.exp(-b * params.delta * x)
    if params.M is None:
        return _report(n, expected, threshold, prob, "general")
    M1 = params.M * b
    if M1 <= 1:
        return _report(n, expected, threshold, prob, "log-regime", M1=M1,
                       notes=(f"M1 = M beta1 beta2 = {M1:.6g} <= 1: log-regime bounds undefined",))
    tail = 2 / n ** (M1 - 1)
    return _report(n, expected, threshold, prob, "log-regime", n - tail, 1 - tail, M1)


def corollary1_bounds(n: int, p_n: float, delta: float, M1: Optional[float] = None) -> TheoremOneReport:
    """Homogeneous-graph forms, valid for ``0 < delta < 1/2``.

    * ``E L_n >= n - 2n exp(-(1 - delta) n p^2)``
    * ``P(L_n >= n - 2n exp(-(1 - 2 delta) n p^2)) >= 1 - exp(-delta n p^2)``
    * with ``n p^2 = M log n`` and ``1 < M1 < M``: ``P(L_n = n) >= 1 - 2 / n^(M1-1)``;
      the expectation form is reported as ``n - 2 / n^(M1-1)``.
    """
    if not 0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    x = n * p_n**2
    expected = n - 2 * n * math.exp(-(1 - delta) * x)
    threshold = n - 2 * n * math.exp(-(1 - 2 * delta) * x)
    prob = 1 - math.exp(-delta * x)
    if M1 is None:
        return _report(n, expected, threshold, prob, "general")
    M = x / math.log(n)
    if not 1 < M1 < M:
        raise ValueError(f"need 1 < M1 < M = {M:.6g}, got M1 = {M1}")
    tail = 2 / n ** (M1 - 1)
    return _report(n, expected, threshold, prob, "log-regime", n - tail, 1 - tail, M1)


def rgg_long_cycle_bound(n: int, r: float, delta1: float = 1.0, delta2: float = 1.0) -> tuple[float, float]:
    """``(n - n exp(-delta1 n r^2), 1 - exp(-delta2 n r^2))``: cycle-length threshold and its probability.

    The constants are not determined by the asymptotic argument; callers
    supply them.
    """
    x = n * r * r
    return n - n * math.exp(-delta1 * x), max(0.0, 1 - math.exp(-delta2 * x))


def rgg_hamiltonian_bound(omega: float, C: float = 1.0) -> float:
    """``1 - C exp(-omega)`` clamped at zero."""
    return max(0.0, 1 - C * math.exp(-omega))


def hamiltonian_radius(n: int, omega: float) -> float:
    """Radius with ``n r^2 = log n + 7 log log n + omega``."""
    x = math.log(n) + 7 * math.log(math.log(n)) + omega
    if x <= 0:
        raise ValueError(f"n r^2 = {x:.4g} is not positive")
    return math.sqrt(x / n)
