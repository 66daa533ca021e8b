"""Mean and SD estimators from reported five-number summaries.

Implements every published conversion for the three reporting
scenarios:

* S1 = {min, median, max; n}
* S2 = {q1, median, q3; n}
* S3 = all five values plus n

and the dispatcher :func:`estimate`, which applies the recommended
optimal pair per scenario (the Luo weighted means; the Wan range/IQR
SD estimators for S1/S2; the smoothly weighted shortcut estimator for
S3).  Earlier estimators (the Hozo step rule, the Bland fixed-weight
formulas) are provided for comparison studies but are never selected
by the dispatcher.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

from . import weights as _weights
from .errors import DomainError, ScenarioError, ValidationError
from .normal import quantile

__all__ = [
    "Scenario",
    "FiveNumberSummary",
    "MethodId",
    "EstimateResult",
    "EstimatorWarning",
    "xi",
    "eta",
    "sd_wan_s1",
    "sd_wan_s2",
    "sd_wan_s3",
    "weighted_sd",
    "sd_optimal_s3",
    "sd_hozo_s1",
    "sd_bland_s3",
    "mean_luo_s1",
    "mean_luo_s2",
    "mean_luo_s3",
    "mean_bland_s3",
    "luo_weight_s1",
    "luo_weight_s2",
    "luo_weights_s3",
    "estimate",
]


class EstimatorWarning(UserWarning):
    """Soft flags raised by estimators (clamped radicand, odd weights)."""


class Scenario(enum.Enum):
    """Which subset of the five-number summary a study reports."""

    S1 = "S1"  # min, median, max
    S2 = "S2"  # q1, median, q3
    S3 = "S3"  # all five

    @property
    def min_n(self) -> int:
        # five distinct ranks must exist for S1/S3; quartiles need n >= 4
        return 4 if self is Scenario.S2 else 5


@dataclass(frozen=True)
class FiveNumberSummary:
    """A study's reported quantile set plus sample size.

    ``minimum``/``maximum`` and ``q1``/``q3`` are individually optional
    so the three reporting scenarios can be encoded; the median and n
    are always required.  Construction validates field pattern,
    finiteness and ordering (ties are allowed; only strict inversions
    are errors).  Scenario-specific sample-size minima are enforced by
    :func:`estimate` and the ingestion pipeline, not here, so the
    published small-n weight behavior remains reachable for study.
    """

    n: int
    median: float
    minimum: float | None = None
    q1: float | None = None
    q3: float | None = None
    maximum: float | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValidationError("N_INVALID",
                                  f"n must be an integer, got {self.n!r}",
                                  field="n")
        if self.n < 1:
            raise ValidationError("N_INVALID",
                                  f"n must be positive, got {self.n}",
                                  field="n")
        for name in ("minimum", "q1", "median", "q3", "maximum"):
            v = getattr(self, name)
            if v is not None and not math.isfinite(v):
                raise ValidationError("NON_FINITE_VALUE",
                                      f"{name} is not finite: {v!r}",
                                      field=name)
        has_extremes = (self.minimum is not None) and \
                       (self.maximum is not None)
        has_quartiles = (self.q1 is not None) and (self.q3 is not None)
        one_sided = (self.minimum is None) != (self.maximum is None) or \
                    (self.q1 is None) != (self.q3 is None)
        if one_sided or not (has_extremes or has_quartiles):
            present = [f for f in ("minimum", "q1", "median", "q3", "maximum")
                       if getattr(self, f) is not None]
            raise ScenarioError(
                f"reported fields {present} match no supported scenario")
        chain = [("minimum", self.minimum), ("q1", self.q1),
                 ("median", self.median), ("q3", self.q3),
                 ("maximum", self.maximum)]
        chain = [(k, v) for k, v in chain if v is not None]
        for (ka, va), (kb, vb) in zip(chain, chain[1:]):
            if va > vb:
                raise ValidationError(
                    "ORDER_VIOLATION", f"{ka} > {kb} ({va} > {vb})",
                    field=kb)

    @property
    def scenario(self) -> Scenario:
        has_extremes = self.minimum is not None
        has_quartiles = self.q1 is not None
        if has_extremes and has_quartiles:
            return Scenario.S3
        return Scenario.S1 if has_extremes else Scenario.S2

    def _need(self, *names: str) -> None:
        missing = [x for x in names if getattr(self, x) is None]
        if missing:
            raise ScenarioError(
                f"estimator needs {', '.join(missing)} "
                f"(scenario {self.scenario.value} lacks them)")


class Target(enum.Enum):
    MEAN = "mean"
    SD = "sd"


class Family(enum.Enum):
    HOZO = "hozo"
    BLAND = "bland"
    WAN = "wan"
    LUO = "luo"
    SHI_OPTIMAL = "shi_optimal"


_VALID_METHODS = {
    (Family.HOZO, Target.SD, Scenario.S1),
    (Family.BLAND, Target.MEAN, Scenario.S3),
    (Family.BLAND, Target.SD, Scenario.S3),
    (Family.WAN, Target.SD, Scenario.S1),
    (Family.WAN, Target.SD, Scenario.S2),
    (Family.WAN, Target.SD, Scenario.S3),
    (Family.LUO, Target.MEAN, Scenario.S1),
    (Family.LUO, Target.MEAN, Scenario.S2),
    (Family.LUO, Target.MEAN, Scenario.S3),
    (Family.SHI_OPTIMAL, Target.SD, Scenario.S3),
}


@dataclass(frozen=True)
class MethodId:
    """Identifies one published estimator (family, target, scenario)."""

    family: Family
    target: Target
    scenario: Scenario

    def __post_init__(self):
        if (self.family, self.target, self.scenario) not in _VALID_METHODS:
            raise DomainError(
                f"no published {self.target.value} estimator of family "
                f"{self.family.value} for scenario {self.scenario.value}")

    @property
    def label(self) -> str:
        return f"{self.family.value}/{self.target.value}/{self.scenario.value}"


@dataclass
class EstimateResult:
    """Estimated mean and SD with method identifiers and weights used."""

    mean: float
    sd: float
    mean_method: MethodId
    sd_method: MethodId
    weights_used: list[tuple[str, float]]
    scenario: Scenario
    warnings: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# normalizing denominators

def xi(n: int) -> float:
    """Range denominator: 2 * Phi^-1((n - 0.375) / (n + 0.25))."""
    if n < 2:
        raise DomainError(f"xi is defined for n >= 2, got {n}")
    return 2.0 * quantile((n - 0.375) / (n + 0.25))


def eta(n: int) -> float:
    """IQR denominator: 2 * Phi^-1((0.75 n - 0.125) / (n + 0.25))."""
    if n < 1:
        raise DomainError(f"eta is defined for n >= 1, got {n}")
    return 2.0 * quantile((0.75 * n - 0.125) / (n + 0.25))


# ---------------------------------------------------------------------------
# SD estimators

def sd_wan_s1(s: FiveNumberSummary) -> float:
    """(max - min) / xi(n)."""
    s._need("minimum", "maximum")
    return (s.maximum - s.minimum) / xi(s.n)


def sd_wan_s2(s: FiveNumberSummary) -> float:
    """(q3 - q1) / eta(n)."""
    s._need("q1", "q3")
    return (s.q3 - s.q1) / eta(s.n)


def sd_wan_s3(s: FiveNumberSummary) -> float:
    """Equal-weight average of the range and IQR estimators."""
    return weighted_sd(s, 0.5)


def weighted_sd(s: FiveNumberSummary, w: float) -> float:
    """w * (max-min)/xi + (1-w) * (q3-q1)/eta.

    The three fixed estimators are special cases: w=1 is the range
    form, w=0 the IQR form, w=0.5 their plain average.
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"weight must lie in [0, 1], got {w}")
    s._need("minimum", "q1", "q3", "maximum")
    return w * sd_wan_s1(s) + (1.0 - w) * sd_wan_s2(s)


def sd_optimal_s3(s: FiveNumberSummary, mode: str = "shortcut") -> float:
    """Smoothly weighted SD estimator for the full summary.

    mode="shortcut"  (max-min)/theta1 + (q3-q1)/theta2
    mode="approx"    weighted_sd with the closed-form weight
                     1/(1 + 0.07 n^0.6); algebraically identical to the
                     shortcut
    mode="exact"     weighted_sd with the quadrature-exact optimal
                     weight (requires n = 4Q+1)
    """
    s._need("minimum", "q1", "q3", "maximum")
    if mode == "shortcut":
        t1, t2 = _weights.shortcut_coefficients(s.n)
        return (s.maximum - s.minimum) / t1 + (s.q3 - s.q1) / t2
    if mode == "approx":
        return weighted_sd(s, _weights.approx_weight(s.n))
    if mode == "exact":
        return weighted_sd(s, _weights.exact_optimal_weight(s.n))
    raise DomainError(f"unknown mode {mode!r}")


def sd_hozo_s1(s: FiveNumberSummary) -> float:
    """Range-based step rule (thresholds at n = 15 and n = 70)."""
    s._need("minimum", "maximum")
    a, m, b, n = s.minimum, s.median, s.maximum, s.n
    if n <= 15:
        return math.sqrt(((b - a) ** 2 + (a - 2 * m + b) ** 2 / 4.0) / 12.0)
    if n <= 70:
        return (b - a) / 4.0
    return (b - a) / 6.0


def sd_bland_s3(s: FiveNumberSummary) -> float:
    """Fixed-weight moment formula; independent of the sample size."""
    s._need("minimum", "q1", "q3", "maximum")
    a, q1, m, q3, b = s.minimum, s.q1, s.median, s.q3, s.maximum
    radicand = ((a * a + 2 * q1 * q1 + 2 * m * m + 2 * q3 * q3 + b * b) / 16.0
                + (a * q1 + q1 * m + m * q3 + q3 * b) / 8.0
                - (a + 2 * q1 + 2 * m + 2 * q3 + b) ** 2 / 64.0)
    if radicand < 0.0:
        warnings.warn("negative radicand clamped to zero (degenerate "
                      "summary)", EstimatorWarning, stacklevel=2)
        return 0.0
    return math.sqrt(radicand)


# ---------------------------------------------------------------------------
# mean estimators

def luo_weight_s1(n: int) -> float:
    """Weight on (min+max)/2 in the optimal S1 mean: 4 / (4 + n^0.75)."""
    return 4.0 / (4.0 + n ** 0.75)


def luo_weight_s2(n: int) -> float:
    """Weight on (q1+q3)/2 in the optimal S2 mean: 0.7 + 0.39 / n.

    Exceeds 1 for n < 2; callers flag but do not clamp.
    """
    return 0.7 + 0.39 / n


def luo_weights_s3(n: int) -> tuple[float, float]:
    """Weights on (min+max)/2 and (q1+q3)/2 in the optimal S3 mean."""
    return 2.2 / (2.2 + n ** 0.75), 0.7 - 0.72 / n ** 0.55


def _flag_weight(label: str, w: float, flags: list[str] | None) -> None:
    if not 0.0 <= w <= 1.0:
        msg = f"published weight {label}={w:.4g} lies outside [0, 1]"
        warnings.warn(msg, EstimatorWarning, stacklevel=3)
        if flags is not None:
            flags.append(msg)


def mean_luo_s1(s: FiveNumberSummary, _flags: list[str] | None = None) -> float:
    """w * (min+max)/2 + (1-w) * median with w = 4/(4 + n^0.75)."""
    s._need("minimum", "maximum")
    w = luo_weight_s1(s.n)
    _flag_weight("w1", w, _flags)
    return w * (s.minimum + s.maximum) / 2.0 + (1.0 - w) * s.median


def mean_luo_s2(s: FiveNumberSummary, _flags: list[str] | None = None) -> float:
    """w * (q1+q3)/2 + (1-w) * median with w = 0.7 + 0.39/n."""
    s._need("q1", "q3")
    w = luo_weight_s2(s.n)
    _flag_weight("w2", w, _flags)
    return w * (s.q1 + s.q3) / 2.0 + (1.0 - w) * s.median


def mean_luo_s3(s: FiveNumberSummary, _flags: list[str] | None = None) -> float:
    """Optimal three-component combination for the full summary."""
    s._need("minimum", "q1", "q3", "maximum")
    w1, w2 = luo_weights_s3(s.n)
    _flag_weight("w3,1", w1, _flags)
    _flag_weight("w3,2", w2, _flags)
    return (w1 * (s.minimum + s.maximum) / 2.0
            + w2 * (s.q1 + s.q3) / 2.0
            + (1.0 - w1 - w2) * s.median)


def mean_bland_s3(s: FiveNumberSummary) -> float:
    """(min + 2 q1 + 2 median + 2 q3 + max) / 8; independent of n."""
    s._need("minimum", "q1", "q3", "maximum")
    return (s.minimum + 2 * s.q1 + 2 * s.median + 2 * s.q3
            + s.maximum) / 8.0


# ---------------------------------------------------------------------------
# dispatch

def estimate(s: FiveNumberSummary) -> EstimateResult:
    """Apply the recommended optimal mean/SD pair for the scenario.

    S1 -> (Luo S1 mean, range SD); S2 -> (Luo S2 mean, IQR SD);
    S3 -> (Luo S3 mean, smoothly weighted shortcut SD).
    """
    scen = s.scenario
    if s.n < scen.min_n:
        raise ValidationError(
            "N_TOO_SMALL",
            f"scenario {scen.value} needs n >= {scen.min_n}, got {s.n}",
            field="n")
    flags: list[str] = []
    wlist: list[tuple[str, float]] = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EstimatorWarning)
        if scen is Scenario.S1:
            mean = mean_luo_s1(s, flags)
            sd = sd_wan_s1(s)
            mean_method = MethodId(Family.LUO, Target.MEAN, scen)
            sd_method = MethodId(Family.WAN, Target.SD, scen)
            wlist = [("w1", luo_weight_s1(s.n)), ("xi", xi(s.n))]
        elif scen is Scenario.S2:
            mean = mean_luo_s2(s, flags)
            sd = sd_wan_s2(s)
            mean_method = MethodId(Family.LUO, Target.MEAN, scen)
            sd_method = MethodId(Family.WAN, Target.SD, scen)
            wlist = [("w2", luo_weight_s2(s.n)), ("eta", eta(s.n))]
        else:
            mean = mean_luo_s3(s, flags)
            sd = sd_optimal_s3(s, mode="shortcut")
            mean_method = MethodId(Family.LUO, Target.MEAN, scen)
            sd_method = MethodId(Family.SHI_OPTIMAL, Target.SD, scen)
            w31, w32 = luo_weights_s3(s.n)
            t1, t2 = _weights.shortcut_coefficients(s.n)
            w_opt = _weights.approx_weight(s.n)
            wlist = [("w3,1", w31), ("w3,2", w32),
                     ("w_opt", w_opt), ("1-w_opt", 1.0 - w_opt),
                     ("theta1", t1), ("theta2", t2)]
    return EstimateResult(mean=mean, sd=sd, mean_method=mean_method,
                          sd_method=sd_method, weights_used=wlist,
                          scenario=scen, warnings=flags)
