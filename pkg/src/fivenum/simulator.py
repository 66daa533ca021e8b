"""Monte Carlo studies of the SD estimators.

Reproduces the three empirical studies behind the method: the
histogram comparison of the range- and IQR-based estimators at
n in {5, 85, 401}, the normal-data relative-MSE study over a grid of
sample sizes, and the four skewed-distribution robustness studies.

All randomness flows through counter-based Philox streams keyed by
(seed, study, distribution, n, batch index); batches are combined in
index order with compensated sums, so every report is bit-identical
for a given configuration regardless of chunking or scheduling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as _st

from ._kernels import block_summaries, quantile_transform
from .errors import ConfigError, DomainError
from .estimators import FiveNumberSummary, eta, xi
from .normal import quantile
from .streams import KahanSum, open_uniforms, stream_rng
from .weights import shortcut_coefficients

__all__ = [
    "DistributionSpec",
    "SimulationConfig",
    "RmseReport",
    "HistogramReport",
    "ESTIMATOR_LABELS",
    "DEFAULT_N_GRID",
    "sample_summary",
    "run_rmse_study",
    "run_histogram_study",
    "run_skewed_suite",
    "asymptotic_checks",
]

#: the four compared SD estimators, keyed by their weight on the range
#: component: w=1 (range), w=0 (IQR), w=0.5 (plain average), and the
#: smoothly weighted optimum.
ESTIMATOR_LABELS = ("s1", "s0", "s05", "sopt")

#: n = 4Q+1 for Q in {1,2,3,5,8,13,21,35,50,80,110,150,200}
DEFAULT_N_GRID = (5, 9, 13, 21, 33, 53, 85, 141, 201, 321, 441, 601, 801)

_BATCHES = 50
_CHUNK_BUDGET = 4_000_000  # floats per generation chunk


@dataclass(frozen=True)
class DistributionSpec:
    """Sampling distribution with analytically derived true moments."""

    family: str
    params: tuple[float, ...]
    true_mean: float
    true_sd: float

    def __post_init__(self):
        if not self.true_sd > 0:
            raise ConfigError(f"true SD must be positive, got {self.true_sd}")

    @classmethod
    def normal(cls, mean: float = 0.0, sd: float = 1.0) -> "DistributionSpec":
        if sd <= 0:
            raise ConfigError("normal sd must be positive")
        return cls("normal", (mean, sd), mean, sd)

    @classmethod
    def lognormal(cls, mu: float = 4.0, sigma: float = 0.3,
                  ) -> "DistributionSpec":
        if sigma <= 0:
            raise ConfigError("lognormal sigma must be positive")
        mean = math.exp(mu + sigma ** 2 / 2.0)
        sd = math.sqrt((math.exp(sigma ** 2) - 1.0)
                       * math.exp(2.0 * mu + sigma ** 2))
        return cls("lognormal", (mu, sigma), mean, sd)

    @classmethod
    def chi_square(cls, df: float = 10.0) -> "DistributionSpec":
        if df <= 0:
            raise ConfigError("chi-square df must be positive")
        return cls("chi_square", (df,), df, math.sqrt(2.0 * df))

    @classmethod
    def beta(cls, a: float = 9.0, b: float = 4.0) -> "DistributionSpec":
        if a <= 0 or b <= 0:
            raise ConfigError("beta parameters must be positive")
        mean = a / (a + b)
        var = a * b / ((a + b) ** 2 * (a + b + 1.0))
        return cls("beta", (a, b), mean, math.sqrt(var))

    @classmethod
    def weibull(cls, k: float = 2.0, lam: float = 35.0) -> "DistributionSpec":
        if k <= 0 or lam <= 0:
            raise ConfigError("weibull parameters must be positive")
        g1 = math.gamma(1.0 + 1.0 / k)
        g2 = math.gamma(1.0 + 2.0 / k)
        return cls("weibull", (k, lam), lam * g1,
                   lam * math.sqrt(g2 - g1 * g1))

    def ppf(self, u: np.ndarray) -> np.ndarray:
        """Inverse CDF; uniforms must lie strictly inside (0, 1)."""
        if self.family == "normal":
            mean, sd = self.params
            return mean + sd * quantile_transform(u)
        if self.family == "lognormal":
            mu, sigma = self.params
            return np.exp(mu + sigma * quantile_transform(u))
        if self.family == "chi_square":
            return _st.chi2.ppf(u, self.params[0])
        if self.family == "beta":
            return _st.beta.ppf(u, *self.params)
        if self.family == "weibull":
            k, lam = self.params
            return lam * (-np.log1p(-u)) ** (1.0 / k)
        raise ConfigError(f"unknown family {self.family!r}")

    def label(self) -> str:
        params = ",".join(f"{p:g}" for p in self.params)
        return f"{self.family}({params})"


def _check_grid(n_grid) -> tuple[int, ...]:
    grid = tuple(int(n) for n in n_grid)
    if not grid:
        raise ConfigError("n grid must be nonempty")
    for n in grid:
        if n < 5 or (n - 1) % 4 != 0:
            raise ConfigError(
                f"grid sample sizes must have the form 4Q+1 (Q >= 1), "
                f"got {n}")
    return grid


@dataclass(frozen=True)
class SimulationConfig:
    """Configuration of one RMSE study."""

    dist: DistributionSpec
    n_grid: tuple[int, ...] = DEFAULT_N_GRID
    replications: int = 100_000
    seed: int = 0
    estimators: tuple[str, ...] = ESTIMATOR_LABELS

    def __post_init__(self):
        object.__setattr__(self, "n_grid", _check_grid(self.n_grid))
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        unknown = set(self.estimators) - set(ESTIMATOR_LABELS)
        if unknown:
            raise ConfigError(f"unknown estimator labels {sorted(unknown)}")

    @classmethod
    def from_dict(cls, payload: dict) -> "SimulationConfig":
        makers = {
            "normal": DistributionSpec.normal,
            "lognormal": DistributionSpec.lognormal,
            "chi_square": DistributionSpec.chi_square,
            "beta": DistributionSpec.beta,
            "weibull": DistributionSpec.weibull,
        }
        fam = payload.get("family")
        if fam not in makers:
            raise ConfigError(f"unknown family {fam!r}")
        dist = makers[fam](*payload.get("params", ()))
        return cls(
            dist=dist,
            n_grid=tuple(payload.get("n_grid", DEFAULT_N_GRID)),
            replications=int(payload.get("replications", 100_000)),
            seed=int(payload.get("seed", 0)),
            estimators=tuple(payload.get("estimators", ESTIMATOR_LABELS)),
        )


def sample_summary(dist: DistributionSpec, n: int,
                   rng: np.random.Generator):
    """Draw one sample; return (FiveNumberSummary, sample SD).

    The summary fields are ranks 1, Q+1, 2Q+1, 3Q+1, n of the sorted
    sample; the SD uses the usual n-1 divisor.
    """
    if n < 5 or (n - 1) % 4 != 0:
        raise DomainError(f"sample size must be 4Q+1 with Q >= 1, got {n}")
    u = open_uniforms(rng, (1, n))
    row = block_summaries(dist.ppf(u), (n - 1) // 4)[0]
    summary = FiveNumberSummary(n=n, minimum=row[0], q1=row[1],
                                median=row[2], q3=row[3], maximum=row[4])
    return summary, float(row[5])


def _estimates_from_block(vals: np.ndarray, n: int) -> dict[str, np.ndarray]:
    a, q1, q3, b = vals[:, 0], vals[:, 1], vals[:, 3], vals[:, 4]
    s1 = (b - a) / xi(n)
    s0 = (q3 - q1) / eta(n)
    t1, t2 = shortcut_coefficients(n)
    return {
        "s1": s1,
        "s0": s0,
        "s05": 0.5 * (s1 + s0),
        "sopt": (b - a) / t1 + (q3 - q1) / t2,
    }


@dataclass
class RmseReport:
    """Relative MSE of each estimator vs the true sample SD, per n.

    ``rmse[(n, label)]`` is sum((S - sigma)^2) / sum((S_sam - sigma)^2)
    over all replications; ``se`` holds batch-means standard errors of
    that ratio, and ``mse_sample_sd[n]`` the reference mean squared
    error of the sample SD itself.
    """

    dist_label: str
    true_sd: float
    replications: int
    seed: int
    n_grid: tuple[int, ...]
    estimators: tuple[str, ...]
    rmse: dict[tuple[int, str], float] = field(default_factory=dict)
    se: dict[tuple[int, str], float] = field(default_factory=dict)
    mse_sample_sd: dict[int, float] = field(default_factory=dict)

    def ln_rmse(self, n: int, label: str) -> float:
        return math.log(self.rmse[(n, label)])

    def to_rows(self) -> list[dict]:
        rows = []
        for n in self.n_grid:
            for lab in self.estimators:
                rows.append({
                    "n": n,
                    "estimator": lab,
                    "rmse": self.rmse[(n, lab)],
                    "ln_rmse": self.ln_rmse(n, lab),
                    "mc_se": self.se[(n, lab)],
                    "mse_sample_sd": self.mse_sample_sd[n],
                })
        return rows

    def to_json(self) -> str:
        return json.dumps({
            "study": "rmse",
            "distribution": self.dist_label,
            "true_sd": self.true_sd,
            "replications": self.replications,
            "seed": self.seed,
            "rows": self.to_rows(),
        }, indent=2)

    def to_csv(self) -> str:
        lines = ["n,estimator,rmse,ln_rmse,mc_se,mse_sample_sd"]
        for r in self.to_rows():
            lines.append(f"{r['n']},{r['estimator']},{r['rmse']!r},"
                         f"{r['ln_rmse']!r},{r['mc_se']!r},"
                         f"{r['mse_sample_sd']!r}")
        return "\n".join(lines) + "\n"


def _study_chunks(total: int, n: int):
    rows = max(1, _CHUNK_BUDGET // n)
    done = 0
    while done < total:
        take = min(rows, total - done)
        yield take
        done += take


def run_rmse_study(config: SimulationConfig) -> RmseReport:
    """RMSE study over the configured grid (50 batch-means batches)."""
    dist = config.dist
    sigma = dist.true_sd
    report = RmseReport(dist_label=dist.label(), true_sd=sigma,
                        replications=config.replications, seed=config.seed,
                        n_grid=config.n_grid, estimators=config.estimators)
    batches = min(_BATCHES, config.replications)
    for n in config.n_grid:
        q = (n - 1) // 4
        per, extra = divmod(config.replications, batches)
        num = {lab: np.zeros(batches) for lab in config.estimators}
        den = np.zeros(batches)
        for b in range(batches):
            todo = per + (1 if b < extra else 0)
            if todo == 0:
                continue
            rng = stream_rng(config.seed, "rmse", dist.label(), n, b)
            acc = {lab: KahanSum() for lab in config.estimators}
            acc_den = KahanSum()
            for rows in _study_chunks(todo, n):
                u = open_uniforms(rng, (rows, n))
                vals = block_summaries(dist.ppf(u), q)
                ests = _estimates_from_block(vals, n)
                for lab in config.estimators:
                    acc[lab].add(float(((ests[lab] - sigma) ** 2).sum()))
                acc_den.add(float(((vals[:, 5] - sigma) ** 2).sum()))
            for lab in config.estimators:
                num[lab][b] = acc[lab].total
            den[b] = acc_den.total
        den_total = den.sum()
        for lab in config.estimators:
            report.rmse[(n, lab)] = float(num[lab].sum() / den_total)
            ratios = num[lab] / np.where(den > 0, den, 1.0)
            report.se[(n, lab)] = float(ratios.std(ddof=1)
                                        / math.sqrt(batches)) \
                if batches > 1 else 0.0
        report.mse_sample_sd[n] = float(den_total / config.replications)
    return report


@dataclass
class HistogramReport:
    """Histograms of the range- and IQR-based estimates per sample size.

    For each (n, estimator in {"s1", "s0"}): fixed bin edges, counts
    summing to the replication count (outliers clipped into the end
    bins), plus the Monte Carlo mean, variance and skewness of the
    estimates.
    """

    replications: int
    seed: int
    n_list: tuple[int, ...]
    bin_edges: dict[int, list[float]] = field(default_factory=dict)
    counts: dict[tuple[int, str], list[int]] = field(default_factory=dict)
    mean: dict[tuple[int, str], float] = field(default_factory=dict)
    variance: dict[tuple[int, str], float] = field(default_factory=dict)
    skewness: dict[tuple[int, str], float] = field(default_factory=dict)

    def to_json(self) -> str:
        rows = []
        for n in self.n_list:
            for lab in ("s1", "s0"):
                rows.append({
                    "n": n, "estimator": lab,
                    "mean": self.mean[(n, lab)],
                    "variance": self.variance[(n, lab)],
                    "skewness": self.skewness[(n, lab)],
                    "bin_edges": self.bin_edges[n],
                    "counts": self.counts[(n, lab)],
                })
        return json.dumps({
            "study": "histogram",
            "replications": self.replications,
            "seed": self.seed,
            "rows": rows,
        }, indent=2)

    def to_csv(self) -> str:
        lines = ["n,estimator,bin_lo,bin_hi,count"]
        for n in self.n_list:
            edges = self.bin_edges[n]
            for lab in ("s1", "s0"):
                for k, c in enumerate(self.counts[(n, lab)]):
                    lines.append(f"{n},{lab},{edges[k]!r},{edges[k + 1]!r},{c}")
        return "\n".join(lines) + "\n"


def run_histogram_study(n_list=(5, 85, 401), replications: int = 100_000,
                        seed: int = 0, bins: int = 120) -> HistogramReport:
    """Histogram study of the two elementary estimators on N(0, 1) data."""
    n_list = _check_grid(n_list)
    dist = DistributionSpec.normal(0.0, 1.0)
    report = HistogramReport(replications=replications, seed=seed,
                             n_list=n_list)
    batches = min(_BATCHES, replications)
    for n in n_list:
        q = (n - 1) // 4
        edges = np.linspace(0.0, 3.0, bins + 1)
        report.bin_edges[n] = [float(e) for e in edges]
        per, extra = divmod(replications, batches)
        counts = {lab: np.zeros(bins, dtype=np.int64) for lab in ("s1", "s0")}
        moments = {lab: [KahanSum(), KahanSum(), KahanSum()]
                   for lab in ("s1", "s0")}
        for b in range(batches):
            todo = per + (1 if b < extra else 0)
            if todo == 0:
                continue
            rng = stream_rng(seed, "histogram", n, b)
            for rows in _study_chunks(todo, n):
                u = open_uniforms(rng, (rows, n))
                vals = block_summaries(dist.ppf(u), q)
                ests = _estimates_from_block(vals, n)
                for lab in ("s1", "s0"):
                    e = ests[lab]
                    clipped = np.clip(e, edges[0], np.nextafter(edges[-1], 0))
                    counts[lab] += np.histogram(clipped, bins=edges)[0]
                    moments[lab][0].add(float(e.sum()))
                    moments[lab][1].add(float((e ** 2).sum()))
                    moments[lab][2].add(float((e ** 3).sum()))
        for lab in ("s1", "s0"):
            m1 = moments[lab][0].total / replications
            m2 = moments[lab][1].total / replications
            m3 = moments[lab][2].total / replications
            var = m2 - m1 * m1
            report.counts[(n, lab)] = [int(c) for c in counts[lab]]
            report.mean[(n, lab)] = m1
            report.variance[(n, lab)] = var
            report.skewness[(n, lab)] = (
                (m3 - 3.0 * m1 * var - m1 ** 3) / var ** 1.5
                if var > 0 else 0.0)
    return report


def skewed_distributions() -> dict[str, DistributionSpec]:
    """The four skewed robustness-study distributions."""
    return {
        "lognormal": DistributionSpec.lognormal(4.0, 0.3),
        "chi_square": DistributionSpec.chi_square(10.0),
        "beta": DistributionSpec.beta(9.0, 4.0),
        "weibull": DistributionSpec.weibull(2.0, 35.0),
    }


def run_skewed_suite(replications: int = 100_000, seed: int = 0,
                     n_grid=DEFAULT_N_GRID) -> dict[str, RmseReport]:
    """RMSE studies for the four skewed distributions."""
    if replications < 1:
        raise ConfigError("replications must be >= 1")
    out = {}
    for name, dist in skewed_distributions().items():
        config = SimulationConfig(dist=dist, n_grid=n_grid,
                                  replications=replications, seed=seed)
        out[name] = run_rmse_study(config)
    return out


def asymptotic_checks(seed: int = 0, replications: int = 1_000_000,
                      n: int = 801) -> dict[str, float]:
    """Large-n constants: simulated n*MSE/sigma^2 values and the pure
    arithmetic identities linking them.

    Returns a dict with the simulated ``n_mse_sample_sd`` (limit 0.5),
    ``n_mse_iqr`` (limit 2.4758 / (4 Phi^-1(0.75)^2) = 1.3605), the
    arithmetic values of that constant, and the limiting RMSE ratio
    1.3605 / 0.5 = 2.721.
    """
    dist = DistributionSpec.normal(0.0, 1.0)
    config = SimulationConfig(dist=dist, n_grid=(n,),
                              replications=replications, seed=seed,
                              estimators=("s0",))
    report = run_rmse_study(config)
    sigma = dist.true_sd
    mse_sam = report.mse_sample_sd[n]
    mse_iqr = report.rmse[(n, "s0")] * mse_sam
    iqr_const = 2.4758 / (4.0 * quantile(0.75) ** 2)
    return {
        "n": float(n),
        "n_mse_sample_sd": n * mse_sam / sigma ** 2,
        "n_mse_iqr": n * mse_iqr / sigma ** 2,
        "iqr_constant_arithmetic": iqr_const,
        "limit_rmse_arithmetic": iqr_const / 0.5,
    }
