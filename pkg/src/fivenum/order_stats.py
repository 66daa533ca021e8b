"""Moments of standard-normal order statistics.

Means, variances and covariances of the order statistics
Z_(1) <= ... <= Z_(n), computed by adaptive composite Gauss-Legendre
quadrature of the (log-space) order-statistic densities, with an
independent Monte Carlo oracle for validation.  The module is
specialized (but not restricted) to the five summary ranks
{1, Q+1, 2Q+1, 3Q+1, n} of a sample of size n = 4Q+1, which carry the
five-number summary.

Quadrature blocks are memoized on disk, keyed by (n, tolerance);
deleting the cache only costs recomputation time.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from math import lgamma, sqrt
from pathlib import Path

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.stats import beta as _beta_dist

from . import normal
from ._kernels import block_summaries, quantile_transform
from .errors import DomainError, NumericError
from .streams import open_uniforms, stream_rng

__all__ = [
    "OrderIndex",
    "OrderStatMoments",
    "single_order_pdf",
    "joint_order_pdf",
    "mean_of",
    "cov_of",
    "summary_moments",
    "mc_oracle",
    "summary_ranks",
    "clear_cache",
]

#: integration domain; the density mass outside is < 1e-16 for n <= ~10^4
_X_LIMIT = 9.0
#: per-side probability mass allowed outside the quadrature bracket
_BRACKET_EPS = 1e-16
_GL_ORDER = 24
_MAX_PANELS_1D = 4096
_MAX_PANELS_2D = 512

_gl_nodes, _gl_weights = leggauss(_GL_ORDER)

_CACHE_VERSION = 1
_CACHE_ENV = "FIVENUM_CACHE_DIR"


@dataclass(frozen=True)
class OrderIndex:
    """Rank i (1-based) within a sample of size n."""

    n: int
    i: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"sample size must be >= 1, got {self.n}")
        if not 1 <= self.i <= self.n:
            raise DomainError(
                f"rank must satisfy 1 <= i <= n, got i={self.i}, n={self.n}")


def summary_ranks(n: int) -> tuple[int, int, int, int, int]:
    """The five ranks carrying the five-number summary of n = 4Q+1 draws."""
    q, rem = divmod(n - 1, 4)
    if rem != 0 or q < 1:
        raise DomainError(
            f"summary ranks are defined for n = 4Q+1 with Q >= 1, got n={n}")
    return (1, q + 1, 2 * q + 1, 3 * q + 1, n)


@dataclass
class OrderStatMoments:
    """Means and covariances of selected order statistics of n draws.

    ``means`` maps rank -> E[Z_(i)]; ``cov`` maps (i, j) with i <= j to
    Cov(Z_(i), Z_(j)).  ``precision`` is the largest estimated absolute
    error over all entries; for the Monte Carlo method the per-entry
    standard errors are kept in ``mean_se`` / ``cov_se``.
    """

    n: int
    means: dict[int, float]
    cov: dict[tuple[int, int], float]
    method: str  # "quadrature" | "monte_carlo"
    precision: float
    mean_se: dict[int, float] = field(default_factory=dict)
    cov_se: dict[tuple[int, int], float] = field(default_factory=dict)

    def mean(self, i: int) -> float:
        return self.means[i]

    def covariance(self, i: int, j: int) -> float:
        return self.cov[(i, j) if i <= j else (j, i)]

    def variance(self, i: int) -> float:
        return self.cov[(i, i)]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(sorted(self.means))

    # Derived spreads used by the optimal-weight computation.  With
    # ranks (r1, r2, r3, r4, r5) = (1, Q+1, 2Q+1, 3Q+1, n):

    @property
    def var_range(self) -> float:
        """Var(Z_(n) - Z_(1))."""
        r = self.ranks
        return (self.variance(r[0]) + self.variance(r[4])
                - 2.0 * self.covariance(r[0], r[4]))

    @property
    def var_quartile_spread(self) -> float:
        """Var(Z_(3Q+1) - Z_(Q+1))."""
        r = self.ranks
        return (self.variance(r[1]) + self.variance(r[3])
                - 2.0 * self.covariance(r[1], r[3]))

    @property
    def cov_range_quartile_spread(self) -> float:
        """Cov(Z_(n) - Z_(1), Z_(3Q+1) - Z_(Q+1))."""
        r = self.ranks
        return (self.covariance(r[3], r[4]) - self.covariance(r[1], r[4])
                - self.covariance(r[0], r[3]) + self.covariance(r[0], r[1]))


# ---------------------------------------------------------------------------
# densities

def _log_comb_single(n: int, i: int) -> float:
    return lgamma(n + 1) - lgamma(i) - lgamma(n - i + 1)


def _log_single_pdf(n: int, i: int, x: np.ndarray) -> np.ndarray:
    lc = _log_comb_single(n, i)
    out = lc + normal.log_pdf(x)
    if i > 1:
        out = out + (i - 1) * normal.log_cdf(x)
    if i < n:
        out = out + (n - i) * normal.log_tail(x)
    return out


def single_order_pdf(idx: OrderIndex, x) -> float | np.ndarray:
    """Density of the i-th order statistic of n standard normal draws."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    arr = np.asarray(x, dtype=float)
    val = np.exp(_log_single_pdf(idx.n, idx.i, arr))
    return float(val) if scalar else val


def _log_diff_cdf(lcdf_hi: np.ndarray, lcdf_lo: np.ndarray) -> np.ndarray:
    """log(Phi(hi) - Phi(lo)) from the log CDFs, stable in both tails."""
    d = lcdf_lo - lcdf_hi
    with np.errstate(divide="ignore", invalid="ignore"):
        out = lcdf_hi + np.log1p(-np.exp(d))
    return np.where(d >= 0.0, -np.inf, out)


def joint_order_pdf(n: int, i: int, j: int, x, y) -> float | np.ndarray:
    """Joint density of (Z_(i), Z_(j)) for ranks i < j; zero when x >= y."""
    if not 1 <= i < j <= n:
        raise DomainError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    scalar = (np.isscalar(x) or np.ndim(x) == 0) and \
             (np.isscalar(y) or np.ndim(y) == 0)
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    xa, ya = np.broadcast_arrays(xa, ya)
    lc = (lgamma(n + 1) - lgamma(i) - lgamma(j - i) - lgamma(n - j + 1))
    out = lc + normal.log_pdf(xa) + normal.log_pdf(ya)
    if i > 1:
        out = out + (i - 1) * normal.log_cdf(xa)
    if j - i - 1 > 0:
        out = out + (j - i - 1) * _log_diff_cdf(normal.log_cdf(ya),
                                                normal.log_cdf(xa))
    if j < n:
        out = out + (n - j) * normal.log_tail(ya)
    val = np.where(xa < ya, np.exp(out), 0.0)
    return float(val) if scalar else val


# ---------------------------------------------------------------------------
# quadrature

def _bracket(n: int, i: int) -> tuple[float, float]:
    """x-interval outside which rank i holds < _BRACKET_EPS mass per side."""
    ulo = float(_beta_dist.ppf(_BRACKET_EPS, i, n - i + 1))
    uhi = float(_beta_dist.isf(_BRACKET_EPS, i, n - i + 1))
    lo = normal.quantile(ulo) if 0.0 < ulo < 1.0 else -_X_LIMIT
    hi = normal.quantile(uhi) if 0.0 < uhi < 1.0 else _X_LIMIT
    return max(lo, -_X_LIMIT), min(hi, _X_LIMIT)


def _panels(lo: float, hi: float, k: int) -> tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(lo, hi, k + 1)
    half = 0.5 * (edges[1] - edges[0])
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half * _gl_nodes[None, :]).ravel()
    w = np.tile(half * _gl_weights, k)
    return x, w


def _moments_1d(n: int, i: int, tol: float) -> tuple[float, float, float]:
    """(mean, variance, error estimate) of rank i by adaptive quadrature."""
    lo, hi = _bracket(n, i)
    k = 8
    prev: tuple[float, float] | None = None
    delta = float("inf")
    while k <= _MAX_PANELS_1D:
        x, w = _panels(lo, hi, k)
        f = w * np.exp(_log_single_pdf(n, i, x))
        norm_ = float(f.sum())
        mean = float((f * x).sum()) / norm_
        var = float((f * (x - mean) ** 2).sum()) / norm_
        if prev is not None:
            delta = max(abs(mean - prev[0]), abs(var - prev[1]))
            if delta < 0.5 * tol:
                return mean, var, delta
        prev = (mean, var)
        k *= 2
    raise NumericError(
        f"order-statistic quadrature did not converge for n={n}, i={i}",
        achieved_tol=delta)


def _cov_2d(n: int, i: int, j: int, mu_i: float, mu_j: float,
            tol: float) -> tuple[float, float]:
    """(Cov(Z_(i), Z_(j)), error estimate) for i < j, centered integrand.

    Iterated composite Gauss-Legendre: the outer integral runs over y
    (rank j); for each outer node the inner x-interval is
    [xlo, min(y, xhi)], so the integrand stays smooth in both variables
    (no discontinuity along the diagonal enters any panel).
    """
    xlo, xhi = _bracket(n, i)
    ylo, yhi = _bracket(n, j)
    ylo = max(ylo, xlo)
    lc = lgamma(n + 1) - lgamma(i) - lgamma(j - i) - lgamma(n - j + 1)
    mid_pow = j - i - 1

    def attempt(k: int) -> float:
        y, wy = _panels(ylo, yhi, k)
        log_y = normal.log_pdf(y)
        if j < n:
            log_y = log_y + (n - j) * normal.log_tail(y)
        lcdf_y = normal.log_cdf(y)
        up = np.minimum(y, xhi)
        ok = up > xlo
        t, wt = _panels(-1.0, 1.0, k)
        halfw = 0.5 * (up[ok] - xlo)
        X = xlo + halfw[:, None] * (t[None, :] + 1.0)
        WX = halfw[:, None] * wt[None, :]
        g = normal.log_pdf(X)
        if i > 1:
            g = g + (i - 1) * normal.log_cdf(X)
        if mid_pow > 0:
            g = g + mid_pow * _log_diff_cdf(lcdf_y[ok][:, None],
                                            normal.log_cdf(X))
        fx = np.exp(g) * WX
        inner_c = (fx * (X - mu_i)).sum(axis=1)
        inner_n = fx.sum(axis=1)
        outer = wy[ok] * np.exp(lc + log_y[ok])
        raw = float((outer * (y[ok] - mu_j) * inner_c).sum())
        norm_ = float((outer * inner_n).sum())
        return raw / norm_

    k = 8
    prev: float | None = None
    delta = float("inf")
    while k <= _MAX_PANELS_2D:
        cov = attempt(k)
        if prev is not None:
            delta = abs(cov - prev)
            if delta < 0.5 * tol:
                return cov, delta
        prev = cov
        k *= 2
    raise NumericError(
        f"2-D order-statistic quadrature did not converge for "
        f"n={n}, pair=({i},{j})", achieved_tol=delta)


def mean_of(idx: OrderIndex, tol: float = 1e-9) -> float:
    """E[Z_(i)] by adaptive quadrature (absolute error <= tol)."""
    if idx.n == 1:
        return 0.0
    mean, _, _ = _moments_1d(idx.n, idx.i, tol)
    return mean


def cov_of(n: int, i: int, j: int, tol: float = 1e-8) -> float:
    """Cov(Z_(i), Z_(j)) by adaptive quadrature, for 1 <= i <= j <= n."""
    if not 1 <= i <= j <= n:
        raise DomainError(f"need 1 <= i <= j <= n, got ({i},{j}), n={n}")
    if i == j:
        _, var, _ = _moments_1d(n, i, tol)
        return var
    mu_i, _, _ = _moments_1d(n, i, tol)
    mu_j, _, _ = _moments_1d(n, j, tol)
    cov, _ = _cov_2d(n, i, j, mu_i, mu_j, tol)
    return cov


# ---------------------------------------------------------------------------
# summary blocks with symmetry exploitation and on-disk memoization

def _cache_dir() -> Path:
    env = os.environ.get(_CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fivenum" / "moments"


def _cache_path(n: int, tol: float) -> Path:
    return _cache_dir() / f"moments_n{n}_tol{tol:g}_v{_CACHE_VERSION}.json"


def clear_cache() -> int:
    """Remove all cached moment blocks; returns the number removed."""
    d = _cache_dir()
    if not d.is_dir():
        return 0
    removed = 0
    for p in d.glob("moments_n*.json"):
        p.unlink(missing_ok=True)
        removed += 1
    return removed


def _load_cached(n: int, tol: float) -> OrderStatMoments | None:
    path = _cache_path(n, tol)
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if payload.get("version") != _CACHE_VERSION or payload.get("n") != n:
        return None
    return OrderStatMoments(
        n=n,
        means={int(k): v for k, v in payload["means"].items()},
        cov={tuple(int(t) for t in k.split(",")): v
             for k, v in payload["cov"].items()},
        method=payload["method"],
        precision=payload["precision"],
    )


def _store_cached(m: OrderStatMoments, tol: float) -> None:
    d = _cache_dir()
    try:
        d.mkdir(parents=True, exist_ok=True)
        payload = {
            "version": _CACHE_VERSION,
            "n": m.n,
            "tolerance": tol,
            "method": m.method,
            "precision": m.precision,
            "means": {str(k): v for k, v in m.means.items()},
            "cov": {f"{i},{j}": v for (i, j), v in m.cov.items()},
        }
        # atomic publish so concurrent readers never see partial files
        fd, tmp = tempfile.mkstemp(dir=d, suffix=".json")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, _cache_path(m.n, tol))
    except OSError:
        pass  # cache failures must never affect results


def summary_moments(n: int, tol: float = 1e-8,
                    use_cache: bool = True) -> OrderStatMoments:
    """Moment block for the five summary ranks of n = 4Q+1 draws.

    Returns all five means and the full 5x5 covariance block, computing
    only the nonredundant entries: under z -> -z the ranks reflect as
    i -> n+1-i, so E[Z_(i)] = -E[Z_(n+1-i)] and
    Cov(Z_(i), Z_(j)) = Cov(Z_(n+1-j), Z_(n+1-i)).
    """
    r1, r2, r3, r4, r5 = summary_ranks(n)
    if use_cache:
        cached = _load_cached(n, tol)
        if cached is not None:
            return cached

    worst = 0.0

    def track(err: float) -> None:
        nonlocal worst
        worst = max(worst, err)

    mu1, v1, e = _moments_1d(n, r1, tol)
    track(e)
    mu2, v2, e = _moments_1d(n, r2, tol)
    track(e)
    _, v3, e = _moments_1d(n, r3, tol)
    track(e)

    means = {r1: mu1, r2: mu2, r3: 0.0, r4: -mu2, r5: -mu1}

    pairs = {}
    for (i, j, mi, mj) in (
        (r1, r2, mu1, mu2),
        (r1, r3, mu1, 0.0),
        (r1, r4, mu1, -mu2),
        (r1, r5, mu1, -mu1),
        (r2, r3, mu2, 0.0),
        (r2, r4, mu2, -mu2),
    ):
        c, e = _cov_2d(n, i, j, mi, mj, tol)
        track(e)
        pairs[(i, j)] = c

    cov = {
        (r1, r1): v1, (r2, r2): v2, (r3, r3): v3,
        (r4, r4): v2, (r5, r5): v1,
        (r1, r2): pairs[(r1, r2)],
        (r1, r3): pairs[(r1, r3)],
        (r1, r4): pairs[(r1, r4)],
        (r1, r5): pairs[(r1, r5)],
        (r2, r3): pairs[(r2, r3)],
        (r2, r4): pairs[(r2, r4)],
        # reflections: Cov(i,j) = Cov(n+1-j, n+1-i)
        (r2, r5): pairs[(r1, r4)],
        (r3, r4): pairs[(r2, r3)],
        (r3, r5): pairs[(r1, r3)],
        (r4, r5): pairs[(r1, r2)],
    }
    result = OrderStatMoments(n=n, means=means, cov=cov,
                              method="quadrature", precision=worst)
    if use_cache:
        _store_cached(result, tol)
    return result


# ---------------------------------------------------------------------------
# Monte Carlo oracle

def mc_oracle(n: int, reps: int = 1_000_000, seed: int = 0,
              streams: int = 100) -> OrderStatMoments:
    """Brute-force sample moments of the five summary ranks.

    Replications are split over ``streams`` independent Philox streams
    derived from (seed, stream index) and combined in stream order, so
    the result depends only on (n, reps, seed, streams).  Standard
    errors come from the spread of per-stream estimates.
    """
    if reps < 2 * streams:
        streams = max(2, reps // 100)
    ranks = summary_ranks(n)
    q = (n - 1) // 4
    per = reps // streams
    extras = reps - per * streams

    s_mean = np.zeros((streams, 5))
    s_cov = np.zeros((streams, 5, 5))
    weights = np.zeros(streams)
    max_rows = max(1, min(per, 8_000_000 // max(n, 1)))
    for s in range(streams):
        todo = per + (1 if s < extras else 0)
        weights[s] = todo
        rng = stream_rng(seed, "order-oracle", n, s)
        acc = np.zeros(5)
        accsq = np.zeros((5, 5))
        done = 0
        while done < todo:
            rows = min(max_rows, todo - done)
            u = open_uniforms(rng, (rows, n))
            z = quantile_transform(u)
            vals = block_summaries(z.reshape(rows, n), q)[:, :5]
            acc += vals.sum(axis=0)
            accsq += vals.T @ vals
            done += rows
        m = acc / todo
        s_mean[s] = m
        s_cov[s] = (accsq - todo * np.outer(m, m)) / (todo - 1)

    w = weights / weights.sum()
    mean_hat = w @ s_mean
    cov_hat = np.einsum("s,sij->ij", w, s_cov)
    mean_se = s_mean.std(axis=0, ddof=1) / sqrt(streams)
    cov_se = s_cov.std(axis=0, ddof=1) / sqrt(streams)

    means = {r: float(mean_hat[a]) for a, r in enumerate(ranks)}
    cov = {}
    cse = {}
    for a, i in enumerate(ranks):
        for b, j in enumerate(ranks):
            if i <= j:
                cov[(i, j)] = float(cov_hat[a, b])
                cse[(i, j)] = float(cov_se[a, b])
    return OrderStatMoments(
        n=n, means=means, cov=cov, method="monte_carlo",
        precision=float(max(mean_se.max(), cov_se.max())),
        mean_se={r: float(mean_se[a]) for a, r in enumerate(ranks)},
        cov_se=cse,
    )
