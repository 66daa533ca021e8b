"""Optimal weight between the range and IQR components of the SD
estimator.

The exact weight comes from order-statistic moments: with
V_r = Var(Z_(n) - Z_(1)), V_q = Var(Z_(3Q+1) - Z_(Q+1)) and
C = Cov of the two spreads,

    J(n) = (V_r / xi^2 - C / (xi eta)) / (V_q / eta^2 - C / (xi eta))
    w_opt(n) = 1 / (1 + J(n))

The closed-form approximation replaces J by 0.07 n^0.6, which also
yields the shortcut coefficients theta1/theta2 so the SD estimate
becomes (max-min)/theta1 + (q3-q1)/theta2.  This module computes all of
these, reproduces the published 100-row coefficient table, and fits the
power law c1 n^c2 + c0 to tabulated J values.
"""

from __future__ import annotations

import decimal
import warnings
from dataclasses import dataclass

import numpy as np

from . import order_stats
from .errors import DomainError, FitError
from .normal import quantile

__all__ = [
    "WeightTableRow",
    "PowerLawFit",
    "exact_J",
    "exact_optimal_weight",
    "approx_weight",
    "approx_J",
    "shortcut_coefficients",
    "generate_table",
    "table_to_csv",
    "fit_power_law",
    "round_half_away",
]

TABLE_CSV_HEADER = "Q,n,theta1,theta2,w_exact,w_approx"


@dataclass(frozen=True)
class WeightTableRow:
    """One row of the shortcut-coefficient table (n = 4Q+1).

    ``j`` holds the closed-form ratio 0.07 n^0.6 (so
    w_approx = 1/(1+j) by construction); ``w_exact`` is populated only
    when the quadrature-exact weight was requested.
    """

    q: int
    n: int
    theta1: float
    theta2: float
    w_approx: float
    j: float
    w_exact: float | None = None


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit of c1 * n^c2 + c0 with 0 < c2 < 1 (concave)."""

    c1: float
    c2: float
    c0: float
    residual_norm: float


def _xi(n: int) -> float:
    return 2.0 * quantile((n - 0.375) / (n + 0.25))


def _eta(n: int) -> float:
    return 2.0 * quantile((0.75 * n - 0.125) / (n + 0.25))


def exact_J(n: int, tol: float = 1e-8,
            moments: order_stats.OrderStatMoments | None = None) -> float:
    """Moment ratio J(n) from quadrature order-statistic moments.

    Falls back to the Monte Carlo oracle if the quadrature fails to
    converge (which the adaptive scheme should prevent for any
    practical n).
    """
    if moments is None:
        try:
            moments = order_stats.summary_moments(n, tol=tol)
        except order_stats.NumericError:
            moments = order_stats.mc_oracle(n, reps=2_000_000, seed=20_24)
    xi = _xi(n)
    eta = _eta(n)
    cross = moments.cov_range_quartile_spread / (xi * eta)
    num = moments.var_range / xi ** 2 - cross
    den = moments.var_quartile_spread / eta ** 2 - cross
    return num / den


def exact_optimal_weight(n: int, tol: float = 1e-8,
                         moments: order_stats.OrderStatMoments | None = None,
                         ) -> float:
    """MSE-minimizing weight 1 / (1 + J(n)) on the range component."""
    return 1.0 / (1.0 + exact_J(n, tol=tol, moments=moments))


def approx_J(n: int) -> float:
    """Closed-form fit to J(n): 0.07 * n^0.6."""
    return 0.07 * float(n) ** 0.6


def approx_weight(n: int) -> float:
    """Closed-form optimal weight: 1 / (1 + 0.07 n^0.6)."""
    if n < 1:
        raise DomainError(f"approx_weight is defined for n >= 1, got {n}")
    return 1.0 / (1.0 + approx_J(n))


def shortcut_coefficients(n: int) -> tuple[float, float]:
    """Denominators (theta1, theta2) of the shortcut SD estimator.

    theta1 = (2 + 0.14 n^0.6) * Phi^-1((n - 0.375)/(n + 0.25))
    theta2 = (2 + 2/(0.07 n^0.6)) * Phi^-1((0.75 n - 0.125)/(n + 0.25))

    Equivalent to dividing xi and eta by the approximate weight and its
    complement: 1/theta1 = w/xi, 1/theta2 = (1-w)/eta.
    """
    if n < 2:
        raise DomainError(f"shortcut coefficients need n >= 2, got {n}")
    j = approx_J(n)
    theta1 = (2.0 + 0.14 * float(n) ** 0.6) * quantile((n - 0.375) / (n + 0.25))
    theta2 = (2.0 + 2.0 / j) * quantile((0.75 * n - 0.125) / (n + 0.25))
    return theta1, theta2


def round_half_away(x: float, digits: int = 3) -> float:
    """Round to `digits` decimals with ties going away from zero.

    Operates on the shortest decimal representation of ``x`` (printed
    semantics), so decimal-looking ties such as 2.7935 round up even
    though their binary value sits just below the tie point.
    """
    quant = decimal.Decimal(1).scaleb(-digits)
    d = decimal.Decimal(repr(float(x))).quantize(
        quant, rounding=decimal.ROUND_HALF_UP)
    return float(d)


def generate_table(q_max: int, include_exact: bool = False,
                   tol: float = 1e-8) -> list[WeightTableRow]:
    """Rows (Q, n=4Q+1, theta1, theta2, ...) for Q = 1..q_max.

    The theta values rounded half-away-from-zero to 3 decimals
    reproduce the published coefficient table.  ``include_exact``
    additionally computes the quadrature-exact optimal weight per row
    (slow on a cold moment cache; the plain table stays well under a
    second).
    """
    if q_max < 1:
        raise DomainError(f"q_max must be >= 1, got {q_max}")
    rows = []
    for q in range(1, q_max + 1):
        n = 4 * q + 1
        t1, t2 = shortcut_coefficients(n)
        w_exact = exact_optimal_weight(n, tol=tol) if include_exact else None
        rows.append(WeightTableRow(q=q, n=n, theta1=t1, theta2=t2,
                                   w_approx=approx_weight(n),
                                   j=approx_J(n), w_exact=w_exact))
    return rows


def table_to_csv(rows: list[WeightTableRow]) -> str:
    """CSV export (header ``Q,n,theta1,theta2,w_exact,w_approx``).

    Theta values carry the table's 3-decimal presentation; weights keep
    6 significant digits; w_exact is blank when not computed.
    """
    lines = [TABLE_CSV_HEADER]
    for r in rows:
        w_exact = "" if r.w_exact is None else f"{r.w_exact:.6g}"
        lines.append(
            f"{r.q},{r.n},{round_half_away(r.theta1):.3f},"
            f"{round_half_away(r.theta2):.3f},{w_exact},{r.w_approx:.6g}")
    return "\n".join(lines) + "\n"


def fit_power_law(samples: list[tuple[float, float]]) -> PowerLawFit:
    """Least-squares fit of c1 * n^c2 + c0 to (n, J) samples.

    Initialization fixes c0 = 0 and fits log J = log c1 + c2 log n by
    linear regression; a damped Gauss-Newton refinement then frees all
    three coefficients.  The concavity constraint 0 < c2 < 1 is kept by
    step damping; if the data admit no such exponent (e.g. constant
    samples) the fit degrades to the constant c0 = mean(J) with a
    warning.
    """
    pts = [(float(n), float(j)) for n, j in samples]
    if len({n for n, _ in pts}) < 3:
        raise FitError("need at least 3 distinct n values")
    n_arr = np.array([p[0] for p in pts])
    j_arr = np.array([p[1] for p in pts])
    if np.any(n_arr <= 0):
        raise FitError("sample sizes must be positive")

    def constant_fallback(reason: str) -> PowerLawFit:
        warnings.warn(f"power-law fit degenerate ({reason}); "
                      "falling back to a constant fit", RuntimeWarning,
                      stacklevel=3)
        c0 = float(j_arr.mean())
        res = float(np.sqrt(((j_arr - c0) ** 2).sum()))
        return PowerLawFit(c1=0.0, c2=0.5, c0=c0, residual_norm=res)

    if np.any(j_arr <= 0):
        return constant_fallback("nonpositive J values")

    # log-log initialization (c0 = 0); an effectively flat slope means
    # no concave increasing power law fits the data
    ln_n = np.log(n_arr)
    ln_j = np.log(j_arr)
    slope, intercept = np.polyfit(ln_n, ln_j, 1)
    if not 1e-6 < slope < 1.0 - 1e-9:
        return constant_fallback(f"log-log exponent {slope:.3g} outside (0,1)")
    c1, c2, c0 = float(np.exp(intercept)), float(slope), 0.0

    def residuals(p):
        return p[0] * n_arr ** p[1] + p[2] - j_arr

    p = np.array([c1, c2, c0])
    cost = float((residuals(p) ** 2).sum())
    for _ in range(200):
        r = residuals(p)
        jac = np.column_stack([
            n_arr ** p[1],
            p[0] * n_arr ** p[1] * ln_n,
            np.ones_like(n_arr),
        ])
        g = jac.T @ r
        if float(np.linalg.norm(g)) < 1e-14 * max(1.0, cost):
            break
        try:
            step = np.linalg.solve(jac.T @ jac, -g)
        except np.linalg.LinAlgError:
            break
        alpha = 1.0
        improved = False
        while alpha > 1e-12:
            cand = p + alpha * step
            if 0.0 < cand[1] < 1.0 and cand[0] > 0.0:
                c = float((residuals(cand) ** 2).sum())
                if c < cost:
                    p, cost, improved = cand, c, True
                    break
            alpha *= 0.5
        if not improved:
            break
    return PowerLawFit(c1=float(p[0]), c2=float(p[1]), c0=float(p[2]),
                       residual_norm=float(np.sqrt(cost)))
