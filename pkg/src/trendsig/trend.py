"""Ordinary least squares trend with an AR1-adjusted standard error.

The slope is fit on month ordinals, so a calendar gap leaves a hole in
the regressor instead of compressing the axis.  The lag-1 autocorrelation
of the residuals feeds the classic effective-sample-size correction

    n_eff = n * (1 - r1) / (1 + r1)

and n_eff replaces n both in the residual-variance divisor (n_eff - 2)
and in the degrees of freedom used for inference.  The design-matrix sum
of squares keeps all actual points:

    se_slope^2 = [sum(e^2) / (n_eff - 2)] / sum((x - xbar)^2)

with the slope and its standard error reported in deg C per decade
(120 months).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDesign,
    DomainError,
    EffectiveDfTooSmall,
    NonFiniteInput,
    TooFewPoints,
)
from .series import MonthlySeries

MONTHS_PER_DECADE = 120

# An exactly linear series leaves only rounding noise in the residuals;
# below this fraction of the series variance the fit is treated as exact
# so that noise cannot masquerade as autocorrelation.
_EXACT_FIT_RATIO = 1e-24


@dataclass(frozen=True, eq=False)
class TrendFit:
    """OLS trend of a monthly series with AR1-adjusted uncertainty.

    Attributes
    ----------
    slope_per_month : float
        Fitted slope in deg C per month.
    slope_per_decade : float
        The same slope in deg C per decade (120 * slope_per_month).
    intercept : float
        Value of the fitted line at month ordinal zero, deg C.
    n : int
        Number of points used.
    residuals : np.ndarray
        Fit residuals in input order, deg C.
    r1 : float
        Lag-1 sample autocorrelation of the residuals.
    n_eff : float
        Effective sample size n * (1 - r1) / (1 + r1), clamped to n.
    se_slope : float
        AR1-adjusted standard error of the slope, deg C per decade.
    df : float
        Degrees of freedom for inference, n_eff - 2.
    """

    slope_per_month: float
    slope_per_decade: float
    intercept: float
    n: int
    residuals: np.ndarray
    r1: float
    n_eff: float
    se_slope: float
    df: float


def lag1_autocorr(residuals) -> float:
    """Lag-1 sample autocorrelation of a residual sequence.

    Adjacent-in-sequence pairing: sum over e[t]*e[t+1] of mean-removed
    residuals divided by the full sum of squares.  Returns 0 when the
    residuals are constant (zero-variance convention).
    """
    e = np.asarray(residuals, dtype=np.float64)
    if e.size < 2:
        raise TooFewPoints(f"lag-1 autocorrelation needs at least 2 values, got {e.size}")
    c = e - e.mean()
    denom = float(c @ c)
    if denom == 0.0:
        return 0.0
    return float(c[:-1] @ c[1:]) / denom


def effective_n(n: int, r1: float) -> float:
    """Effective sample size n * (1 - r1) / (1 + r1), clamped to at most n.

    Negative r1 would report more information than the sample holds; the
    clamp keeps n_eff <= n.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not -1.0 < r1 < 1.0:
        raise DomainError(f"r1 must lie in (-1, 1), got {r1}")
    raw = (n * (1.0 - r1)) / (1.0 + r1)
    return min(raw, float(n))


def fit(s: MonthlySeries) -> TrendFit:
    """Least-squares trend of a monthly series with AR1-adjusted uncertainty.

    Parameters
    ----------
    s : MonthlySeries
        At least 3 points on at least 2 distinct months; values finite.

    Returns
    -------
    TrendFit

    Raises
    ------
    TooFewPoints, DegenerateDesign, NonFiniteInput, EffectiveDfTooSmall
    """
    n = len(s)
    if n < 3:
        raise TooFewPoints(f"trend fit needs at least 3 points, got {n}")
    x = s.months.astype(np.float64)
    y = s.values
    if not np.all(np.isfinite(y)):
        raise NonFiniteInput(f"series {s.name!r} contains non-finite values")
    if x[0] == x[-1]:
        raise DegenerateDesign("all points fall in the same month")

    xc = x - x.mean()
    ybar = float(y.mean())
    yc = y - ybar
    sxx = float(xc @ xc)
    slope = float(xc @ yc) / sxx
    intercept = ybar - slope * float(x.mean())
    residuals = y - (intercept + slope * x)
    residuals.setflags(write=False)

    ss_res = float(residuals @ residuals)
    ss_tot = float(yc @ yc)
    if ss_tot == 0.0 or ss_res <= _EXACT_FIT_RATIO * ss_tot:
        r1 = 0.0
    else:
        # Rounding can push a near-perfect correlation onto the boundary;
        # nudge it back inside the open interval.
        r1 = float(np.clip(lag1_autocorr(residuals), -1.0 + 1e-15, 1.0 - 1e-15))

    n_eff = effective_n(n, r1)
    df = n_eff - 2.0
    if df <= 0.0:
        raise EffectiveDfTooSmall(
            f"effective sample size {n_eff:.3f} leaves no degrees of freedom"
        )
    sigma2 = ss_res / df
    se_month = math.sqrt(sigma2 / sxx)

    return TrendFit(
        slope_per_month=slope,
        slope_per_decade=MONTHS_PER_DECADE * slope,
        intercept=intercept,
        n=n,
        residuals=residuals,
        r1=r1,
        n_eff=n_eff,
        se_slope=MONTHS_PER_DECADE * se_month,
        df=df,
    )
