"""Trend-versus-ensemble significance testing.

The statistic compares an observed trend b0 (with standard error se0)
against a model-ensemble mean trend, pooling the observational variance
with the scaled inter-model spread:

    d1* = (ensemble_trend - b0) / sqrt(inter_model_sd^2 / n_models + se0^2)

It is referred to a Student-t distribution whose degrees of freedom come
from the observed series (n_eff - 2).  Results report the t-CDF
percentile, one- and two-sided p-values, and asterisk marks at the 10, 5
and 1 percent levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import betainc

from .errors import DomainError, InputError, NonFiniteInput, ZeroDenominator
from .trend import TrendFit

SIDES = ("one", "two")


@dataclass(frozen=True)
class EnsembleStats:
    """Reference ensemble trend and spread, treated as given constants.

    Attributes
    ----------
    trend : float
        Ensemble-mean trend, deg C per decade.
    inter_model_sd : float
        Standard deviation of per-model ensemble-mean trends, deg C/decade.
    n_models : int
        Number of models behind the spread.
    """

    trend: float
    inter_model_sd: float
    n_models: int

    def __post_init__(self) -> None:
        if self.inter_model_sd < 0:
            raise InputError(f"inter_model_sd must be >= 0, got {self.inter_model_sd}")
        if self.n_models < 1:
            raise InputError(f"n_models must be >= 1, got {self.n_models}")


@dataclass(frozen=True)
class TestResult:
    """Outcome of one trend comparison.

    ``percentile`` is 100 times the t-CDF at the signed statistic, so
    negative statistics land below 50.  Marks follow the inclusive
    thresholds of :func:`significance_marks`.
    """

    d1_star: float
    df: float
    percentile: float
    p_two_sided: float
    p_one_sided: float
    marks_two_sided: str
    marks_one_sided: str

    def p_value(self, sided: str = "two") -> float:
        if sided not in SIDES:
            raise InputError(f"sided must be 'one' or 'two', got {sided!r}")
        return self.p_two_sided if sided == "two" else self.p_one_sided


def d1_star(ens: EnsembleStats, obs_trend: float, obs_se: float) -> float:
    """The modified t statistic for an observed trend against the ensemble.

    Either spread term may be zero, but not both.
    """
    denom2 = ens.inter_model_sd**2 / ens.n_models + obs_se**2
    if denom2 <= 0.0:
        raise ZeroDenominator("both the inter-model spread and the observed se are zero")
    return (ens.trend - obs_trend) / math.sqrt(denom2)


def t_cdf(x: float, df: float) -> float:
    """Student-t CDF with real-valued degrees of freedom.

    Uses the regularized incomplete beta function: for x > 0,
    CDF = 1 - I_w(df/2, 1/2) / 2 with w = df / (df + x^2), and the
    mirror image for x < 0.  Absolute error is well inside 1e-10 over
    df in [1, 1000], |x| <= 50.
    """
    if not math.isfinite(x):
        raise NonFiniteInput(f"x must be finite, got {x}")
    if not df > 0:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    w = df / (df + x * x)
    half_tail = 0.5 * float(betainc(df / 2.0, 0.5, w))
    return 1.0 - half_tail if x > 0 else half_tail


def significance_marks(p: float) -> str:
    """Asterisks for a p-value: *** at 1%, ** at 5%, * at 10%, inclusive."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p-value must lie in [0, 1], got {p}")
    if p <= 0.01:
        return "***"
    if p <= 0.05:
        return "**"
    if p <= 0.10:
        return "*"
    return "-"


def classify(d1: float, df: float) -> TestResult:
    """P-values, percentile and marks for a statistic under Student-t(df).

    The two-sided p-value is 2 * min(CDF, 1 - CDF); the one-sided
    alternative is "trends differ in the direction observed", i.e. half
    the two-sided value.
    """
    if not df > 0:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    cdf = t_cdf(d1, df)
    p_two = 2.0 * min(cdf, 1.0 - cdf)
    p_one = 0.5 * p_two
    return TestResult(
        d1_star=d1,
        df=df,
        percentile=100.0 * cdf,
        p_two_sided=p_two,
        p_one_sided=p_one,
        marks_two_sided=significance_marks(p_two),
        marks_one_sided=significance_marks(p_one),
    )


def compare(ens: EnsembleStats, obs: TrendFit, sided: str = "two") -> TestResult:
    """Full comparison of a fitted observed trend against the ensemble.

    Degrees of freedom come from the observed fit (n_eff - 2).  Both
    sidednesses are always populated on the result; ``sided`` names the
    caller's declared alternative and is validated here so that a
    misspelling fails early rather than at readout.
    """
    if sided not in SIDES:
        raise InputError(f"sided must be 'one' or 'two', got {sided!r}")
    stat = d1_star(ens, obs.slope_per_decade, obs.se_slope)
    return classify(stat, obs.df)
