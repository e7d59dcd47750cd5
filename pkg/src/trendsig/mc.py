"""Synthetic AR(1) series and size/power estimation for the trend test.

Attaining nominal rejection rates on autocorrelated noise is the whole
point of the adjusted test, so this module generates series whose noise
follows ``e[t] = phi * e[t-1] + eps[t]`` with Gaussian innovations and a
stationary start (``e[0]`` drawn with variance ``sigma^2 / (1 - phi^2)``),
then runs the full fit-and-compare pipeline over many replicates.

Determinism contract: replicate ``k`` of a given spec consumes draws
``[k*n, (k+1)*n)`` of the seed's innovation stream, so any slice of
replicates is a pure function of ``(seed, k, n)`` and results cannot
depend on execution order.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np
from scipy.signal import lfilter

from .errors import DomainError, InputError
from .series import MonthIndex, MonthlySeries
from .sigtest import EnsembleStats, compare
from .trend import MONTHS_PER_DECADE, fit

__all__ = [
    "Ar1Spec",
    "SizePower",
    "generate",
    "generate_batch",
    "size_power",
    "size_power_csv",
]


@dataclass(frozen=True)
class Ar1Spec:
    """Recipe for a linear trend plus AR(1) noise.

    Attributes
    ----------
    phi : float
        Lag-1 autoregression coefficient, ``|phi| < 1``.
    sigma_innov : float
        Innovation standard deviation (>= 0).
    trend_per_decade : float
        Deterministic trend added to the noise, in value units per decade.
    n : int
        Number of months (>= 3).
    seed : int
        Seed for the innovation stream.
    start : MonthIndex
        First month of the generated series.
    """

    phi: float
    sigma_innov: float
    trend_per_decade: float
    n: int
    seed: int
    start: MonthIndex = MonthIndex(1979, 1)

    def __post_init__(self) -> None:
        if not abs(self.phi) < 1.0:
            raise DomainError(f"phi must satisfy |phi| < 1, got {self.phi}")
        if self.sigma_innov < 0.0:
            raise DomainError(f"sigma_innov must be >= 0, got {self.sigma_innov}")
        if self.n < 3:
            raise DomainError(f"need n >= 3 months, got {self.n}")


def _noise(spec: Ar1Spec, reps: int) -> np.ndarray:
    """AR(1) noise for replicates ``0..reps-1``, one per row."""
    innov = np.random.default_rng(spec.seed).standard_normal((reps, spec.n))
    scale = np.full(spec.n, spec.sigma_innov)
    if spec.phi != 0.0:
        # Stationary start: the first draw carries the marginal, not the
        # innovation, standard deviation.
        scale[0] = spec.sigma_innov / np.sqrt(1.0 - spec.phi**2)
    innov *= scale
    if spec.phi == 0.0:
        return innov
    return lfilter([1.0], [1.0, -spec.phi], innov, axis=1)


def _with_trend(spec: Ar1Spec, noise: np.ndarray) -> np.ndarray:
    ramp = (spec.trend_per_decade / MONTHS_PER_DECADE) * np.arange(spec.n)
    return noise + ramp


def generate(spec: Ar1Spec) -> MonthlySeries:
    """Generate replicate 0 of ``spec`` as a contiguous monthly series."""
    values = _with_trend(spec, _noise(spec, 1))[0]
    return MonthlySeries.from_start(f"ar1-seed{spec.seed}", spec.start, values)


def generate_batch(spec: Ar1Spec, reps: int) -> list[MonthlySeries]:
    """Generate replicates ``0..reps-1`` of ``spec``."""
    if reps < 1:
        raise InputError(f"reps must be >= 1, got {reps}")
    values = _with_trend(spec, _noise(spec, reps))
    return [
        MonthlySeries.from_start(f"ar1-seed{spec.seed}-rep{k}", spec.start, row)
        for k, row in enumerate(values)
    ]


class SizePower(NamedTuple):
    """Rejection rates under the null and under trend offsets."""

    size: float
    power_curve: list[tuple[float, float]]


def size_power(
    null_spec: Ar1Spec,
    ens: EnsembleStats,
    reps: int,
    alpha: float,
    trend_gaps: Sequence[float] = (),
    sided: str = "two",
) -> SizePower:
    """Estimate empirical size and power of the comparison test.

    Null replicates follow ``null_spec`` with the trend forced to
    ``ens.trend`` (true agreement with the ensemble).  Each entry of
    ``trend_gaps`` offsets the true trend by that many deg C/decade and
    contributes one ``(gap, rejection rate)`` pair to the power curve.
    The same noise matrix is reused across trend values, so a gap of 0
    reproduces the size exactly.
    """
    if reps < 1000:
        raise InputError(f"need at least 1000 replicates for stable rates, got {reps}")
    if not 0.0 < alpha < 1.0:
        raise InputError(f"alpha must be in (0, 1), got {alpha}")

    noise = _noise(null_spec, reps)
    ramp_x = np.arange(null_spec.n)

    def rejection_rate(true_trend: float) -> float:
        values = noise + (true_trend / MONTHS_PER_DECADE) * ramp_x
        spec = replace(null_spec, trend_per_decade=true_trend)
        rejections = 0
        for k in range(reps):
            series = MonthlySeries.from_start(
                f"ar1-seed{spec.seed}-rep{k}", spec.start, values[k]
            )
            result = compare(ens, fit(series), sided=sided)
            if result.p_value(sided) <= alpha:
                rejections += 1
        return rejections / reps

    size = rejection_rate(ens.trend)
    curve = [(float(g), rejection_rate(ens.trend + g)) for g in trend_gaps]
    return SizePower(size=size, power_curve=curve)


def size_power_csv(
    null_spec: Ar1Spec, alpha: float, reps: int, result: SizePower
) -> str:
    """Render a size/power result as CSV.

    Columns: ``phi,n,trend_gap,alpha,rejection_rate,reps,seed``.  The size
    appears as the ``trend_gap = 0`` row, followed by the power curve.
    """
    buf = io.StringIO()
    buf.write("phi,n,trend_gap,alpha,rejection_rate,reps,seed\n")
    rows = [(0.0, result.size)] + list(result.power_curve)
    for gap, rate in rows:
        buf.write(
            f"{null_spec.phi!r},{null_spec.n},{gap!r},{alpha!r},"
            f"{rate!r},{reps},{null_spec.seed}\n"
        )
    return buf.getvalue()
