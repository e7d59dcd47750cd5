"""Shared fixtures: synthetic dataset files plus a registry that uses them."""

import numpy as np
import pytest

from trendsig import MonthIndex, MonthlySeries, write_series

START = MonthIndex(1979, 1)
N_FULL = 366  # 1979:01 .. 2009:06 without gaps


def make_line(name, slope_per_decade, intercept=0.2, n=N_FULL, start=START):
    """Noise-free linear series: value = slope * t + intercept on month ordinals."""
    months = start.ordinal + np.arange(n)
    values = (slope_per_decade / 120.0) * months + intercept
    return MonthlySeries(name, months, values)


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("datasets")
    rng = np.random.default_rng(20090630)
    t = np.arange(N_FULL)

    sat = MonthlySeries.from_start(
        "sat_a", START, 0.05 / 120.0 * t + 0.08 * rng.standard_normal(N_FULL)
    )
    surf = MonthlySeries.from_start(
        "surf_a", START, 0.13 / 120.0 * t + 0.05 * rng.standard_normal(N_FULL)
    )
    write_series(sat, root / "sat_a.csv")
    write_series(surf, root / "surf_a.csv")
    write_series(make_line("line051", 0.051), root / "line051.csv")

    (root / "registry.ini").write_text(
        """\
[dataset:SAT_A]
kind = satellite
path = sat_a.csv
notes = synthetic, seed 20090630

[dataset:SURF_A]
kind = surface_landocean
path = surf_a.csv
notes = synthetic, seed 20090630

[dataset:LINE051]
kind = satellite
path = line051.csv
notes = noise-free line, slope 0.051/decade

[comparison:sat_trend]
satellite = SAT_A
ensemble_trend = 0.215
ensemble_sd = 0.092
n_models = 19
start = 1979:01
end = 2009:06
mode = trend

[comparison:lapse_pair]
satellite = SAT_A
surface = SURF_A
ensemble_trend = -0.069
ensemble_sd = 0.05
n_models = 19
start = 1979:01
end = 2009:06
mode = lapse

[comparison:line_vs_ensemble]
satellite = LINE051
ensemble_trend = 0.215
ensemble_sd = 0.2
n_models = 19
start = 1979:01
end = 2009:06
mode = trend
""",
        encoding="utf-8",
    )
    return root
