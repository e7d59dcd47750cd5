"""End-to-end acceptance checks, one test per numbered criterion.

Each test prints a single ``[criterion N] PASS/FAIL`` line; run

    pytest tests/test_acceptance.py -v -s

to watch them individually.  Criterion 9 compares against user-supplied
provider data (see README) and skips when those files are absent.

Oracles were computed before and independently of the library code:
criterion 2 checks the fitter against exact rational arithmetic, and
criterion 7 checks the t-CDF against a 50-digit quadrature whose output
is frozen below (regenerate with :func:`regenerate_t_cdf_oracle`).
"""

import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from trendsig import (
    Ar1Spec,
    EnsembleStats,
    MonthIndex,
    MonthlySeries,
    compare,
    d1_star,
    effective_n,
    fit,
    generate_batch,
    read_series,
    significance_marks,
    t_cdf,
    truncate,
)
from trendsig.errors import ComputationError
from trendsig.mc import size_power

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def _verdict(num, ok, detail):
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num}: {detail}"


# --------------------------------------------------------------------------
# criterion 1: the hand-evaluated unit fixture of the test statistic
# --------------------------------------------------------------------------


def test_criterion_1_statistic_unit_fixture():
    value = d1_star(EnsembleStats(0.3, 0.2, 4), 0.1, 0.0)
    err = abs(value - 2.0)
    _verdict(1, err <= 1e-12, f"d1*(0.3,0.2,4; 0.1, 0) = {value!r}, |err| = {err:.2e}")


# --------------------------------------------------------------------------
# criterion 2: slope/intercept against an exact rational-arithmetic solver
# --------------------------------------------------------------------------


def exact_ols(months, values):
    """Normal-equations solution in exact rational arithmetic."""
    n = len(months)
    xs = [Fraction(int(m)) for m in months]
    ys = [Fraction(float(v)) for v in values]
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    det = n * sxx - sx * sx
    slope = (n * sxy - sx * sy) / det
    intercept = (sy - slope * sx) / n
    return slope, intercept


def test_criterion_2_ols_matches_exact_oracle():
    rng = np.random.default_rng(20260823)
    started = time.perf_counter()
    checked = attempts = 0
    worst = 0.0
    while checked < 1000:
        attempts += 1
        assert attempts < 20000, "random series generator starved"
        n = int(rng.integers(3, 13))
        span = n + int(rng.integers(0, 13))
        months = int(rng.integers(0, 61)) + np.sort(
            rng.choice(span, size=n, replace=False)
        )
        sign = lambda: 1.0 if rng.random() < 0.5 else -1.0
        slope_pm = sign() * float(rng.uniform(0.05, 2.0))
        intercept = sign() * float(rng.uniform(0.5, 2.0))
        values = slope_pm * months + intercept + 0.005 * rng.standard_normal(n)
        series = MonthlySeries("probe", months.astype(np.int64), values)
        try:
            f = fit(series)
        except ComputationError:
            continue  # tiny-n draws can leave no effective dof; redraw
        want_slope, want_intercept = exact_ols(series.months, series.values)
        ws, wi = float(want_slope), float(want_intercept)
        if abs(ws) < 1e-2 or abs(wi) < 1e-2:
            continue  # near-zero targets make relative error meaningless
        worst = max(
            worst,
            abs(f.slope_per_month - ws) / abs(ws),
            abs(f.intercept - wi) / abs(wi),
        )
        checked += 1
    elapsed = time.perf_counter() - started
    ok = worst <= 1e-10 and elapsed < 5.0
    _verdict(2, ok, f"1000 series, worst rel err {worst:.3e}, {elapsed:.2f}s")


# --------------------------------------------------------------------------
# criterion 3: effective sample size identities
# --------------------------------------------------------------------------


def test_criterion_3_effective_n_exact_values():
    known = effective_n(366, 0.5)
    identity_ok = all(
        effective_n(n, 0.0) == float(n) for n in (1, 2, 3, 10, 100, 366, 5000)
    )
    ok = known == 122.0 and identity_ok
    _verdict(3, ok, f"effective_n(366, 0.5) = {known!r}; r1=0 identity {identity_ok}")


# --------------------------------------------------------------------------
# criterion 4: the adjusted se is calibrated against Monte Carlo truth
# --------------------------------------------------------------------------


def test_criterion_4_se_calibration():
    started = time.perf_counter()
    ratios = {}
    for i, phi in enumerate((0.0, 0.3, 0.6)):
        spec = Ar1Spec(phi, 0.1, 0.0, 360, seed=910 + i)
        slopes = np.empty(10_000)
        se2 = np.empty(10_000)
        for k, s in enumerate(generate_batch(spec, 10_000)):
            f = fit(s)
            slopes[k] = f.slope_per_decade
            se2[k] = f.se_slope**2
        ratios[phi] = float(se2.mean() / slopes.var(ddof=1))
    elapsed = time.perf_counter() - started
    ok = all(0.85 <= r <= 1.15 for r in ratios.values()) and elapsed < 60.0
    shown = {p: round(r, 3) for p, r in ratios.items()}
    _verdict(4, ok, f"mean se^2 / empirical slope var = {shown}, {elapsed:.1f}s")


# --------------------------------------------------------------------------
# criterion 5: empirical test size under the null
# --------------------------------------------------------------------------


def test_criterion_5_size_near_nominal():
    sizes = {}
    for i, phi in enumerate((0.0, 0.3, 0.6)):
        spec = Ar1Spec(phi, 0.1, 0.215, 360, seed=550 + i)
        result = size_power(
            spec, EnsembleStats(0.215, 0.0, 19), reps=10_000, alpha=0.05
        )
        sizes[phi] = result.size
    ok = all(0.03 <= s <= 0.08 for s in sizes.values())
    _verdict(5, ok, f"two-sided rejection rates at alpha 0.05: {sizes}")


# --------------------------------------------------------------------------
# criterion 6: printed (statistic, percentile) pairs reproduce every mark
# --------------------------------------------------------------------------

# (d1*, percentile, two-sided marks, one-sided marks)
REFERENCE_CLASSIFICATIONS = [
    (1.08, 85.5, "-", "-"),
    (2.42, 98.8, "**", "**"),
    (1.41, 91.4, "-", "*"),
    (2.72, 99.4, "**", "***"),
    (-2.34, 1.1, "**", "**"),
    (-7.00, 0.0, "***", "***"),
    (-3.30, 0.0, "***", "***"),
    (-7.73, 0.0, "***", "***"),
    (-0.07, 47.1, "-", "-"),
    (-1.06, 14.8, "-", "-"),
    (-1.22, 11.5, "-", "-"),
    (-4.29, 0.0, "***", "***"),
    (-5.04, 0.0, "***", "***"),
    (-5.25, 0.0, "***", "***"),
    (-2.72, 0.5, "***", "***"),
    (-1.46, 7.5, "-", "*"),
    (-2.08, 2.1, "**", "**"),
    (-6.66, 0.0, "***", "***"),
    (-4.82, 0.0, "***", "***"),
    (-6.21, 0.0, "***", "***"),
]


def test_criterion_6_reference_marks_reproduced():
    failures = []
    for d1, pct, want_two, want_one in REFERENCE_CLASSIFICATIONS:
        p_two = 2.0 * min(pct, 100.0 - pct) / 100.0
        got = (significance_marks(p_two), significance_marks(p_two / 2.0))
        if got != (want_two, want_one):
            failures.append((d1, pct, got, (want_two, want_one)))
    ok = not failures
    detail = "all 20 rows match" if ok else f"mismatches: {failures}"
    _verdict(6, ok, detail)


# --------------------------------------------------------------------------
# criterion 7: t-CDF against a frozen high-precision quadrature oracle
# --------------------------------------------------------------------------

XS = (-50.0, -2.42, -0.5, 1.08, 7.0)
DFS = (1, 2, 3.5, 7, 15, 30.5, 64, 150, 366, 1000)

# (x, df, CDF) produced by regenerate_t_cdf_oracle() at 50-digit precision.
T_CDF_ORACLE = [
    (-50.0, 1, 0.0063653491009727967),
    (-2.42, 1, 0.12473081364446596),
    (-0.5, 1, 0.35241638234956673),
    (1.08, 1, 0.76223665645425448),
    (7.0, 1, 0.95483276469913345),
    (-50.0, 2, 0.00019988007994404029),
    (-2.42, 2, 0.068308421131681684),
    (-0.5, 2, 0.33333333333333333),
    (1.08, 2, 0.80346658076172363),
    (7.0, 2, 0.99009802940980343),
    (-50.0, 3.5, 2.009542223849108e-06),
    (-2.42, 3.5, 0.040955593799937244),
    (-0.5, 3.5, 0.32342521966127551),
    (1.08, 3.5, 0.82556039241541898),
    (7.0, 3.5, 0.99822358190009787),
    (-50.0, 7, 1.6756262977750201e-10),
    (-2.42, 7, 0.023046086606661091),
    (-0.5, 7, 0.31620356784464211),
    (1.08, 7, 0.84202901290626794),
    (7.0, 7, 0.99989422257402706),
    (-50.0, 15, 2.1058473123089529e-18),
    (-2.42, 15, 0.014340195742713371),
    (-0.5, 15, 0.31216505676003778),
    (1.08, 15, 0.85139897821571405),
    (7.0, 15, 0.99999785994220944),
    (-50.0, 30.5, 3.9295888548138086e-31),
    (-2.42, 30.5, 0.010839767648837542),
    (-0.5, 30.5, 0.31033176195726285),
    (1.08, 30.5, 0.85569561293443245),
    (7.0, 30.5, 0.99999995951580614),
    (-50.0, 64, 2.5936768496282433e-53),
    (-2.42, 64, 0.0091852709859237352),
    (-0.5, 64, 0.30939496928771071),
    (1.08, 64, 0.85790229702592206),
    (7.0, 64, 0.99999999906975759),
    (-50.0, 150, 9.7121529553826627e-96),
    (-2.42, 150, 0.0083581870656689396),
    (-0.5, 150, 0.30890389318626987),
    (1.08, 150, 0.85906218277638748),
    (7.0, 150, 0.99999999996009908),
    (-50.0, 366, 6.0948631631712859e-166),
    (-2.42, 366, 0.008003439855677633),
    (-0.5, 366, 0.30868777617308436),
    (1.08, 366, 0.85957332741039882),
    (7.0, 366, 0.99999999999385352),
    (-50.0, 1000, 1.3757800224726563e-274),
    (-2.42, 1000, 0.0078489546712173018),
    (-0.5, 1000, 0.30859254041693741),
    (1.08, 1000, 0.85979870770243058),
    (7.0, 1000, 0.99999999999765625),
]


def regenerate_t_cdf_oracle():  # pragma: no cover - tooling, not a test
    """Recompute T_CDF_ORACLE with 50-digit quadrature (needs mpmath).

    The lower tail is integrated directly (node at 2x spreads the
    quadrature over the shoulder) so extreme tails never suffer the
    cancellation of computing 1 minus the other side.
    """
    import mpmath as mp

    mp.mp.dps = 50
    out = []
    for df in DFS:
        d = mp.mpf(df)
        norm = mp.gamma((d + 1) / 2) / (mp.sqrt(d * mp.pi) * mp.gamma(d / 2))

        def dens(t):
            return norm * (1 + t * t / d) ** (-(d + 1) / 2)

        for x in XS:
            if x <= 0:
                val = mp.quad(dens, [mp.ninf, 2 * x, x])
            else:
                val = 1 - mp.quad(dens, [mp.ninf, -2 * x, -x])
            out.append((x, df, float(val)))
    return out


def test_criterion_7_t_cdf_accuracy():
    worst = max(abs(t_cdf(x, df) - want) for x, df, want in T_CDF_ORACLE)
    ok = worst <= 1e-8
    _verdict(7, ok, f"50 grid points, worst abs err {worst:.3e}")


def test_frozen_oracle_matches_fresh_quadrature():
    """Not a numbered criterion: guards the frozen table itself."""
    pytest.importorskip("mpmath")
    fresh = {(x, df): v for x, df, v in regenerate_t_cdf_oracle()}
    for x, df, frozen in T_CDF_ORACLE:
        assert frozen == pytest.approx(fresh[(x, df)], rel=1e-12)


# --------------------------------------------------------------------------
# criterion 8: more months means more power at a fixed trend gap
# --------------------------------------------------------------------------


def test_criterion_8_power_grows_with_series_length():
    reps = 10_000
    spec = Ar1Spec(0.6, 0.1, 0.04, 366, seed=2026)
    ens = EnsembleStats(0.0, 0.0, 19)
    start = MonthIndex(1979, 1)
    end_252 = start.plus(251)
    hits_366 = hits_252 = 0
    for s in generate_batch(spec, reps):
        if compare(ens, fit(s)).p_two_sided <= 0.05:
            hits_366 += 1
        if compare(ens, fit(truncate(s, start, end_252))).p_two_sided <= 0.05:
            hits_252 += 1
    power_366 = hits_366 / reps
    power_252 = hits_252 / reps
    ok = power_366 > power_252
    _verdict(8, ok, f"power(366) = {power_366:.3f} > power(252) = {power_252:.3f}")


# --------------------------------------------------------------------------
# criterion 9 (best-effort, non-gating): current provider data
# --------------------------------------------------------------------------


def test_criterion_9_best_effort_provider_data():
    targets = [("uah_t2lt.csv", 0.05), ("rss_t2lt.csv", 0.14)]
    missing = [name for name, _ in targets if not (DATA_DIR / name).exists()]
    if missing:
        print(f"[criterion 9] SKIP: user-supplied files absent: {missing}")
        pytest.skip("provider data not supplied (see README)")
    for name, target in targets:
        series = read_series(DATA_DIR / name)
        f = fit(truncate(series, MonthIndex(1979, 1), MonthIndex(2009, 6)))
        trend = f.slope_per_decade
        within = trend > 0 and abs(trend - target) <= 0.02
        status = "OK" if within else "MISMATCH (non-gating; data versions drift)"
        print(f"[criterion 9] BEST-EFFORT {status}: {name} {trend:.3f} vs {target}")
