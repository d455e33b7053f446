import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualconf import (
    ConfidenceDensity,
    DensityFamily,
    DomainError,
    Family,
    GammaParams,
    IntervalKind,
    LocScaleParams,
    Observation,
    OrderingError,
    RegistryError,
    confidence_density,
    dual_of,
    gamma_cdf,
    gamma_pdf,
    gamma_quantile,
    identity_residual,
    identity_terms,
    integrate,
    integrate_kinked,
    interval_probability,
    laplace_pdf,
    poisson_pmf,
    solve_interval,
    uniqueness_fd_check,
)

LEVELS = (0.6827, 0.90, 0.95, 0.99)
ALL_KINDS = (
    IntervalKind.CENTRAL,
    IntervalKind.SHORTEST,
    IntervalKind.UPPER_LIMIT,
    IntervalKind.LOWER_LIMIT,
)

# 5x5x5x5 identity grid: observations, scales (contains 0.1/1/10),
# left-endpoint offsets and widths in scale units (contains 0 and 50)
GRID_XHAT = (-7.3, -1.0, 0.0, 0.7, 12.0)
GRID_B = (0.1, 0.37, 1.0, 3.3, 10.0)
GRID_OFF1 = (-25.0, -2.0, 0.0, 0.5, 3.0)
GRID_DELTA = (0.0, 0.1, 1.0, 10.0, 50.0)


def laplace_cd(x_hat=0.0, b=1.0):
    return dual_of(Family.LAPLACE, Observation(x_hat), b)


# ---------------------------------------------------------------------------
# the exchange (confidence density construction)
# ---------------------------------------------------------------------------

def test_exchange_peak_value():
    cd = laplace_cd(2.5, 4.0)
    assert confidence_density(cd, 2.5) == 1.0 / 8.0


@given(
    x_hat=st.floats(-100.0, 100.0),
    theta=st.floats(-100.0, 100.0),
    b=st.floats(0.001, 1000.0),
)
@settings(max_examples=300, derandomize=True)
def test_exchange_is_bit_for_bit(x_hat, theta, b):
    cd = laplace_cd(x_hat, b)
    assert confidence_density(cd, theta) == laplace_pdf(x_hat, LocScaleParams(theta, b))


def test_poisson_rate_density():
    cd = dual_of(Family.POISSON, 2)
    # Gamma(3, 1) density: lam^2 e^-lam / 2
    assert confidence_density(cd, 2.0) == pytest.approx(0.2706705664732254, abs=1e-15)
    assert confidence_density(cd, 0.0) == 0.0
    with pytest.raises(DomainError):
        confidence_density(cd, -0.5)


def test_confidence_density_normalizes():
    for cd, lo, hi, tail in [
        (laplace_cd(0.7, 2.0), 0.7 - 90.0, 0.7 + 90.0, 0.0),
        (dual_of(Family.NORMAL, Observation(-1.0), 1.5), -1 - 67.5, -1 + 67.5, 0.0),
        (dual_of(Family.POISSON, 3), 0.0, 60.0, 0.0),
    ]:
        mass = integrate(lambda th: confidence_density(cd, th), lo, hi, 1e-10).value
        assert mass + tail == pytest.approx(1.0, abs=1e-8)


# ---------------------------------------------------------------------------
# interval probability
# ---------------------------------------------------------------------------

def test_interval_probability_values():
    cd = laplace_cd()
    assert interval_probability(cd, 0.3, 0.3) == 0.0
    assert interval_probability(cd, -1.0, 1.0) == pytest.approx(0.6321205588285577, abs=1e-14)
    assert interval_probability(cd, -math.inf, math.inf) == 1.0


def test_interval_probability_ordering_error():
    cd = laplace_cd()
    with pytest.raises(OrderingError):
        interval_probability(cd, 1.0, -1.0)


def test_interval_probability_matches_density_quadrature():
    # sampling-CDF difference against the parameter-space mass, full grid
    worst = 0.0
    for x_hat in GRID_XHAT:
        for b in GRID_B:
            cd = laplace_cd(x_hat, b)
            for off in GRID_OFF1:
                for delta in GRID_DELTA:
                    a1 = x_hat + off * b
                    a2 = a1 + delta * b
                    mass = integrate_kinked(
                        lambda th: confidence_density(cd, th), a1, a2, x_hat, 1e-10
                    ).value
                    worst = max(worst, abs(interval_probability(cd, a1, a2) - mass))
    assert worst <= 1e-8


def test_poisson_interval_probability():
    cd = dual_of(Family.POISSON, 2)
    # support boundary: P(X <= n | 0) = 1
    assert interval_probability(cd, 0.0, math.inf) == 1.0
    mass = integrate(lambda th: confidence_density(cd, th), 0.5, 6.0, 1e-11).value
    assert interval_probability(cd, 0.5, 6.0) == pytest.approx(mass, abs=1e-9)
    with pytest.raises(DomainError):
        interval_probability(cd, -1.0, 2.0)


# ---------------------------------------------------------------------------
# the unit identity
# ---------------------------------------------------------------------------

def test_identity_closed_form_grid():
    worst = 0.0
    for x_hat in GRID_XHAT:
        for b in GRID_B:
            cd = laplace_cd(x_hat, b)
            for off in GRID_OFF1:
                for delta in GRID_DELTA:
                    a1 = x_hat + off * b
                    worst = max(worst, identity_residual(cd, a1, a1 + delta * b))
    assert worst <= 1e-12


def test_identity_quadrature_spot_checks():
    cd = laplace_cd(0.7, 2.0)
    assert identity_residual(cd, -3.0, 5.0, "quadrature") <= 1e-8
    assert identity_residual(cd, -3.0, 5.0, "quadrature", quad_tol=1e-10) <= 1e-8


def test_identity_degenerate_split_at_observation():
    # a1 == a2 == observation: middle term 0, two tails of one density sum to 1
    cd = laplace_cd(0.7, 2.0)
    check = identity_terms(cd, 0.7, 0.7)
    assert check.t2 == 0.0
    assert check.t1 + check.t3 == 1.0
    assert check.residual == 0.0


def test_identity_other_families():
    cdn = dual_of(Family.NORMAL, Observation(0.0), 3.0)
    assert identity_residual(cdn, -4.0, 7.0) <= 1e-10
    assert identity_residual(cdn, -4.0, 7.0, "quadrature") <= 1e-8
    cdc = dual_of(Family.CAUCHY, Observation(1.0), 0.5)
    assert identity_residual(cdc, -4.0, 7.0) <= 1e-10
    assert identity_residual(cdc, -4.0, 7.0, "quadrature") <= 1e-8


def test_identity_poisson():
    for n in range(0, 11):
        cd = dual_of(Family.POISSON, n)
        for a1, a2 in [(0.0, 1.0), (0.5, 2.0), (2.0, 2.0), (1.0, 51.0), (0.0, 0.0)]:
            assert identity_residual(cd, a1, a2) <= 1e-12
    cd = dual_of(Family.POISSON, 3)
    assert identity_residual(cd, 0.5, 9.0, "quadrature") <= 1e-8


def test_identity_errors():
    cd = laplace_cd()
    with pytest.raises(OrderingError):
        identity_terms(cd, 2.0, -2.0)
    with pytest.raises(DomainError):
        identity_terms(cd, -math.inf, 0.0)
    with pytest.raises(DomainError):
        identity_terms(cd, 0.0, 1.0, "simpson")


@given(
    x_hat=st.floats(-50.0, 50.0),
    b=st.floats(0.01, 100.0),
    off=st.floats(-40.0, 40.0),
    delta=st.floats(0.0, 60.0),
)
@settings(max_examples=200, derandomize=True)
def test_identity_closed_form_property(x_hat, b, off, delta):
    cd = laplace_cd(x_hat, b)
    a1 = x_hat + off * b
    assert identity_residual(cd, a1, a1 + delta * b) <= 1e-12


# ---------------------------------------------------------------------------
# uniqueness via finite differences
# ---------------------------------------------------------------------------

def test_fd_check_matches_density():
    obs = Observation(0.0)
    p = LocScaleParams(0.0, 1.0)
    chk = uniqueness_fd_check(obs, p, 0.7, 1e-5)
    assert chk.exact == pytest.approx(0.24829265189570476, abs=1e-15)
    assert chk.abs_error <= 1e-9
    chk2 = uniqueness_fd_check(obs, p, -1.3, 1e-5)
    assert chk2.abs_error <= 1e-9


def test_fd_check_second_order_convergence():
    obs = Observation(0.0)
    p = LocScaleParams(0.0, 1.0)
    big = uniqueness_fd_check(obs, p, 0.7, 1e-4)
    small = uniqueness_fd_check(obs, p, 0.7, 5e-5)
    assert 3.5 <= big.abs_error / small.abs_error <= 4.5


@pytest.mark.parametrize("b", [0.5, 1.0, 3.0])
def test_fd_check_error_bound_scales_with_b(b):
    # central-difference error bound: 10 h^2 posed against the density's
    # third-derivative scale 1/(2 b^3), away from the kink
    obs = Observation(0.3)
    p = LocScaleParams(0.0, b)
    h = 1e-5
    for a in (0.3 + 1.0 * b, 0.3 - 2.0 * b):
        chk = uniqueness_fd_check(obs, p, a, h)
        assert chk.abs_error <= 10.0 * h * h / (2.0 * b**3)


def test_fd_check_at_the_kink():
    # at a == observation the central difference is the average of the two
    # one-sided slopes; only first-order accuracy is claimed there
    obs = Observation(0.0)
    p = LocScaleParams(0.0, 1.0)
    h = 1e-6
    chk = uniqueness_fd_check(obs, p, 0.0, h)
    assert chk.fd_estimate == pytest.approx((1.0 - math.exp(-h)) / (2.0 * h), rel=1e-9)
    assert chk.abs_error <= h  # O(h), not O(h^2)


def test_fd_check_domain():
    obs = Observation(0.0)
    p = LocScaleParams(0.0, 1.0)
    for h in (0.0, -1e-5, math.nan):
        with pytest.raises(DomainError):
            uniqueness_fd_check(obs, p, 0.7, h)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def test_dual_of_registry():
    cd = dual_of(Family.LAPLACE, Observation(2.5), 1.0)
    assert cd == ConfidenceDensity(DensityFamily.LAPLACE_LOC, 2.5, 1.0)
    cdn = dual_of(Family.NORMAL, Observation(0.0), 3.0)
    assert cdn == ConfidenceDensity(DensityFamily.NORMAL_LOC, 0.0, 3.0)
    cdc = dual_of(Family.CAUCHY, Observation(-1.0), 0.5)
    assert cdc == ConfidenceDensity(DensityFamily.CAUCHY_LOC, -1.0, 0.5)
    cdp = dual_of(Family.POISSON, 0)
    assert cdp == ConfidenceDensity(DensityFamily.POISSON_RATE, 0.0, 1.0)
    # n = 0 gives the unit exponential rate density
    for lam in (0.0, 0.5, 3.0):
        assert confidence_density(cdp, lam) == pytest.approx(math.exp(-lam), rel=1e-14)


def test_dual_of_errors():
    with pytest.raises(RegistryError):
        dual_of("weibull", Observation(0.0), 1.0)
    with pytest.raises(DomainError):
        dual_of(Family.LAPLACE, Observation(0.0))  # missing scale
    with pytest.raises(DomainError):
        dual_of(Family.POISSON, 3, 1.0)  # poisson takes no scale
    with pytest.raises(DomainError):
        dual_of(Family.POISSON, -1)
    with pytest.raises(DomainError):
        dual_of(Family.POISSON, Observation(3.0))


# ---------------------------------------------------------------------------
# interval construction
# ---------------------------------------------------------------------------

def test_laplace_central_frozen_endpoints():
    cd = laplace_cd()
    iv = solve_interval(cd, 0.9, IntervalKind.CENTRAL)
    assert iv.lower == pytest.approx(-2.302585092994046, abs=1e-12)
    assert iv.upper == pytest.approx(2.302585092994046, abs=1e-12)


def test_laplace_upper_limit_value():
    cd = laplace_cd()
    iv = solve_interval(cd, 0.95, IntervalKind.UPPER_LIMIT)
    assert iv.lower == -math.inf
    assert iv.upper == pytest.approx(2.302585092994046, abs=1e-12)


def test_poisson_zero_count_upper_limit():
    cd = dual_of(Family.POISSON, 0)
    iv = solve_interval(cd, 0.95, IntervalKind.UPPER_LIMIT)
    assert iv.lower == 0.0
    assert iv.upper == pytest.approx(2.995732273553991, abs=1e-9)


@pytest.mark.parametrize("level", LEVELS)
@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("cd", [
    dual_of(Family.LAPLACE, Observation(1.3), 0.8),
    dual_of(Family.NORMAL, Observation(-2.0), 1.5),
    dual_of(Family.CAUCHY, Observation(0.4), 2.0),
    dual_of(Family.POISSON, 3),
], ids=["laplace", "normal", "cauchy", "poisson"])
def test_interval_achieves_level(cd, kind, level):
    iv = solve_interval(cd, level, kind)
    assert interval_probability(cd, iv.lower, iv.upper) == pytest.approx(level, abs=1e-9)


def test_central_is_symmetric_about_observation():
    for x_hat in (-5.0, 0.0, 3.7, 1e6):
        cd = laplace_cd(x_hat, 2.0)
        iv = solve_interval(cd, 0.95, IntervalKind.CENTRAL)
        tol = 4.0 * math.ulp(max(abs(x_hat), 1.0))
        assert abs((iv.lower + iv.upper) - 2.0 * x_hat) <= tol


def test_shortest_equals_central_for_location_families():
    for family, scale in [(Family.LAPLACE, 1.0), (Family.NORMAL, 2.0), (Family.CAUCHY, 0.3)]:
        cd = dual_of(family, Observation(0.7), scale)
        central = solve_interval(cd, 0.9, IntervalKind.CENTRAL)
        shortest = solve_interval(cd, 0.9, IntervalKind.SHORTEST)
        assert shortest.lower == central.lower
        assert shortest.upper == central.upper


def test_poisson_shortest_for_zero_count_touches_boundary():
    cd = dual_of(Family.POISSON, 0)
    iv = solve_interval(cd, 0.9, IntervalKind.SHORTEST)
    assert iv.lower == 0.0
    assert iv.upper == pytest.approx(-math.log(0.1), abs=1e-9)


@pytest.mark.parametrize("n", [0, 2])
def test_poisson_shortest_beats_scan(n):
    # brute-force oracle: scan left endpoints, pair each with the right
    # endpoint that reaches the mass, keep the narrowest
    level = 0.9
    cd = dual_of(Family.POISSON, n)
    iv = solve_interval(cd, level, IntervalKind.SHORTEST)
    g = GammaParams(n + 1.0, 1.0)
    left_max = gamma_quantile(1.0 - level, g)
    points = 400
    best = math.inf
    for i in range(points):
        left = left_max * i / points
        target = level + gamma_cdf(left, g)
        if target >= 1.0:
            break
        width = gamma_quantile(target, g) - left
        best = min(best, width)
    assert iv.width <= best + left_max / points


def test_interval_monotonicity_in_level():
    for cd in (laplace_cd(0.3, 1.7), dual_of(Family.POISSON, 2)):
        widths = []
        uppers = []
        for level in (0.5, 0.6827, 0.8, 0.9, 0.95, 0.99):
            widths.append(solve_interval(cd, level, IntervalKind.CENTRAL).width)
            uppers.append(solve_interval(cd, level, IntervalKind.UPPER_LIMIT).upper)
        assert widths == sorted(widths)
        assert all(a < b for a, b in zip(uppers, uppers[1:]))


def test_interval_sentinels_and_validation():
    cd = laplace_cd()
    lower_iv = solve_interval(cd, 0.9, IntervalKind.LOWER_LIMIT)
    assert lower_iv.upper == math.inf
    assert math.isfinite(lower_iv.lower)
    with pytest.raises(DomainError):
        solve_interval(cd, 1.0, IntervalKind.CENTRAL)
    with pytest.raises(DomainError):
        solve_interval(cd, 0.0, IntervalKind.CENTRAL)


def test_gamma_shortest_endpoints_have_equal_density():
    for n in (1, 2, 5):
        cd = dual_of(Family.POISSON, n)
        iv = solve_interval(cd, 0.9, IntervalKind.SHORTEST)
        g = GammaParams(n + 1.0, 1.0)
        assert gamma_pdf(iv.lower, g) == pytest.approx(gamma_pdf(iv.upper, g), rel=1e-6)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

def test_observation_validation():
    with pytest.raises(DomainError):
        Observation(math.nan)
    with pytest.raises(DomainError):
        Observation(math.inf)


def test_confidence_density_validation():
    with pytest.raises(DomainError):
        ConfidenceDensity(DensityFamily.LAPLACE_LOC, 0.0, -1.0)
    with pytest.raises(DomainError):
        ConfidenceDensity(DensityFamily.POISSON_RATE, 2.5)
    with pytest.raises(DomainError):
        ConfidenceDensity(DensityFamily.POISSON_RATE, 2.0, 3.0)


def test_poisson_pmf_consistency_with_density():
    # rate density at the observed count relates to the pmf recurrence;
    # spot-check the confidence density against the closed Gamma form
    cd = dual_of(Family.POISSON, 4)
    lam = 3.3
    expected = lam**4 * math.exp(-lam) / math.factorial(4)
    assert confidence_density(cd, lam) == pytest.approx(expected, rel=1e-13)
    assert poisson_pmf(4, lam) == pytest.approx(expected, rel=1e-13)
