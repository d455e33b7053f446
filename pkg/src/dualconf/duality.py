"""Confidence densities by parameter/variable exchange, and their intervals.

The registry holds the families for which exchanging the observable and the
location parameter conserves the density formula (Laplace, Normal, Cauchy),
plus the Poisson count model whose rate gets a Gamma-shaped confidence
density.  From a single observation the exchange yields a density over the
parameter; interval probabilities, interval solvers, the three-term unit
identity and the finite-difference uniqueness check all live here.

Intervals for a location parameter have exact frequentist coverage, which
``montecarlo`` validates empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Union

from . import quad
from .dists import (
    GammaParams,
    LocScaleParams,
    cauchy_cdf,
    cauchy_pdf,
    cauchy_quantile,
    gamma_cdf,
    gamma_pdf,
    gamma_quantile,
    laplace_cdf,
    laplace_pdf,
    laplace_quantile,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    poisson_cdf,
)
from .errors import DomainError, OrderingError, RegistryError

__all__ = [
    "Family",
    "DensityFamily",
    "IntervalKind",
    "Observation",
    "ConfidenceDensity",
    "Interval",
    "IdentityCheck",
    "FdCheck",
    "dual_of",
    "confidence_density",
    "interval_probability",
    "solve_interval",
    "identity_terms",
    "identity_residual",
    "uniqueness_fd_check",
]


class Family(Enum):
    """Sampling-side families known to the duality registry."""

    LAPLACE = "laplace"
    NORMAL = "normal"
    CAUCHY = "cauchy"
    POISSON = "poisson"


class DensityFamily(Enum):
    """Parameter-side (confidence density) families."""

    LAPLACE_LOC = "laplace_loc"
    NORMAL_LOC = "normal_loc"
    CAUCHY_LOC = "cauchy_loc"
    POISSON_RATE = "poisson_rate"


class IntervalKind(Enum):
    CENTRAL = "central"
    SHORTEST = "shortest"
    UPPER_LIMIT = "upper_limit"
    LOWER_LIMIT = "lower_limit"


_LOCATION_FAMILIES = (
    DensityFamily.LAPLACE_LOC,
    DensityFamily.NORMAL_LOC,
    DensityFamily.CAUCHY_LOC,
)

# (pdf, cdf, quantile) triplets on LocScaleParams, keyed by parameter-side family
_LOC_FUNCS = {
    DensityFamily.LAPLACE_LOC: (laplace_pdf, laplace_cdf, laplace_quantile),
    DensityFamily.NORMAL_LOC: (normal_pdf, normal_cdf, normal_quantile),
    DensityFamily.CAUCHY_LOC: (cauchy_pdf, cauchy_cdf, cauchy_quantile),
}


@dataclass(frozen=True)
class Observation:
    """A single measured value of the observable."""

    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"observation must be finite, got {self.value!r}")


@dataclass(frozen=True)
class ConfidenceDensity:
    """A density over the parameter, fixed by the observation and the scale.

    ``center`` is the observed value for location families and the observed
    count for POISSON_RATE (whose scale is fixed to 1).
    """

    family: DensityFamily
    center: float
    scale: float = 1.0

    def __post_init__(self):
        if self.family is DensityFamily.POISSON_RATE:
            if self.center != int(self.center) or self.center < 0:
                raise DomainError(
                    f"observed count must be a non-negative integer, got {self.center!r}"
                )
            if self.scale != 1.0:
                raise DomainError("POISSON_RATE has no scale; it is fixed to 1")
        else:
            if not math.isfinite(self.center):
                raise DomainError(f"center must be finite, got {self.center!r}")
            if not (math.isfinite(self.scale) and self.scale > 0.0):
                raise DomainError(f"scale must be finite and > 0, got {self.scale!r}")

    @property
    def count(self) -> int:
        if self.family is not DensityFamily.POISSON_RATE:
            raise DomainError("count is only defined for POISSON_RATE")
        return int(self.center)

    def _gamma(self) -> GammaParams:
        return GammaParams(shape=self.count + 1.0, rate=1.0)


@dataclass(frozen=True)
class Interval:
    """Confidence/fiducial interval; one-sided intervals carry +-inf endpoints."""

    lower: float
    upper: float
    level: float
    kind: IntervalKind

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise OrderingError(
                f"interval endpoints out of order: {self.lower!r} > {self.upper!r}"
            )
        if not (0.0 < self.level < 1.0):
            raise DomainError(f"level must be in (0, 1), got {self.level!r}")

    @property
    def width(self) -> float:
        return self.upper - self.lower


class IdentityCheck(NamedTuple):
    t1: float
    t2: float
    t3: float
    total: float
    residual: float


class FdCheck(NamedTuple):
    fd_estimate: float
    exact: float
    abs_error: float


def dual_of(
    family: Family,
    obs: Union[Observation, int],
    scale: float | None = None,
) -> ConfidenceDensity:
    """Registry lookup: the confidence density dual to a sampling family.

    Location families are self-dual (same family, centered at the observed
    value, same scale).  A Poisson count n maps to the Gamma-shaped rate
    density with shape n + 1 and rate 1.
    """
    if family is Family.POISSON:
        if scale is not None:
            raise DomainError("poisson takes no scale parameter")
        if isinstance(obs, Observation):
            raise DomainError("poisson requires an observed count, not an Observation")
        if not isinstance(obs, int) or isinstance(obs, bool) or obs < 0:
            raise DomainError(f"observed count must be a non-negative integer, got {obs!r}")
        return ConfidenceDensity(DensityFamily.POISSON_RATE, float(obs))
    if not isinstance(family, Family):
        raise RegistryError(f"unknown family: {family!r}")
    if not isinstance(obs, Observation):
        obs = Observation(float(obs))
    if scale is None:
        raise DomainError(f"{family.value} requires a scale")
    mapping = {
        Family.LAPLACE: DensityFamily.LAPLACE_LOC,
        Family.NORMAL: DensityFamily.NORMAL_LOC,
        Family.CAUCHY: DensityFamily.CAUCHY_LOC,
    }
    return ConfidenceDensity(mapping[family], obs.value, float(scale))


def confidence_density(cd: ConfidenceDensity, theta: float) -> float:
    """Evaluate the confidence density at parameter value theta.

    For location families this is literally the sampling pdf evaluated at
    the observed value with location theta; the exchange shares one code
    path, so equality with the sampling density is bit-for-bit.
    """
    if cd.family is DensityFamily.POISSON_RATE:
        if not math.isfinite(theta) or theta < 0.0:
            raise DomainError(f"rate must be >= 0, got {theta!r}")
        return gamma_pdf(theta, cd._gamma())
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta!r}")
    pdf = _LOC_FUNCS[cd.family][0]
    return pdf(cd.center, LocScaleParams(theta, cd.scale))


def _sampling_cdf_at(cd: ConfidenceDensity, a: float) -> float:
    """P(observable <= observed | parameter = a), with limit values at +-inf."""
    if cd.family is DensityFamily.POISSON_RATE:
        if a < 0.0:
            raise DomainError(f"rate must be >= 0, got {a!r}")
        if math.isinf(a):
            return 0.0
        return poisson_cdf(cd.count, a)
    if math.isinf(a):
        return 1.0 if a < 0 else 0.0
    cdf = _LOC_FUNCS[cd.family][1]
    return cdf(cd.center, LocScaleParams(a, cd.scale))


def _param_cdf_at(cd: ConfidenceDensity, a: float) -> float:
    """CDF of the confidence density itself at parameter value a."""
    if cd.family is DensityFamily.POISSON_RATE:
        if a < 0.0:
            raise DomainError(f"rate must be >= 0, got {a!r}")
        if math.isinf(a):
            return 1.0
        return gamma_cdf(a, cd._gamma())
    if math.isinf(a):
        return 0.0 if a < 0 else 1.0
    cdf = _LOC_FUNCS[cd.family][1]
    return cdf(a, LocScaleParams(cd.center, cd.scale))


def _check_order(a1: float, a2: float) -> None:
    if math.isnan(a1) or math.isnan(a2):
        raise DomainError("interval endpoints must not be NaN")
    if a1 > a2:
        raise OrderingError(f"endpoints out of order: a1={a1!r} > a2={a2!r}")


def interval_probability(cd: ConfidenceDensity, a1: float, a2: float) -> float:
    """Probability the parameter lies in [a1, a2], from the sampling CDFs.

    Evaluates P(x <= observed | a1) - P(x <= observed | a2) (Poisson tail
    sums for POISSON_RATE); this equals the confidence-density mass on
    [a1, a2].  Endpoint order is enforced, never swapped.
    """
    _check_order(a1, a2)
    v = _sampling_cdf_at(cd, a1) - _sampling_cdf_at(cd, a2)
    return min(1.0, max(0.0, v))


def _cd_quantile(cd: ConfidenceDensity, q: float) -> float:
    if cd.family is DensityFamily.POISSON_RATE:
        return gamma_quantile(q, cd._gamma())
    quantile = _LOC_FUNCS[cd.family][2]
    return quantile(q, LocScaleParams(cd.center, cd.scale))


def _bisect_root(f: Callable[[float], float], lo: float, hi: float) -> float:
    """Sign-change bisection run to floating-point resolution; deterministic."""
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _gamma_shortest(g: GammaParams, level: float) -> tuple[float, float]:
    """Highest-density interval of the Gamma confidence density by level-set search.

    For shape 1 the density is maximal at 0 and strictly decreasing, so the
    interval touches the support boundary: [0, quantile(level)].  Otherwise
    bisect on the density height c and pair the two pdf == c crossings
    around the mode until the enclosed mass equals the level.
    """
    if g.shape == 1.0:
        return 0.0, gamma_quantile(level, g)
    mode = (g.shape - 1.0) / g.rate
    peak = gamma_pdf(mode, g)

    def crossings(c: float) -> tuple[float, float]:
        left = _bisect_root(lambda t: gamma_pdf(t, g) - c, 0.0, mode)
        hi = mode + (mode + 1.0 / g.rate)
        for _ in range(200):
            if gamma_pdf(hi, g) < c:
                break
            hi *= 2.0
        right = _bisect_root(lambda t: gamma_pdf(t, g) - c, mode, hi)
        return left, right

    def mass_minus_level(c: float) -> float:
        left, right = crossings(c)
        return (gamma_cdf(right, g) - gamma_cdf(left, g)) - level

    c_lo, c_hi = 0.0, peak
    for _ in range(200):
        c_mid = 0.5 * (c_lo + c_hi)
        if c_mid == c_lo or c_mid == c_hi:
            break
        if mass_minus_level(c_mid) > 0.0:
            c_lo = c_mid
        else:
            c_hi = c_mid
    return crossings(0.5 * (c_lo + c_hi))


def solve_interval(cd: ConfidenceDensity, level: float, kind: IntervalKind) -> Interval:
    """Construct the interval of the requested kind and level.

    For symmetric unimodal location families the shortest interval equals
    the central one, so that branch delegates structurally rather than
    re-deriving it numerically; POISSON_RATE gets the genuine level-set
    search.
    """
    if not (0.0 < level < 1.0):
        raise DomainError(f"level must be in (0, 1), got {level!r}")
    poisson = cd.family is DensityFamily.POISSON_RATE
    if kind is IntervalKind.SHORTEST and poisson:
        lower, upper = _gamma_shortest(cd._gamma(), level)
        return Interval(lower, upper, level, kind)
    if kind in (IntervalKind.CENTRAL, IntervalKind.SHORTEST):
        tail = (1.0 - level) / 2.0
        return Interval(
            _cd_quantile(cd, tail), _cd_quantile(cd, 1.0 - tail), level, kind
        )
    if kind is IntervalKind.UPPER_LIMIT:
        lower = 0.0 if poisson else -math.inf
        return Interval(lower, _cd_quantile(cd, level), level, kind)
    if kind is IntervalKind.LOWER_LIMIT:
        return Interval(_cd_quantile(cd, 1.0 - level), math.inf, level, kind)
    raise DomainError(f"unknown interval kind: {kind!r}")


def _location_tail_terms_quadrature(
    cd: ConfidenceDensity, a1: float, a2: float, tol: float
) -> tuple[float, float]:
    # Tails are quadratured over a finite range; the truncated remainder is
    # added from the closed-form CDF (never an improper integral).
    pdf, cdf, _ = _LOC_FUNCS[cd.family]
    x_hat, b = cd.center, cd.scale
    # Light exponential tails truncate at 45 scales (remainder < 1e-19); the
    # heavy Cauchy tail keeps a larger analytic remainder instead.
    span = 1e4 * b if cd.family is DensityFamily.CAUCHY_LOC else 45.0 * b
    p1 = LocScaleParams(a1, b)
    hi = max(x_hat, a1) + span
    t1 = quad.integrate_kinked(lambda x: pdf(x, p1), x_hat, hi, a1, tol).value
    t1 += 1.0 - cdf(hi, p1)
    p2 = LocScaleParams(a2, b)
    lo = min(x_hat, a2) - span
    t3 = quad.integrate_kinked(lambda x: pdf(x, p2), lo, x_hat, a2, tol).value
    t3 += cdf(lo, p2)
    return t1, t3


def identity_terms(
    cd: ConfidenceDensity,
    a1: float,
    a2: float,
    method: str = "closed_form",
    quad_tol: float = quad.DEFAULT_TOL,
) -> IdentityCheck:
    """The three-term unit identity: right tail at a1, parameter mass on
    [a1, a2], left tail at a2; their sum is 1 for any valid a1 <= a2.

    ``closed_form`` evaluates everything through CDFs; ``quadrature``
    integrates the confidence density (and, as a cross-check, the truncated
    sampling-density tails plus analytic remainders) numerically.  For
    POISSON_RATE the first and third terms are Poisson tail sums under both
    methods.
    """
    _check_order(a1, a2)
    if not (math.isfinite(a1) and math.isfinite(a2)):
        raise DomainError("identity endpoints must be finite")
    if method not in ("closed_form", "quadrature"):
        raise DomainError(f"unknown method: {method!r}")

    poisson = cd.family is DensityFamily.POISSON_RATE
    if method == "closed_form" or poisson:
        t1 = 1.0 - _sampling_cdf_at(cd, a1)
        t3 = _sampling_cdf_at(cd, a2)
    else:
        t1, t3 = _location_tail_terms_quadrature(cd, a1, a2, quad_tol)

    if method == "closed_form":
        t2 = _param_cdf_at(cd, a2) - _param_cdf_at(cd, a1)
    elif poisson:
        t2 = quad.integrate(lambda th: confidence_density(cd, th), a1, a2, quad_tol).value
    else:
        t2 = quad.integrate_kinked(
            lambda th: confidence_density(cd, th), a1, a2, cd.center, quad_tol
        ).value

    total = t1 + t2 + t3
    return IdentityCheck(t1, t2, t3, total, abs(total - 1.0))


def identity_residual(
    cd: ConfidenceDensity,
    a1: float,
    a2: float,
    method: str = "closed_form",
    quad_tol: float = quad.DEFAULT_TOL,
) -> float:
    return identity_terms(cd, a1, a2, method, quad_tol).residual


def uniqueness_fd_check(
    obs: Observation, p: LocScaleParams, a: float, h: float
) -> FdCheck:
    """Central finite difference of -P(x <= observed | a) in a versus the
    confidence density at a.

    The only density consistent with the interval construction for all
    endpoint pairs is the negative parameter-derivative of the sampling
    CDF; away from the non-smooth point a == observed the error is O(h^2).
    """
    if not (h > 0.0 and math.isfinite(h)):
        raise DomainError(f"h must be a positive finite real, got {h!r}")
    if not math.isfinite(a):
        raise DomainError(f"a must be finite, got {a!r}")
    x_hat = obs.value
    fd = -(
        laplace_cdf(x_hat, LocScaleParams(a + h, p.scale))
        - laplace_cdf(x_hat, LocScaleParams(a - h, p.scale))
    ) / (2.0 * h)
    exact = confidence_density(
        ConfidenceDensity(DensityFamily.LAPLACE_LOC, x_hat, p.scale), a
    )
    return FdCheck(fd, exact, abs(fd - exact))
