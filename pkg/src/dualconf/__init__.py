"""Confidence-density ("statistically dual") inference from one observation.

Exact interval construction for the location parameter of self-dual
families (Laplace, Normal, Cauchy) and for the Poisson rate, with
machine-verifiable unit identities, deterministic quadrature cross-checks
and a seeded Monte Carlo coverage harness.
"""

from ._kernels import backend_name
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
    laplace_sample,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    poisson_cdf,
    poisson_pmf,
)
from .duality import (
    ConfidenceDensity,
    DensityFamily,
    Family,
    FdCheck,
    IdentityCheck,
    Interval,
    IntervalKind,
    Observation,
    confidence_density,
    dual_of,
    identity_residual,
    identity_terms,
    interval_probability,
    solve_interval,
    uniqueness_fd_check,
)
from .errors import ConvergenceError, DomainError, OrderingError, RegistryError
from .montecarlo import CoverageReport, ExperimentSpec, run_coverage, run_coverage_poisson
from .quad import DEFAULT_TOL, QuadResult, integrate, integrate_kinked

__version__ = "0.1.0"

__all__ = [
    "LocScaleParams",
    "GammaParams",
    "laplace_pdf",
    "laplace_cdf",
    "laplace_quantile",
    "laplace_sample",
    "normal_pdf",
    "normal_cdf",
    "normal_quantile",
    "cauchy_pdf",
    "cauchy_cdf",
    "cauchy_quantile",
    "poisson_pmf",
    "poisson_cdf",
    "gamma_pdf",
    "gamma_cdf",
    "gamma_quantile",
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
    "QuadResult",
    "integrate",
    "integrate_kinked",
    "DEFAULT_TOL",
    "ExperimentSpec",
    "CoverageReport",
    "run_coverage",
    "run_coverage_poisson",
    "DomainError",
    "OrderingError",
    "RegistryError",
    "ConvergenceError",
    "backend_name",
    "__version__",
]
