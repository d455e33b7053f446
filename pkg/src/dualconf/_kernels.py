"""Backend selection: compiled kernels when available, pure Python otherwise.

Set ``DUALCONF_FORCE_PY=1`` to skip the compiled extension (useful for the
backend benchmark and for debugging).
"""

from __future__ import annotations

import os

if os.environ.get("DUALCONF_FORCE_PY"):
    from . import _pykernels as impl
else:
    try:
        from . import _fastkernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as impl

BACKEND = impl.BACKEND

FAMILY_LAPLACE = impl.FAMILY_LAPLACE
FAMILY_NORMAL = impl.FAMILY_NORMAL
FAMILY_CAUCHY = impl.FAMILY_CAUCHY

trial_uniform = impl.trial_uniform
std_normal_quantile = impl.std_normal_quantile
count_location_hits = impl.count_location_hits
poisson_count_histogram = impl.poisson_count_histogram
location_samples = impl.location_samples


def backend_name() -> str:
    """Name of the active kernel backend ("compiled" or "python")."""
    return BACKEND
