"""Pure-Python trial kernels: counter-based deviates and coverage loops.

This is the fallback backend; ``_fastkernels.pyx`` is a line-for-line
compiled twin.  Every floating-point expression here must stay in the same
order and use the same constants as the compiled version so the two
backends return bit-identical results (enforced by tests/test_kernels.py).

Counter-based deviate derivation: the uniform for trial ``i`` under seed
``s`` is

    base = (s + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64
    z    = mix64(base + j * 0xD1B54A32D192ED03)   for j = 0, 1, ...
    u    = (z >> 11) * 2^-53

where mix64 is the splitmix64 finalizer and j increments until u lands in
the open interval (0, 1) (u == 0 is rejected; u == 1 cannot occur but is
checked anyway).  Trials are therefore independent of evaluation order and
of how work is split across workers.
"""

from __future__ import annotations

import math
from array import array

from .dists import _cauchy_quantile_raw, _laplace_quantile_raw, _normal_quantile_raw

BACKEND = "python"

FAMILY_LAPLACE = 0
FAMILY_NORMAL = 1
FAMILY_CAUCHY = 2

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_GAMMA2 = 0xD1B54A32D192ED03
_INV_2_53 = 1.1102230246251565e-16  # 2^-53 exactly

_QUANTILES = {
    FAMILY_LAPLACE: _laplace_quantile_raw,
    FAMILY_NORMAL: _normal_quantile_raw,
    FAMILY_CAUCHY: _cauchy_quantile_raw,
}


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def trial_uniform(seed: int, index: int) -> float:
    """Uniform deviate in (0, 1) for one trial, a pure function of (seed, index)."""
    base = (seed + (index + 1) * _GAMMA) & _MASK64
    j = 0
    while True:
        u = (_mix64((base + j * _GAMMA2) & _MASK64) >> 11) * _INV_2_53
        if 0.0 < u < 1.0:
            return u
        j += 1


def std_normal_quantile(q: float) -> float:
    return _normal_quantile_raw(q, 0.0, 1.0)


def count_location_hits(
    family: int,
    true_loc: float,
    scale: float,
    lower_off: float,
    upper_off: float,
    seed: int,
    start: int,
    stop: int,
) -> int:
    """Hit count over trials [start, stop) for a location-family interval.

    Interval offsets are relative to the drawn observation; +-inf offsets
    encode one-sided intervals.
    """
    quantile = _QUANTILES[family]
    hits = 0
    for i in range(start, stop):
        u = trial_uniform(seed, i)
        x = quantile(u, true_loc, scale)
        if x + lower_off <= true_loc <= x + upper_off:
            hits += 1
    return hits


def poisson_count_histogram(
    lam: float, n_cap: int, seed: int, start: int, stop: int
) -> array:
    """Histogram of Poisson counts drawn by CDF inversion over trials [start, stop).

    Counts above ``n_cap`` are clamped into the last bin (astronomically
    rare for any reasonable cap; keeps the table size fixed).
    """
    counts = array("q", [0]) * (n_cap + 1)
    for i in range(start, stop):
        u = trial_uniform(seed, i)
        term = math.exp(-lam)
        cum = term
        n = 0
        while u > cum and n < n_cap:
            n += 1
            term *= lam / n
            cum += term
        counts[n] += 1
    return counts


def location_samples(
    family: int, loc: float, scale: float, seed: int, start: int, stop: int
) -> array:
    """Inverse-transform samples for trials [start, stop), one per index."""
    quantile = _QUANTILES[family]
    out = array("d", [0.0]) * (stop - start)
    for i in range(start, stop):
        out[i - start] = quantile(trial_uniform(seed, i), loc, scale)
    return out
