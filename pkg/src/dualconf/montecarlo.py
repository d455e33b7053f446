"""Seeded coverage simulation for the interval construction.

Each trial derives its uniform deviate purely from (seed, trial index)
(see ``_pykernels`` for the exact counter-based derivation), draws one
observation by inverse transform, builds the interval and counts a hit if
it contains the truth (closed at both endpoints).  All reductions are
exact integer sums, so the report is bitwise identical for any worker
count and either kernel backend.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from . import _kernels
from .dists import LocScaleParams
from .duality import Family, IntervalKind, Observation, dual_of, solve_interval
from .errors import DomainError

__all__ = ["ExperimentSpec", "CoverageReport", "run_coverage", "run_coverage_poisson"]

_TWO_SIDED = (IntervalKind.CENTRAL, IntervalKind.SHORTEST)

_FAMILY_CODES = {
    Family.LAPLACE: _kernels.FAMILY_LAPLACE,
    Family.NORMAL: _kernels.FAMILY_NORMAL,
    Family.CAUCHY: _kernels.FAMILY_CAUCHY,
}


@dataclass(frozen=True)
class ExperimentSpec:
    """One coverage experiment: family, truth, level/kind, trials, seed, workers.

    ``true_params`` is a ``LocScaleParams`` for the location families and
    the true mean (a positive float) for POISSON.
    """

    family: Family
    true_params: Union[LocScaleParams, float]
    level: float
    kind: IntervalKind
    trials: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        if not (0.0 < self.level < 1.0):
            raise DomainError(f"level must be in (0, 1), got {self.level!r}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials!r}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers!r}")
        if not (0 <= self.seed < 2**64):
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.family is Family.POISSON:
            mean = self.true_params
            if (
                not isinstance(mean, (int, float))
                or isinstance(mean, bool)
                or not (mean > 0 and math.isfinite(mean))
            ):
                raise DomainError(
                    "POISSON requires true_params to be a positive finite mean"
                )
        elif not isinstance(self.true_params, LocScaleParams):
            raise DomainError(
                f"{self.family.value} requires true_params to be LocScaleParams"
            )


@dataclass(frozen=True)
class CoverageReport:
    trials: int
    hits: int
    coverage: float
    binom_se: float
    mean_width: float | None
    seed: int


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    workers = min(workers, trials)
    base, rem = divmod(trials, workers)
    ranges = []
    start = 0
    for w in range(workers):
        stop = start + base + (1 if w < rem else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def _map_chunks(fn, ranges, workers):
    if workers <= 1 or len(ranges) <= 1:
        return [fn(start, stop) for start, stop in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def run_coverage(spec: ExperimentSpec) -> CoverageReport:
    """Run the experiment and report empirical coverage.

    For location families every interval has the same width (the offsets
    from the observation are fixed by level and kind), so ``mean_width``
    is that constant; it is omitted for one-sided kinds.
    """
    if spec.family is Family.POISSON:
        return run_coverage_poisson(spec)
    params = spec.true_params
    probe = dual_of(spec.family, Observation(0.0), params.scale)
    offsets = solve_interval(probe, spec.level, spec.kind)
    code = _FAMILY_CODES[spec.family]

    def chunk_hits(start: int, stop: int) -> int:
        return _kernels.count_location_hits(
            code,
            params.location,
            params.scale,
            offsets.lower,
            offsets.upper,
            spec.seed,
            start,
            stop,
        )

    hits = sum(_map_chunks(chunk_hits, _chunks(spec.trials, spec.workers), spec.workers))
    mean_width = offsets.width if spec.kind in _TWO_SIDED else None
    return _report(spec, hits, mean_width)


@lru_cache(maxsize=4096)
def _poisson_interval(n: int, level: float, kind: IntervalKind):
    return solve_interval(dual_of(Family.POISSON, n), level, kind)


def run_coverage_poisson(spec: ExperimentSpec) -> CoverageReport:
    """Coverage for the Poisson count model.

    Counts are drawn by inversion of the discrete CDF from the same
    uniform stream; intervals depend only on the observed count, so they
    are solved once per distinct count from the count histogram.
    """
    if spec.family is not Family.POISSON:
        raise DomainError("run_coverage_poisson requires family == POISSON")
    lam = spec.true_params
    n_cap = int(math.ceil(lam + 60.0 * math.sqrt(lam + 1.0) + 60.0))

    def chunk_counts(start: int, stop: int):
        return _kernels.poisson_count_histogram(lam, n_cap, spec.seed, start, stop)

    partials = _map_chunks(chunk_counts, _chunks(spec.trials, spec.workers), spec.workers)
    counts = [0] * (n_cap + 1)
    for part in partials:
        for n, c in enumerate(part):
            counts[n] += c

    hits = 0
    width_sum = 0.0
    two_sided = spec.kind in _TWO_SIDED
    for n, c in enumerate(counts):
        if c == 0:
            continue
        interval = _poisson_interval(n, spec.level, spec.kind)
        if interval.lower <= lam <= interval.upper:
            hits += c
        if two_sided:
            width_sum += c * interval.width
    mean_width = width_sum / spec.trials if two_sided else None
    return _report(spec, hits, mean_width)


def _report(spec: ExperimentSpec, hits: int, mean_width: float | None) -> CoverageReport:
    return CoverageReport(
        trials=spec.trials,
        hits=hits,
        coverage=hits / spec.trials,
        binom_se=math.sqrt(spec.level * (1.0 - spec.level) / spec.trials),
        mean_width=mean_width,
        seed=spec.seed,
    )
