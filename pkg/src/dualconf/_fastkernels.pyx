# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial kernels; line-for-line twin of ``_pykernels``.

Every floating-point expression mirrors the pure-Python backend exactly
(same constants, same operation order, same libm calls), so both backends
produce bit-identical results.  Compile without FMA contraction
(-ffp-contract=off) to preserve that property.
"""

from libc.math cimport erfc, exp, fabs, log, sqrt, tan

from cpython cimport array
import array

BACKEND = "compiled"

FAMILY_LAPLACE = 0
FAMILY_NORMAL = 1
FAMILY_CAUCHY = 2

cdef double SQRT2 = 1.4142135623730951
cdef double SQRT_2PI = 2.5066282746310002
cdef double PI = 3.141592653589793
cdef double INV_2_53 = 1.1102230246251565e-16

cdef unsigned long long GAMMA = 0x9E3779B97F4A7C15
cdef unsigned long long GAMMA2 = 0xD1B54A32D192ED03
cdef unsigned long long MIX_M1 = 0xBF58476D1CE4E5B9
cdef unsigned long long MIX_M2 = 0x94D049BB133111EB

cdef array.array _TEMPLATE_Q = array.array('q', [])
cdef array.array _TEMPLATE_D = array.array('d', [])


cdef inline unsigned long long _mix64(unsigned long long z) nogil:
    z = (z ^ (z >> 30)) * MIX_M1
    z = (z ^ (z >> 27)) * MIX_M2
    return z ^ (z >> 31)


cdef inline double _trial_uniform(unsigned long long seed, unsigned long long index) nogil:
    cdef unsigned long long base = seed + (index + 1) * GAMMA
    cdef unsigned long long j = 0
    cdef double u
    while True:
        u = <double>(_mix64(base + j * GAMMA2) >> 11) * INV_2_53
        if 0.0 < u < 1.0:
            return u
        j += 1


cdef inline double _std_normal_quantile(double q) nogil:
    cdef double p, t, z, err, step
    cdef int it
    if q == 0.5:
        return 0.0
    p = q if q < 0.5 else 1.0 - q
    t = sqrt(-2.0 * log(p))
    z = -(t - (2.515517 + t * (0.802853 + t * 0.010328))
          / (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308))))
    for it in range(12):
        err = 0.5 * erfc(-z / SQRT2) - p
        step = err / (exp(-0.5 * z * z) / SQRT_2PI)
        z = z - step
        if fabs(step) <= 1e-14 * (1.0 + fabs(z)):
            break
    return -z if q > 0.5 else z


cdef inline double _location_quantile(int family, double u, double a, double b) nogil:
    if family == 0:
        if u == 0.5:
            return a
        if u < 0.5:
            return a + b * log(2.0 * u)
        return a - b * log(2.0 * (1.0 - u))
    elif family == 1:
        return a + b * _std_normal_quantile(u)
    else:
        if u == 0.5:
            return a
        return a + b * tan(PI * (u - 0.5))


def trial_uniform(seed, index):
    return _trial_uniform(<unsigned long long>seed, <unsigned long long>index)


def std_normal_quantile(double q):
    return _std_normal_quantile(q)


def count_location_hits(int family, double true_loc, double scale,
                        double lower_off, double upper_off,
                        seed, long long start, long long stop):
    cdef unsigned long long s = <unsigned long long>seed
    cdef long long i, hits = 0
    cdef double u, x
    with nogil:
        for i in range(start, stop):
            u = _trial_uniform(s, <unsigned long long>i)
            x = _location_quantile(family, u, true_loc, scale)
            if x + lower_off <= true_loc <= x + upper_off:
                hits += 1
    return hits


def poisson_count_histogram(double lam, long long n_cap, seed,
                            long long start, long long stop):
    cdef unsigned long long s = <unsigned long long>seed
    cdef array.array counts = array.clone(_TEMPLATE_Q, n_cap + 1, zero=True)
    cdef long long[::1] view = counts
    cdef long long i, n
    cdef double u, term, cum
    with nogil:
        for i in range(start, stop):
            u = _trial_uniform(s, <unsigned long long>i)
            term = exp(-lam)
            cum = term
            n = 0
            while u > cum and n < n_cap:
                n += 1
                term *= lam / <double>n
                cum += term
            view[n] += 1
    return counts


def location_samples(int family, double loc, double scale, seed,
                     long long start, long long stop):
    cdef unsigned long long s = <unsigned long long>seed
    cdef array.array out = array.clone(_TEMPLATE_D, stop - start, zero=False)
    cdef double[::1] view = out
    cdef long long i
    with nogil:
        for i in range(start, stop):
            view[i - start] = _location_quantile(
                family, _trial_uniform(s, <unsigned long long>i), loc, scale)
    return out
