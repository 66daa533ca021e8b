# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo kernels: inverse-CDF transform and per-sample
five-number summary extraction.

Mirrors ``fivenum._kernels.pure``; selected at import time by
``fivenum._kernels`` when present.
"""

import numpy as np

from libc.math cimport erfc, exp, log, sqrt
from libc.stdlib cimport free, malloc

BACKEND = "compiled"

cdef double SQRT2 = 1.4142135623730951
cdef double INV_SQRT_2PI = 0.3989422804014327


cdef inline double _cdf(double x) nogil:
    return 0.5 * erfc(-x / SQRT2)


cdef inline double _pdf(double x) nogil:
    return INV_SQRT_2PI * exp(-0.5 * x * x)


cdef double _ppnd16(double p) nogil:
    # AS 241 double-precision rational approximation
    cdef double q = p - 0.5
    cdef double r, num, den, x
    if q <= 0.425 and q >= -0.425:
        r = 0.180625 - q * q
        num = q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
              + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
              + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
              + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
              + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
              + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
              + 4.2313330701600911252e1) * r + 1.0)
        return num / den
    if q < 0.0:
        r = p
    else:
        r = 1.0 - p
    r = sqrt(-log(r))
    if r <= 5.0:
        r -= 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
              + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
              + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
              + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
              + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
              + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
              + 2.05319162663775882187e0) * r + 1.0)
    else:
        r -= 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
              + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
              + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
              + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
              + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
              + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
              + 5.99832206555887937690e-1) * r + 1.0)
    x = num / den
    if q < 0.0:
        x = -x
    return x


cdef inline double _quantile(double p) nogil:
    cdef double x = _ppnd16(p)
    cdef double dens = _pdf(x)
    if dens > 0.0:
        x -= (_cdf(x) - p) / dens
    return x


def quantile_transform(u):
    """Map uniforms in (0,1) to standard normal variates (inverse CDF)."""
    arr = np.ascontiguousarray(u, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] src = arr.reshape(-1)
    cdef double[::1] dst = out.reshape(-1)
    cdef Py_ssize_t i, m = src.shape[0]
    with nogil:
        for i in range(m):
            dst[i] = _quantile(src[i])
    return out


cdef Py_ssize_t _hoare(double* a, Py_ssize_t lo, Py_ssize_t hi) nogil:
    # median-of-three moved to a[lo], then classic Hoare partition
    cdef Py_ssize_t mid = lo + (hi - lo) // 2
    cdef Py_ssize_t midx
    cdef double pivot, tmp
    if (a[lo] <= a[mid]) == (a[mid] <= a[hi]):
        midx = mid
    elif (a[mid] <= a[lo]) == (a[lo] <= a[hi]):
        midx = lo
    else:
        midx = hi
    tmp = a[lo]; a[lo] = a[midx]; a[midx] = tmp
    pivot = a[lo]
    cdef Py_ssize_t i = lo - 1, j = hi + 1
    while True:
        i += 1
        while a[i] < pivot:
            i += 1
        j -= 1
        while a[j] > pivot:
            j -= 1
        if i >= j:
            return j
        tmp = a[i]; a[i] = a[j]; a[j] = tmp


cdef void _select(double* a, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t k) nogil:
    # rearrange a[lo..hi] so that a[k] holds the k-th order statistic
    cdef Py_ssize_t p
    while lo < hi:
        p = _hoare(a, lo, hi)
        if k <= p:
            hi = p
        else:
            lo = p + 1


def block_summaries(x, Py_ssize_t q):
    """Five-number summary plus sample SD for each row (n = 4q+1)."""
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D block of samples")
    if q < 1:
        raise ValueError("q must be >= 1")
    cdef Py_ssize_t rows = arr.shape[0], n = arr.shape[1]
    if n != 4 * q + 1:
        raise ValueError(f"row length {n} does not match 4*q+1 for q={q}")
    out = np.empty((rows, 6), dtype=np.float64)
    cdef double[:, ::1] src = arr
    cdef double[:, ::1] dst = out
    cdef double* buf = <double*> malloc(n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t r, i
    cdef double s, mean, acc, d, v
    try:
        with nogil:
            for r in range(rows):
                s = 0.0
                for i in range(n):
                    buf[i] = src[r, i]
                    s += buf[i]
                mean = s / n
                acc = 0.0
                for i in range(n):
                    d = src[r, i] - mean
                    acc += d * d
                dst[r, 5] = sqrt(acc / (n - 1))
                _select(buf, 0, n - 1, q)
                v = buf[0]
                for i in range(1, q):
                    if buf[i] < v:
                        v = buf[i]
                dst[r, 0] = v
                dst[r, 1] = buf[q]
                _select(buf, q + 1, n - 1, 2 * q)
                dst[r, 2] = buf[2 * q]
                _select(buf, 2 * q + 1, n - 1, 3 * q)
                dst[r, 3] = buf[3 * q]
                v = buf[3 * q + 1]
                for i in range(3 * q + 2, n):
                    if buf[i] > v:
                        v = buf[i]
                dst[r, 4] = v
    finally:
        free(buf)
    return out
