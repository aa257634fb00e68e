# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled simulation kernel.

Mirror of ``_pure.py``: same SplitMix64 stream, polar normals, summation
order and exact (Shewchuk) summation, so the two backends return identical
doubles. Build with FP contraction disabled (see setup.py).
"""

import math

from libc.math cimport fabs, sqrt, log, log1p, expm1
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

NAME = "cython"
METHOD_ORDER = ("wendel", "stirling", "frame", "bic")

cdef enum:
    MAX_PARTIALS = 128

cdef double LOG_PI = math.log(math.pi)
cdef double TWO_POW_MINUS_53 = 2.0 ** -53
cdef uint64_t GOLDEN_GAMMA = 0x9E3779B97F4A7C15ULL


cdef struct FSum:
    double p[MAX_PARTIALS]
    int n


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t cell_state(uint64_t seed, uint64_t n_total, uint64_t it) noexcept nogil:
    cdef uint64_t key = mix64(seed + GOLDEN_GAMMA)
    key = mix64(key ^ mix64(n_total + GOLDEN_GAMMA))
    return mix64(key ^ mix64(it + GOLDEN_GAMMA))


cdef inline double next_uniform(uint64_t* state) noexcept nogil:
    state[0] += GOLDEN_GAMMA
    return <double>(mix64(state[0]) >> 11) * TWO_POW_MINUS_53


cdef void fill_normal(uint64_t* state, double mean, double sd, double* out, int n) noexcept nogil:
    cdef int k = 0
    cdef double u, v, s, f
    while k < n:
        u = 2.0 * next_uniform(state) - 1.0
        v = 2.0 * next_uniform(state) - 1.0
        s = u * u + v * v
        if s > 0.0 and s < 1.0:
            f = sqrt(-2.0 * log(s) / s)
            out[k] = mean + sd * (u * f)
            k += 1
            if k < n:
                out[k] = mean + sd * (v * f)
                k += 1


cdef inline void fsum_init(FSum* acc) noexcept nogil:
    acc.n = 0


cdef void fsum_add(FSum* acc, double x) noexcept nogil:
    # CPython math.fsum partials update (finite inputs only)
    cdef int i = 0, j
    cdef double y, t, hi, yr, lo
    for j in range(acc.n):
        y = acc.p[j]
        if fabs(x) < fabs(y):
            t = x
            x = y
            y = t
        hi = x + y
        yr = hi - x
        lo = y - yr
        if lo != 0.0:
            acc.p[i] = lo
            i += 1
        x = hi
    acc.n = i
    if x != 0.0:
        acc.p[acc.n] = x
        acc.n += 1


cdef double fsum_result(FSum* acc) noexcept nogil:
    cdef int n = acc.n
    cdef double hi = 0.0, lo = 0.0, x, y, yr
    if n > 0:
        n -= 1
        hi = acc.p[n]
        while n > 0:
            x = hi
            n -= 1
            y = acc.p[n]
            hi = x + y
            yr = hi - x
            lo = y - yr
            if lo != 0.0:
                break
        # half-even rounding across partials, as CPython does
        if n > 0 and ((lo < 0.0 and acc.p[n - 1] < 0.0) or
                      (lo > 0.0 and acc.p[n - 1] > 0.0)):
            y = lo * 2.0
            x = hi + y
            yr = x - hi
            if y == yr:
                hi = x
    return hi


cdef inline void mean_and_ss(double* xs, int n, double* mean, double* ss) noexcept nogil:
    cdef double total = 0.0, m, d, acc = 0.0
    cdef int k
    for k in range(n):
        total += xs[k]
    m = total / n
    for k in range(n):
        d = xs[k] - m
        acc += d * d
    mean[0] = m
    ss[0] = acc


cdef inline double fsum3_err(double a, double b, double c) noexcept nogil:
    cdef FSum acc
    fsum_init(&acc)
    fsum_add(&acc, a)
    fsum_add(&acc, b)
    fsum_add(&acc, c)
    return 100.0 * fabs(expm1(fsum_result(&acc)))


cdef void errors_at(double t, double nu, double n_total, double* log_c, double* err) noexcept nogil:
    cdef double log_tail = 0.5 * ((nu - 1.0) * log1p(t * t / nu) - LOG_PI)
    cdef double log_bic01 = 0.5 * (log(n_total) - n_total * log1p(t * t / nu))
    cdef FSum acc
    cdef int m
    for m in range(3):
        fsum_init(&acc)
        fsum_add(&acc, log_c[m + 1])
        fsum_add(&acc, log_tail)
        fsum_add(&acc, -log_c[0])
        fsum_add(&acc, -log_tail)
        err[m] = 100.0 * fabs(expm1(fsum_result(&acc)))
    # BIC BF10 = flip(BF01): single negated term
    err[3] = fsum3_err(-log_bic01, -log_c[0], -log_tail)


def iteration_errors(double t, double nu, n_total, log_c):
    cdef double lc[4]
    cdef double err[4]
    for k in range(4):
        lc[k] = log_c[k]
    errors_at(t, nu, <double>n_total, lc, err)
    return (err[0], err[1], err[2], err[3])


def run_cell(seed, n_total, Py_ssize_t iterations, log_c, double[::1] out=None):
    """Same contract as ``_pure.run_cell``. Releases the GIL while looping."""
    cdef uint64_t c_seed = seed
    cdef int N = n_total
    cdef int n1 = (N + 1) // 2, n2 = N // 2
    cdef double nu = N - 2
    cdef double lc[4]
    cdef double err[4]
    cdef FSum acc[4]
    cdef double* a
    cdef double* b
    cdef double d, mean_a, ss_a, mean_b, ss_b, pooled, se, t
    cdef uint64_t state
    cdef Py_ssize_t i
    cdef long redraws = 0
    cdef int k
    cdef bint keep = out is not None
    cdef double* out_ptr = NULL
    if N < 4:
        raise ValueError(f"n_total must be >= 4, got {N}")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if keep:
        if out.shape[0] < 4 * iterations:
            raise ValueError("out buffer too small")
        out_ptr = &out[0]
    for k in range(4):
        lc[k] = log_c[k]
        fsum_init(&acc[k])
    a = <double*> malloc(n1 * sizeof(double))
    b = <double*> malloc(n2 * sizeof(double))
    if a == NULL or b == NULL:
        free(a)
        free(b)
        raise MemoryError()
    try:
        with nogil:
            for i in range(iterations):
                state = cell_state(c_seed, <uint64_t>N, <uint64_t>i)
                while True:
                    d = next_uniform(&state)
                    fill_normal(&state, 0.0, 1.0, a, n1)
                    fill_normal(&state, d, 1.0, b, n2)
                    mean_and_ss(a, n1, &mean_a, &ss_a)
                    mean_and_ss(b, n2, &mean_b, &ss_b)
                    if ss_a == 0.0 and ss_b == 0.0:
                        redraws += 1
                        continue
                    break
                pooled = (ss_a + ss_b) / (n1 + n2 - 2)
                se = sqrt(pooled * (1.0 / n1 + 1.0 / n2))
                t = (mean_a - mean_b) / se
                errors_at(t, nu, <double>N, lc, err)
                for k in range(4):
                    fsum_add(&acc[k], err[k])
                    if keep:
                        out_ptr[4 * i + k] = err[k]
    finally:
        free(a)
        free(b)
    means = []
    for k in range(4):
        means.append(fsum_result(&acc[k]) / iterations)
    return tuple(means), redraws


def substream_state(seed, n_total, iteration):
    return cell_state(<uint64_t>seed, <uint64_t>n_total, <uint64_t>iteration)


def uniforms(seed, Py_ssize_t count):
    cdef uint64_t state = seed
    return [next_uniform(&state) for _ in range(count)]


def normals(seed, double mean, double sd, int n):
    cdef uint64_t state = seed
    cdef double* buf = <double*> malloc(n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        fill_normal(&state, mean, sd, buf, n)
        return [buf[k] for k in range(n)]
    finally:
        free(buf)


def fsum(values):
    cdef FSum acc
    fsum_init(&acc)
    for v in values:
        fsum_add(&acc, v)
    return fsum_result(&acc)
