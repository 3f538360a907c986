# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for fiber-map iteration.

Keep in lockstep with `_corepy`: same functions, same semantics, same
float-level results (prefer the exact same arithmetic expressions so
both paths agree bit for bit).
"""

from libc.math cimport sqrt, isnan, NAN
from libc.stdlib cimport free, malloc

LOGISTIC = 0
MOEBIUS = 1
AFFINE = 2

cdef int _LOGISTIC = 0
cdef int _MOEBIUS = 1
cdef unsigned char _ZERO = 48


cdef inline double _eval(int fam, double p0, double p1, double p2,
                         double shift, double x) nogil:
    cdef double u
    if fam == _LOGISTIC:
        return x + p0 * x * (1.0 - x) + shift
    if fam == _MOEBIUS:
        u = x - p2
        return p0 * u / (1.0 + p1 * u) + shift
    return p0 * (x - p1) + shift


cdef inline double _deriv(int fam, double p0, double p1, double p2,
                          double x) nogil:
    cdef double u
    if fam == _LOGISTIC:
        return 1.0 + p0 - 2.0 * p0 * x
    if fam == _MOEBIUS:
        u = 1.0 + p1 * (x - p2)
        return p0 / (u * u)
    return p0


cdef inline double _inverse(int fam, double p0, double p1, double p2,
                            double shift, double y) nogil:
    cdef double b, disc, den
    y = y - shift
    if fam == _LOGISTIC:
        if p0 == 0.0:
            return y
        b = 1.0 + p0
        disc = b * b - 4.0 * p0 * y
        if disc < 0.0:
            disc = 0.0
        return (b - sqrt(disc)) / (2.0 * p0)
    if fam == _MOEBIUS:
        den = p0 - p1 * y
        if den <= 0.0:
            return NAN
        return p2 + y / den
    return p1 + y / p0


cdef inline double _snap(double x, double tie) nogil:
    if 0.0 <= x <= 1.0:
        return x
    if -16.0 * tie <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + 16.0 * tie:
        return 1.0
    return x


cdef struct PairParams:
    int fam0, fam1
    double a0, b0, c0, s0
    double a1, b1, c1, s1
    double d


cdef inline PairParams _unpack(pv):
    cdef PairParams p
    p.fam0 = <int> (<double> pv[0])
    p.a0 = pv[1]; p.b0 = pv[2]; p.c0 = pv[3]; p.s0 = pv[4]
    p.fam1 = <int> (<double> pv[5])
    p.a1 = pv[6]; p.b1 = pv[7]; p.c1 = pv[8]; p.s1 = pv[9]
    p.d = pv[10]
    return p


def map_eval(int fam, double p0, double p1, double p2, double shift, double x):
    return _eval(fam, p0, p1, p2, shift, x)


def map_deriv(int fam, double p0, double p1, double p2, double x):
    return _deriv(fam, p0, p1, p2, x)


def map_inverse(int fam, double p0, double p1, double p2, double shift,
                double y):
    return _inverse(fam, p0, p1, p2, shift, y)


def map_log_deriv_slope(int fam, double p0, double p1, double p2, double x):
    if fam == _LOGISTIC:
        return -2.0 * p0 / (1.0 + p0 - 2.0 * p0 * x)
    if fam == _MOEBIUS:
        return -2.0 * p1 / (1.0 + p1 * (x - p2))
    return 0.0


def word_value(pv, const unsigned char[:] codes, double x, double tie):
    cdef PairParams p = _unpack(pv)
    cdef Py_ssize_t k, n = codes.shape[0]
    for k in range(n):
        if codes[k] == _ZERO:
            if x < -tie or x > 1.0 + tie:
                return x, k
            x = _eval(p.fam0, p.a0, p.b0, p.c0, p.s0, x)
        else:
            if x < p.d - tie or x > 1.0 + tie:
                return x, k
            x = _eval(p.fam1, p.a1, p.b1, p.c1, p.s1, x)
        x = _snap(x, tie)
    return x, -1


def word_value_deriv(pv, const unsigned char[:] codes, double x, double tie):
    cdef PairParams p = _unpack(pv)
    cdef double deriv = 1.0
    cdef Py_ssize_t k, n = codes.shape[0]
    for k in range(n):
        if codes[k] == _ZERO:
            if x < -tie or x > 1.0 + tie:
                return x, deriv, k
            deriv *= _deriv(p.fam0, p.a0, p.b0, p.c0, x)
            x = _eval(p.fam0, p.a0, p.b0, p.c0, p.s0, x)
        else:
            if x < p.d - tie or x > 1.0 + tie:
                return x, deriv, k
            deriv *= _deriv(p.fam1, p.a1, p.b1, p.c1, x)
            x = _eval(p.fam1, p.a1, p.b1, p.c1, p.s1, x)
        x = _snap(x, tie)
    return x, deriv, -1


def word_points(pv, const unsigned char[:] codes, double x, double tie):
    cdef PairParams p = _unpack(pv)
    cdef Py_ssize_t k, n = codes.shape[0]
    points = []
    for k in range(n):
        points.append(x)
        if codes[k] == _ZERO:
            if x < -tie or x > 1.0 + tie:
                return points, x, k
            x = _eval(p.fam0, p.a0, p.b0, p.c0, p.s0, x)
        else:
            if x < p.d - tie or x > 1.0 + tie:
                return points, x, k
            x = _eval(p.fam1, p.a1, p.b1, p.c1, p.s1, x)
        x = _snap(x, tie)
    return points, x, -1


def word_invert(pv, const unsigned char[:] codes, double y, double tie):
    cdef PairParams p = _unpack(pv)
    cdef Py_ssize_t k
    cdef double u, lo
    for k in range(codes.shape[0] - 1, -1, -1):
        if codes[k] == _ZERO:
            u = _inverse(p.fam0, p.a0, p.b0, p.c0, p.s0, y)
            lo = 0.0
        else:
            u = _inverse(p.fam1, p.a1, p.b1, p.c1, p.s1, y)
            lo = p.d
        if isnan(u) or u < lo - tie or u > 1.0 + tie:
            return u, k
        if u < lo:
            u = lo
        elif u > 1.0:
            u = 1.0
        y = u
    return y, -1


def count_profile(pv, int n, double tie, long long budget):
    cdef PairParams p = _unpack(pv)
    cdef long long nodes = 0
    cdef long long *counts = <long long *> malloc(n * sizeof(long long))
    cdef double *xs = <double *> malloc((2 * n + 4) * sizeof(double))
    cdef int *depths = <int *> malloc((2 * n + 4) * sizeof(int))
    if counts == NULL or xs == NULL or depths == NULL:
        free(counts); free(xs); free(depths)
        raise MemoryError()
    cdef Py_ssize_t top = 0
    cdef int i, depth, child
    cdef double x, y
    cdef bint exhausted = False
    for i in range(n):
        counts[i] = 0
    xs[0] = 1.0
    depths[0] = 0
    top = 1
    with nogil:
        while top > 0:
            top -= 1
            x = xs[top]
            depth = depths[top]
            nodes += 1
            if nodes > budget:
                exhausted = True
                break
            child = depth + 1
            y = _snap(_eval(p.fam0, p.a0, p.b0, p.c0, p.s0, x), tie)
            counts[child - 1] += 1
            if child < n:
                xs[top] = y
                depths[top] = child
                top += 1
            if x >= p.d - tie:
                y = _snap(_eval(p.fam1, p.a1, p.b1, p.c1, p.s1, x), tie)
                counts[child - 1] += 1
                if child < n:
                    xs[top] = y
                    depths[top] = child
                    top += 1
    try:
        if exhausted:
            return None, nodes
        return [counts[i] for i in range(n)], nodes
    finally:
        free(counts)
        free(xs)
        free(depths)


def count_admissible(pv, int n, double tie, long long budget):
    counts, nodes = count_profile(pv, n, tie, budget)
    if counts is None:
        return -1, nodes
    return counts[n - 1], nodes
