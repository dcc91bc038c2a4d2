# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration and local-search kernels.

Same contracts and tie-breaking as ``_pykernels``; each Gray-code step
updates the objective incrementally in O(n).
"""

import numpy as np

cdef extern from *:
    int __builtin_ctzll(unsigned long long)


def maxcut_enumerate(const double[:, ::1] w):
    cdef Py_ssize_t n = w.shape[0]
    if n <= 1:
        return 0.0, 0
    cdef double[::1] h = np.asarray(w).sum(axis=1)
    cdef double[::1] x = np.ones(n)
    cdef unsigned long long i, total = 1ULL << (n - 1)
    cdef unsigned long long g = 0, best_mask = 0
    cdef Py_ssize_t v, j
    cdef double cut = 0.0, best = 0.0, xv
    for i in range(1, total):
        v = __builtin_ctzll(i) + 1
        xv = x[v]
        cut += xv * h[v]
        for j in range(n):
            h[j] -= 2.0 * xv * w[j, v]
        x[v] = -xv
        g ^= 1ULL << v
        if cut > best:
            best = cut
            best_mask = g
    return best, best_mask


def qubo_enumerate(const double[:, ::1] q):
    cdef Py_ssize_t n = q.shape[0]
    cdef double[::1] field = np.zeros(n)
    cdef signed char[::1] x = np.zeros(n, dtype=np.int8)
    cdef unsigned long long i, total = 1ULL << n
    cdef unsigned long long g = 0, best_mask = 0
    cdef Py_ssize_t v, j
    cdef double val = 0.0, best = 0.0, sign
    for i in range(1, total):
        v = __builtin_ctzll(i)
        sign = 1.0 if x[v] == 0 else -1.0
        val += sign * (q[v, v] + 2.0 * field[v])
        for j in range(n):
            if j != v:
                field[j] += sign * q[j, v]
        x[v] = 1 - x[v]
        g ^= 1ULL << v
        if val < best:
            best = val
            best_mask = g
    return best, best_mask


def partition_enumerate(const long long[::1] w):
    cdef Py_ssize_t n = w.shape[0]
    cdef long long s = 0, d, best
    cdef Py_ssize_t v
    for v in range(n):
        s += w[v]
    cdef long long floor = s & 1
    best = s if s >= 0 else -s
    cdef unsigned long long best_mask = 0, g = 0, i, total
    if n <= 1 or best == floor:
        return best, best_mask
    cdef signed char[::1] x = np.ones(n, dtype=np.int8)
    total = 1ULL << (n - 1)
    for i in range(1, total):
        v = __builtin_ctzll(i) + 1
        s -= 2 * x[v] * w[v]
        x[v] = -x[v]
        g ^= 1ULL << v
        d = s if s >= 0 else -s
        if d < best:
            best = d
            best_mask = g
            if best == floor:
                break
    return best, best_mask


def local_search_maxcut(const double[:, ::1] w, x0):
    cdef Py_ssize_t n = w.shape[0]
    cdef double[::1] x = np.array(x0, dtype=np.float64)
    cdef double[::1] h = np.asarray(w) @ np.asarray(x)
    cdef double eps = 1e-9 * (1.0 + (float(np.abs(np.asarray(w)).max()) if n else 0.0))
    cdef double gain, best_gain, xv
    cdef Py_ssize_t v, j, best_v
    while n:
        best_gain = x[0] * h[0]
        best_v = 0
        for v in range(1, n):
            gain = x[v] * h[v]
            if gain > best_gain:
                best_gain = gain
                best_v = v
        if best_gain <= eps:
            break
        xv = x[best_v]
        for j in range(n):
            h[j] -= 2.0 * xv * w[j, best_v]
        x[best_v] = -xv
    return np.asarray(x).astype(np.int64)
