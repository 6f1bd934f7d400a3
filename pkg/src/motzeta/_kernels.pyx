# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled point-counting kernel; same contract as ``_kernels_py.count_points``."""

cimport cython
from libc.stdlib cimport malloc, free


cdef inline long long _mod(long long a, long long n) nogil:
    cdef long long r = a % n
    return r + n if r < 0 else r


def count_points(long long q, int m, const long long[:] zech, const long long[:] coef_log,
                 const long long[:] exps, const long long[:] eq_start,
                 long long start, long long stop):
    cdef int width = m + 1
    cdef long long qm1 = q - 1
    cdef int n_eq = eq_start.shape[0] - 1
    cdef long long count = 0
    cdef long long offset = 0, size, lo, hi, local, it, lg, acc, z, xi
    cdef int j, pos, k, t, i, nfree
    cdef bint ok
    cdef long long *x = <long long *> malloc(width * sizeof(long long))
    if x == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(m + 1):
                size = 1
                for i in range(m - j):
                    size *= q
                lo = start if start > offset else offset
                hi = stop if stop < offset + size else offset + size
                if lo < hi:
                    nfree = m - j
                    local = lo - offset
                    for i in range(j):
                        x[i] = -1
                    x[j] = 0
                    for pos in range(m, j, -1):
                        x[pos] = (local % q) - 1
                        local = local // q
                    for it in range(hi - lo):
                        ok = True
                        for k in range(n_eq):
                            acc = -1
                            for t in range(eq_start[k], eq_start[k + 1]):
                                lg = coef_log[t]
                                for i in range(width):
                                    if exps[t * width + i]:
                                        xi = x[i]
                                        if xi < 0:
                                            lg = -1
                                            break
                                        lg += exps[t * width + i] * xi
                                if lg < 0:
                                    continue
                                lg = lg % qm1
                                if acc < 0:
                                    acc = lg
                                else:
                                    z = zech[_mod(lg - acc, qm1)]
                                    acc = -1 if z < 0 else (acc + z) % qm1
                            if acc >= 0:
                                ok = False
                                break
                        if ok:
                            count += 1
                        pos = m
                        while pos > j:
                            x[pos] += 1
                            if x[pos] < qm1:
                                break
                            x[pos] = -1
                            pos -= 1
                offset += size
    finally:
        free(x)
    return count
