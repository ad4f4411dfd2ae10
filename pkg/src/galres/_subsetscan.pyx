# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled subset trace filter.

Hot loop of the factor search: enumerate all index subsets of a given size
containing a fixed index (lexicographic order) and keep those whose complex
value sum lies within tol of a real integer.  Mirrors _kernels_py exactly.
"""

from libc.stdlib cimport free, malloc
from libc.math cimport fabs, nearbyint


def filter_integer_trace(re, im, int fixed, int size, double tol):
    cdef int n = len(re)
    out = []
    if size < 1 or size > n:
        return out
    cdef double fr = re[fixed]
    cdef double fi = im[fixed]
    if size == 1:
        if fabs(fi) <= tol and fabs(fr - nearbyint(fr)) <= tol:
            out.append((fixed,))
        return out

    cdef int d = size - 1
    cdef int m = n - 1
    cdef double *vre = <double *> malloc(m * sizeof(double))
    cdef double *vim = <double *> malloc(m * sizeof(double))
    cdef int *others = <int *> malloc(m * sizeof(int))
    cdef int *idx = <int *> malloc(d * sizeof(int))
    cdef double *psr = <double *> malloc(d * sizeof(double))
    cdef double *psi = <double *> malloc(d * sizeof(double))
    if not (vre and vim and others and idx and psr and psi):
        for p in (vre, vim, others, idx, psr, psi):
            if p != NULL:
                free(p)
        raise MemoryError()

    cdef int i, j, k, pos
    cdef double sr, si, pr, pi
    try:
        k = 0
        for i in range(n):
            if i != fixed:
                others[k] = i
                vre[k] = re[i]
                vim[k] = im[i]
                k += 1
        for j in range(d):
            idx[j] = j
        pos = 0
        while True:
            for j in range(pos, d):
                if j == 0:
                    pr = fr
                    pi = fi
                else:
                    pr = psr[j - 1]
                    pi = psi[j - 1]
                psr[j] = pr + vre[idx[j]]
                psi[j] = pi + vim[idx[j]]
            si = psi[d - 1]
            if -tol <= si <= tol:
                sr = psr[d - 1]
                if fabs(sr - nearbyint(sr)) <= tol:
                    combo = [others[idx[j]] for j in range(d)]
                    combo.append(fixed)
                    combo.sort()
                    out.append(tuple(combo))
            j = d - 1
            while j >= 0 and idx[j] == m - d + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for k in range(j + 1, d):
                idx[k] = idx[k - 1] + 1
            pos = j
    finally:
        free(vre)
        free(vim)
        free(others)
        free(idx)
        free(psr)
        free(psi)
    return out
