# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled blade product kernels for the float backend.

Same contract as fermialg._kernels_py: parallel (mask, value) arrays in,
nonzero product entries out. Products accumulate into a dense table of
size 2^dim (dim <= 2M stays small), with the merge sign computed by bit
twiddling per blade pair.
"""

import numpy as np


cdef inline int _popcount(unsigned long long x) nogil:
    cdef int count = 0
    while x:
        x &= x - 1
        count += 1
    return count


cdef inline int _mul_parity(unsigned long long s, unsigned long long t) nogil:
    # Parity of transpositions merging ascending monomials e_s and e_t:
    # for each generator in t, count the generators of s above it.
    cdef int parity = 0
    cdef unsigned long long low
    while t:
        low = t & (~t + 1)
        parity ^= _popcount(s & ~((low << 1) - 1)) & 1
        t ^= low
    return parity


def wedge_dense(long long[::1] masks_a, double complex[::1] vals_a,
                long long[::1] masks_b, double complex[::1] vals_b, int dim):
    cdef Py_ssize_t na = masks_a.shape[0]
    cdef Py_ssize_t nb = masks_b.shape[0]
    acc_arr = np.zeros(1 << dim, dtype=np.complex128)
    cdef double complex[::1] acc = acc_arr
    cdef Py_ssize_t i, j
    cdef unsigned long long ma, mb
    cdef double complex va, v
    with nogil:
        for i in range(na):
            ma = <unsigned long long> masks_a[i]
            va = vals_a[i]
            for j in range(nb):
                mb = <unsigned long long> masks_b[j]
                if ma & mb:
                    continue
                v = va * vals_b[j]
                if _mul_parity(ma, mb):
                    acc[ma | mb] -= v
                else:
                    acc[ma | mb] += v
    nz = np.flatnonzero(acc_arr)
    return nz.astype(np.int64), acc_arr[nz]


def clifford_dense(long long[::1] masks_a, double complex[::1] vals_a,
                   long long[::1] masks_b, double complex[::1] vals_b, int dim):
    # Generators square to +1: shared generators contract with no extra sign
    # beyond the merge transpositions, and the result blade is the XOR.
    cdef Py_ssize_t na = masks_a.shape[0]
    cdef Py_ssize_t nb = masks_b.shape[0]
    acc_arr = np.zeros(1 << dim, dtype=np.complex128)
    cdef double complex[::1] acc = acc_arr
    cdef Py_ssize_t i, j
    cdef unsigned long long ma, mb
    cdef double complex va, v
    with nogil:
        for i in range(na):
            ma = <unsigned long long> masks_a[i]
            va = vals_a[i]
            for j in range(nb):
                mb = <unsigned long long> masks_b[j]
                v = va * vals_b[j]
                if _mul_parity(ma, mb):
                    acc[ma ^ mb] -= v
                else:
                    acc[ma ^ mb] += v
    nz = np.flatnonzero(acc_arr)
    return nz.astype(np.int64), acc_arr[nz]
