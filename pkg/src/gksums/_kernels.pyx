# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled summation kernels.

Each output cell is an independent compensated (Neumaier) sum over the
subgroup elements in generator-power order.  The operation sequence matches
``_fallback`` exactly so both backends give bitwise-identical results.
"""

from libc.math cimport fabs
from libc.stdlib cimport malloc, free


cdef inline void _acc(double x, double* s, double* c) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def grid_block(const double[::1] tre, const double[::1] tim,
               const long long[::1] elems, const long long[::1] invs,
               long long m, long long a_start, long long b_start,
               double[:, ::1] out_re, double[:, ::1] out_im):
    """out[i, j] = K(a_start + i, b_start + j) for the block shape of ``out_re``."""
    cdef Py_ssize_t na = out_re.shape[0], nb = out_re.shape[1]
    cdef Py_ssize_t d = elems.shape[0]
    cdef Py_ssize_t i, j, k
    cdef long long a, b0, idx
    cdef double sr, cr, si, ci
    cdef long long* A
    cdef long long* B
    if d == 0 or na == 0 or nb == 0:
        return
    A = <long long*> malloc(d * sizeof(long long))
    B = <long long*> malloc(d * sizeof(long long))
    if A == NULL or B == NULL:
        free(A)
        free(B)
        raise MemoryError()
    b0 = b_start % m
    try:
        with nogil:
            for i in range(na):
                a = (a_start + i) % m
                for k in range(d):
                    A[k] = a * elems[k] % m
                    B[k] = b0 * invs[k] % m
                for j in range(nb):
                    sr = 0.0
                    cr = 0.0
                    si = 0.0
                    ci = 0.0
                    for k in range(d):
                        idx = A[k] + B[k]
                        if idx >= m:
                            idx -= m
                        _acc(tre[idx], &sr, &cr)
                        _acc(tim[idx], &si, &ci)
                        B[k] += invs[k]
                        if B[k] >= m:
                            B[k] -= m
                    out_re[i, j] = sr + cr
                    out_im[i, j] = si + ci
    finally:
        free(A)
        free(B)


def pair_sums(const double[::1] tre, const double[::1] tim,
              const long long[::1] elems, const long long[::1] invs,
              long long m, const long long[::1] a, const long long[::1] b,
              double[::1] out_re, double[::1] out_im):
    """out[n] = K(a[n], b[n]); a and b must already be reduced into [0, m)."""
    cdef Py_ssize_t n = a.shape[0], d = elems.shape[0]
    cdef Py_ssize_t i, k
    cdef long long idx
    cdef double sr, cr, si, ci
    with nogil:
        for i in range(n):
            sr = 0.0
            cr = 0.0
            si = 0.0
            ci = 0.0
            for k in range(d):
                idx = (a[i] * elems[k] % m + b[i] * invs[k] % m)
                if idx >= m:
                    idx -= m
                _acc(tre[idx], &sr, &cr)
                _acc(tim[idx], &si, &ci)
            out_re[i] = sr + cr
            out_im[i] = si + ci
