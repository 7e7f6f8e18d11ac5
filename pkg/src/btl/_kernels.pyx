# cython: language_level=3
"""Compiled hypercube kernels.

Mirror of ``_pykernels``; see that module for the shared contract.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint64_t

cnp.import_array()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int64_t _parity_sign(uint64_t w) noexcept nogil:
    return 1 - 2 * (__builtin_popcountll(w) & 1)


def wht_inplace(int64_t[::1] a):
    cdef Py_ssize_t size = a.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef int64_t u, w
    with nogil:
        while h < size:
            i = 0
            while i < size:
                for j in range(i, i + h):
                    u = a[j]
                    w = a[j + h]
                    a[j] = u + w
                    a[j + h] = u - w
                i += 2 * h
            h *= 2


def first_violation(const int64_t[::1] v, int n):
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t base, j, bit
    cdef int i
    for i in range(n):
        bit = 1 << i
        base = 0
        while base < size:
            for j in range(base, base + bit):
                if v[j] > v[j + bit]:
                    return j, i
            base += 2 * bit
    return -1, -1


def violation_counts(const int64_t[::1] v, int n, int ell_bits):
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t tmask = (1 << ell_bits) - 1
    by_dir_arr = np.zeros(n, dtype=np.int64)
    by_index_arr = np.zeros((n - ell_bits, 1 << ell_bits), dtype=np.int64)
    cdef int64_t[::1] by_dir = by_dir_arr
    cdef int64_t[:, ::1] by_index = by_index_arr
    cdef Py_ssize_t base, j, bit
    cdef int64_t count, bad
    cdef int i
    with nogil:
        for i in range(n):
            bit = 1 << i
            count = 0
            if i < ell_bits:
                base = 0
                while base < size:
                    for j in range(base, base + bit):
                        count += v[j] > v[j + bit]
                    base += 2 * bit
            else:
                base = 0
                while base < size:
                    for j in range(base, base + bit):
                        bad = v[j] > v[j + bit]
                        count += bad
                        by_index[i - ell_bits, j & tmask] += bad
                    base += 2 * bit
            by_dir[i] = count
    return by_dir_arr, by_index_arr


def upper_envelope(const int64_t[::1] v, int n):
    out = np.array(v, dtype=np.int64, copy=True)
    cdef int64_t[::1] g = out
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t base, j, bit
    cdef int64_t a, b
    cdef int i
    with nogil:
        for i in range(n):
            bit = 1 << i
            base = 0
            while base < size:
                for j in range(base, base + bit):
                    a = g[j]
                    b = g[j + bit]
                    g[j + bit] = a if a > b else b
                base += 2 * bit
    return out


def lower_envelope(const int64_t[::1] v, int n):
    out = np.array(v, dtype=np.int64, copy=True)
    cdef int64_t[::1] g = out
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t base, j, bit
    cdef int64_t a, b
    cdef int i
    with nogil:
        for i in range(n):
            bit = 1 << i
            base = 0
            while base < size:
                for j in range(base, base + bit):
                    a = g[j]
                    b = g[j + bit]
                    g[j] = b if b < a else a
                base += 2 * bit
    return out


def violated_pairs(const int64_t[::1] v, int n, int64_t hi, int64_t lo):
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t full = size - 1
    cdef Py_ssize_t x, comp, s, total = 0
    indptr_arr = np.zeros(size + 1, dtype=np.int32)
    cdef int32_t[::1] indptr = indptr_arr
    with nogil:
        for x in range(size):
            if v[x] == hi:
                comp = full & ~x
                s = comp
                while s:
                    if v[x | s] == lo:
                        total += 1
                    s = (s - 1) & comp
            indptr[x + 1] = <int32_t>total
    indices_arr = np.empty(total, dtype=np.int32)
    cdef int32_t[::1] indices = indices_arr
    cdef Py_ssize_t pos
    with nogil:
        for x in range(size):
            if v[x] == hi:
                comp = full & ~x
                pos = indptr[x + 1]
                # descending submask walk, filled from the row's end so the
                # row comes out in ascending order
                s = comp
                while s:
                    if v[x | s] == lo:
                        pos -= 1
                        indices[pos] = <int32_t>(x | s)
                    s = (s - 1) & comp
    return indptr_arr, indices_arr


def count_violated_pairs(const int64_t[::1] v, int n):
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t full = size - 1
    cdef Py_ssize_t x, comp, s
    cdef long long total = 0
    with nogil:
        for x in range(size):
            comp = full & ~x
            s = comp
            while s:
                if v[x | s] < v[x]:
                    total += 1
                s = (s - 1) & comp
    return total


def selector_values(const int64_t[::1] sets, int n, int ell_bits):
    cdef Py_ssize_t size = 1 << n
    cdef uint64_t tmask = (1 << ell_bits) - 1
    out = np.empty(size, dtype=np.int64)
    cdef int64_t[::1] f = out
    cdef uint64_t x
    with nogil:
        for x in range(<uint64_t>size):
            f[x] = _parity_sign(<uint64_t>sets[x & tmask] & ~x)
    return out


def mono_gadget_values(const int64_t[::1] xs, const int64_t[::1] ys, int ell_bits, int m):
    cdef int n = ell_bits + m
    cdef Py_ssize_t size = 1 << n
    cdef uint64_t tmask = (1 << ell_bits) - 1
    out = np.empty(size, dtype=np.int64)
    cdef int64_t[::1] h = out
    cdef uint64_t p, t, z
    with nogil:
        for p in range(<uint64_t>size):
            t = p & tmask
            z = p >> ell_bits
            h[p] = (4 * __builtin_popcountll(t) + 2 * __builtin_popcountll(z)
                    + _parity_sign(<uint64_t>xs[t] & ~z)
                    + _parity_sign(<uint64_t>ys[t] & ~z))
    return out
