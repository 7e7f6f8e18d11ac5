"""Numpy fallback for the hypercube kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature
and the same results; ``btl.kernels`` picks one at import time.  Arrays are
``int64`` truth tables indexed by point bitmask (bit ``i`` set means
coordinate ``i + 1`` is +1).
"""
import numpy as np


def _halves(a, i):
    # view with axis 1 selecting bit i clear (0) / set (1)
    return a.reshape(-1, 2, 1 << i)


def wht_inplace(a):
    n = a.shape[0].bit_length() - 1
    for i in range(n):
        r = _halves(a, i)
        lo = r[:, 0, :].copy()
        hi = r[:, 1, :]
        r[:, 0, :] += hi
        np.subtract(lo, hi, out=r[:, 1, :])


def first_violation(v, n):
    for i in range(n):
        r = _halves(v, i)
        bad = np.flatnonzero(r[:, 0, :] > r[:, 1, :])
        if bad.size:
            j = int(bad[0])
            block, low = divmod(j, 1 << i)
            return (block << (i + 1)) | low, i
    return -1, -1


def violation_counts(v, n, ell_bits):
    by_dir = np.zeros(n, dtype=np.int64)
    by_index = np.zeros((n - ell_bits, 1 << ell_bits), dtype=np.int64)
    points = np.arange(1 << n, dtype=np.int64)
    tmask = (1 << ell_bits) - 1
    for i in range(n):
        r = _halves(v, i)
        bad = r[:, 0, :] > r[:, 1, :]
        by_dir[i] = np.count_nonzero(bad)
        if i >= ell_bits and by_dir[i]:
            t = _halves(points, i)[:, 0, :][bad] & tmask
            by_index[i - ell_bits] = np.bincount(t, minlength=1 << ell_bits)
    return by_dir, by_index


def upper_envelope(v, n):
    g = np.array(v, dtype=np.int64, copy=True)
    for i in range(n):
        r = _halves(g, i)
        np.maximum(r[:, 1, :], r[:, 0, :], out=r[:, 1, :])
    return g


def lower_envelope(v, n):
    g = np.array(v, dtype=np.int64, copy=True)
    for i in range(n):
        r = _halves(g, i)
        np.minimum(r[:, 0, :], r[:, 1, :], out=r[:, 0, :])
    return g


def _supersets(x, n):
    free = [b for b in range(n) if not (x >> b) & 1]
    subs = np.zeros(1 << len(free), dtype=np.int64)
    for j, b in enumerate(free):
        half = 1 << j
        subs[half:2 * half] = subs[:half] | (1 << b)
    return x | subs[1:]


def violated_pairs(v, n, hi, lo):
    size = 1 << n
    counts = np.zeros(size + 1, dtype=np.int32)
    chunks = []
    for x in np.flatnonzero(v == hi):
        ys = _supersets(int(x), n)
        ys = ys[v[ys] == lo]
        counts[x + 1] = ys.size
        chunks.append(ys.astype(np.int32))
    indptr = np.cumsum(counts, dtype=np.int64).astype(np.int32)
    indices = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int32)
    return indptr, indices


def count_violated_pairs(v, n):
    total = 0
    for x in range(1 << n):
        ys = _supersets(x, n)
        total += int(np.count_nonzero(v[ys] < v[x]))
    return total


def selector_values(sets, n, ell_bits):
    x = np.arange(1 << n, dtype=np.int64)
    chosen = sets[x & ((1 << ell_bits) - 1)]
    odd = (np.bitwise_count(chosen & ~x) & 1).astype(np.int64)   # bitwise_count yields uint8
    return 1 - 2 * odd


def mono_gadget_values(xs, ys, ell_bits, m):
    n = ell_bits + m
    p = np.arange(1 << n, dtype=np.int64)
    t = p & ((1 << ell_bits) - 1)
    notz = ~(p >> ell_bits)
    fx = 1 - 2 * (np.bitwise_count(xs[t] & notz) & 1).astype(np.int64)
    gy = 1 - 2 * (np.bitwise_count(ys[t] & notz) & 1).astype(np.int64)
    wt = np.bitwise_count(t).astype(np.int64)
    wz = np.bitwise_count(p >> ell_bits).astype(np.int64)
    return 4 * wt + 2 * wz + fx + gy
