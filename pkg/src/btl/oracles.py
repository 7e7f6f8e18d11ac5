"""Brute-force reference computations.

These deliberately avoid the kernels and the butterfly: they enumerate
points, pairs and candidate functions directly, so they can be used to check
the fast paths.  Only usable at small n.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import BFunc, PointIndex, character, flip


def character_matrix(n: int) -> np.ndarray:
    """H[S, x] = chi_S(x), built entry by entry."""
    size = 1 << n
    H = np.empty((size, size), dtype=np.int64)
    for S in range(size):
        for x in range(size):
            H[S, x] = character(S, PointIndex(x, n))
    return H


@lru_cache(maxsize=None)
def _cached_characters(n: int) -> np.ndarray:
    H = character_matrix(n)
    H.flags.writeable = False
    return H


def brute_spectrum(f: BFunc) -> np.ndarray:
    """Scaled coefficients sum_x f(x) chi_S(x) by direct inner products."""
    return _cached_characters(f.n) @ f.values


def brute_violation_counts(f: BFunc, ell_bits: int = 0):
    n = f.n
    by_dir = [0] * n
    by_index = [[0] * (1 << ell_bits) for _ in range(n - ell_bits)]
    for xb in range(1 << n):
        x = PointIndex(xb, n)
        for i in range(1, n + 1):
            if x.coordinate(i) == 1:
                continue
            if f(flip(x, i, "-")) > f(flip(x, i, "+")):
                by_dir[i - 1] += 1
                if i > ell_bits:
                    by_index[i - 1 - ell_bits][xb & ((1 << ell_bits) - 1)] += 1
    return by_dir, by_index


def brute_is_monotone(f: BFunc) -> bool:
    """Checks every comparable pair, not just edges."""
    size = 1 << f.n
    for x in range(size):
        for y in range(size):
            if x & y == x and f.values[x] > f.values[y]:
                return False
    return True


@lru_cache(maxsize=None)
def monotone_tables(n: int) -> tuple[int, ...]:
    """All monotone Boolean functions on n bits as 2^n-bit integers
    (bit x set means the upper value at point x).

    Built by splitting on the top coordinate: f is monotone iff both halves
    are and the lower half is pointwise below the upper half.
    """
    if n == 0:
        return (0, 1)
    half = 1 << (n - 1)
    prev = monotone_tables(n - 1)
    return tuple(lo | (hi << half) for lo in prev for hi in prev if lo & ~hi == 0)


def brute_distance_to_monotone(f: BFunc) -> Fraction:
    """Minimum Hamming distance to a monotone function with the same two values."""
    vals = np.unique(f.values)
    if vals.size > 2:
        raise ValueError("brute force only handles two-valued functions")
    if vals.size < 2:
        return Fraction(0)
    table = sum(1 << x for x in np.flatnonzero(f.values == vals[1]).tolist())
    best = min(bin(table ^ m).count("1") for m in monotone_tables(f.n))
    return Fraction(best, 1 << f.n)


def brute_distance_table(n: int, tables: np.ndarray) -> np.ndarray:
    """Vectorised brute force for many functions at once (n <= 5).

    ``tables`` holds 2^n-bit truth tables; returns the minimum Hamming
    distance of each to the monotone tables.
    """
    mono = np.array(monotone_tables(n), dtype=np.uint64)
    tabs = np.asarray(tables, dtype=np.uint64)
    best = np.full(tabs.shape, 1 << n, dtype=np.int64)
    for chunk in np.array_split(mono, max(1, mono.size // 512)):
        d = np.bitwise_count(tabs[:, None] ^ chunk[None, :]).min(axis=1)
        np.minimum(best, d, out=best)
    return best
