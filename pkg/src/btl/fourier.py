"""Exact Fourier analysis of +-1 valued functions.

Spectra are kept as integers scaled by 2^n, so ``coeffs[S] = sum_x f(x) chi_S(x)``
and every quantity derived from them is an exact dyadic rational.  Rationals
are returned as :class:`fractions.Fraction`; :func:`dyadic` splits one into a
``(numerator, log2_denominator)`` pair for export.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .core import PM_ONE, BFunc, _frozen


@dataclass(frozen=True, eq=False)
class Spectrum:
    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = _frozen(self.coeffs)
        if c.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} coefficients, got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    def coefficient(self, S: int) -> Fraction:
        """Unscaled coefficient f^(S)."""
        return Fraction(int(self.coeffs[S]), 1 << self.n)

    def set_sizes(self) -> np.ndarray:
        return np.bitwise_count(np.arange(1 << self.n, dtype=np.int64)).astype(np.int64)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)

    def square_sum(self) -> int:
        """Sum of squared scaled coefficients; 4^n for any +-1 function."""
        c = self.coeffs
        return int(np.dot(c, c))

    def to_csv(self, include_zeros: bool = False) -> str:
        out = io.StringIO()
        out.write("mask,setsize,coeff_numerator\n")
        sizes = self.set_sizes()
        idx = range(1 << self.n) if include_zeros else self.support()
        for s in idx:
            out.write(f"{int(s)},{int(sizes[s])},{int(self.coeffs[s])}\n")
        return out.getvalue()


def dyadic(q: Fraction) -> tuple[int, int]:
    """Split a dyadic rational into (numerator, log2 of denominator)."""
    den = q.denominator
    if den & (den - 1):
        raise ValueError(f"{q} is not dyadic")
    return q.numerator, den.bit_length() - 1


def _parity_signs(n: int) -> np.ndarray:
    # the butterfly computes sum_x f(x) (-1)^|S & x|; a set bit means +1 here,
    # so chi_S(x) = (-1)^|S & ~x| = (-1)^|S| (-1)^|S & x|
    return 1 - 2 * (np.bitwise_count(np.arange(1 << n, dtype=np.int64)) & 1).astype(np.int64)


def wht(f: BFunc) -> Spectrum:
    """Walsh-Hadamard transform with integer output scaled by 2^n."""
    if f.range_kind != PM_ONE:
        raise ValueError("wht expects a pm_one function")
    work = np.array(f.values, dtype=np.int64, copy=True)
    kernels.wht_inplace(work)
    work *= _parity_signs(f.n)
    return Spectrum(f.n, work)


def inverse_wht(s: Spectrum, range_kind: str = PM_ONE) -> BFunc:
    work = np.array(s.coeffs, dtype=np.int64, copy=True)
    work *= _parity_signs(s.n)
    kernels.wht_inplace(work)
    scale = 1 << s.n
    if np.any(work % scale):
        raise ValueError("spectrum does not invert to an integer function")
    return BFunc(s.n, range_kind, work // scale)


def fourier_degree(s: Spectrum) -> int:
    support = s.support()
    if support.size == 0:
        raise ValueError("all-zero spectrum has no degree")
    return int(np.bitwise_count(support).max())


def tail_mass(s: Spectrum, m: int) -> Fraction:
    """Sum of f^(S)^2 over |S| >= m."""
    if not 0 <= m <= s.n + 1:
        raise ValueError(f"level {m} outside [0, {s.n + 1}]")
    c = s.coeffs[s.set_sizes() >= m]
    total = int(np.dot(c, c))
    return Fraction(total, 1 << (2 * s.n))


def distance_lb_low_degree(s: Spectrum, m: int, normalization: str = "disagreement") -> Fraction:
    """Lower bound on the distance to every function of degree <= m - 1.

    ``"disagreement"`` bounds Pr[f != g] by tail/4.  ``"half_l2"`` returns
    tail/2, a lower bound on (1/2)||f - g||_2^2 (which is 2 Pr[f != g] for
    +-1 valued g).
    """
    tail = tail_mass(s, m)
    if normalization == "disagreement":
        return tail / 4
    if normalization == "half_l2":
        return tail / 2
    raise ValueError(f"unknown normalization {normalization!r}")


def dyadic_convolution(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a * b)[S] = sum_T a[T] b[S xor T], by direct summation."""
    size = a.shape[0]
    idx = np.arange(size)
    out = np.zeros(size, dtype=object)
    for t in range(size):
        if a[t]:
            out[idx ^ t] += int(a[t]) * b.astype(object)
    return out
