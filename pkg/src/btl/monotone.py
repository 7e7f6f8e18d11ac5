"""Exact monotonicity analysis on the hypercube.

Edge scans and envelope sweeps run in the compiled kernels.  Distances are
fractions of the 2^n points; for two-valued ranges the exact distance comes
from a maximum matching in the violation graph (König: minimum vertex cover
equals maximum matching in a bipartite graph).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from . import kernels
from .core import BFunc

EXACT_MAX_N = 14


@dataclass(frozen=True)
class ViolationReport:
    n: int
    ell_bits: int
    total_edges: int
    violated_by_direction: np.ndarray = field(repr=False)
    violated_by_direction_and_index: np.ndarray = field(repr=False)
    violated_pair_count: int | None = None

    @property
    def total_violated(self) -> int:
        return int(self.violated_by_direction.sum())

    def is_clean(self) -> bool:
        return self.total_violated == 0

    def count_at(self, direction: int, t: int) -> int:
        """Violated edges along suffix coordinate ``direction`` (1-based, full
        numbering) whose index part equals ``t``."""
        if not self.ell_bits < direction <= self.n:
            raise ValueError(f"direction {direction} is not a suffix coordinate")
        return int(self.violated_by_direction_and_index[direction - 1 - self.ell_bits, t])

    def index_direction_counts(self) -> np.ndarray:
        return self.violated_by_direction[: self.ell_bits]

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "ell_bits": self.ell_bits,
            "total_edges": self.total_edges,
            "total_violated": self.total_violated,
            "violated_by_direction": self.violated_by_direction.tolist(),
            "violated_by_direction_and_index": self.violated_by_direction_and_index.tolist(),
        }
        if self.violated_pair_count is not None:
            out["violated_pair_count"] = self.violated_pair_count
        return out


@dataclass(frozen=True)
class DistanceBounds:
    lower: Fraction
    upper: Fraction
    lower_method: str
    upper_method: str

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper <= 1:
            raise ValueError(f"inconsistent bounds {self.lower} > {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        return {
            "lower": str(self.lower),
            "lower_float": float(self.lower),
            "lower_method": self.lower_method,
            "upper": str(self.upper),
            "upper_float": float(self.upper),
            "upper_method": self.upper_method,
        }


def is_monotone(f: BFunc) -> bool:
    x, _ = kernels.first_violation(f.values, f.n)
    return x < 0


def first_violated_edge(f: BFunc):
    """(lower endpoint, 1-based direction) of some violated edge, or None."""
    x, i = kernels.first_violation(f.values, f.n)
    return None if x < 0 else (int(x), int(i) + 1)


def violation_report(f: BFunc, ell_bits: int = 0, pairs: bool = False) -> ViolationReport:
    if not 0 <= ell_bits <= f.n:
        raise ValueError(f"ell_bits={ell_bits} outside [0, {f.n}]")
    by_dir, by_index = kernels.violation_counts(f.values, f.n, ell_bits)
    pair_count = None
    if pairs:
        if f.n > EXACT_MAX_N:
            raise ValueError(f"pair counting limited to n <= {EXACT_MAX_N}")
        pair_count = int(kernels.count_violated_pairs(f.values, f.n))
    total = f.n * (1 << (f.n - 1)) if f.n else 0
    return ViolationReport(f.n, ell_bits, total, by_dir, by_index, pair_count)


def violated_edges(f: BFunc, direction: int) -> np.ndarray:
    """Lower endpoints of the violated edges along ``direction`` (1-based)."""
    if not 1 <= direction <= f.n:
        raise ValueError(f"direction {direction} outside [1, {f.n}]")
    bit = 1 << (direction - 1)
    lo = np.flatnonzero((np.arange(1 << f.n) & bit) == 0)
    return lo[f.values[lo] > f.values[lo | bit]]


def sweep_repair(f: BFunc) -> BFunc:
    """Monotone g(x) = max over y <= x of f(y)."""
    return BFunc(f.n, f.range_kind, kernels.upper_envelope(f.values, f.n))


def _two_values(f: BFunc):
    vals = f.distinct_values()
    if vals.size > 2:
        raise ValueError(f"expected at most two distinct values, found {vals.size}")
    return vals


def distance_to_monotone_exact_boolean(f: BFunc) -> Fraction:
    """Exact distance to monotonicity of a function with at most two values."""
    vals = _two_values(f)
    if f.n > EXACT_MAX_N:
        raise ValueError(f"exact distance limited to n <= {EXACT_MAX_N}")
    if vals.size < 2:
        return Fraction(0)
    lo, hi = int(vals[0]), int(vals[1])
    size = 1 << f.n
    indptr, indices = kernels.violated_pairs(f.values, f.n, hi, lo)
    if indices.size == 0:
        return Fraction(0)
    graph = csr_matrix(
        (np.ones(indices.size, dtype=np.int8), indices, indptr), shape=(size, size)
    )
    match = maximum_bipartite_matching(graph, perm_type="column")
    return Fraction(int(np.count_nonzero(match >= 0)), size)


def distance_bounds_general(f: BFunc, ell_bits: int = 0, exact_boolean: bool = True) -> DistanceBounds:
    """Certified bounds on the distance to monotonicity.

    The lower bound uses the violated edges of the worst single direction;
    edges of one direction share no endpoints, so each needs its own change.
    The upper bound counts the points moved by the better of the two envelope
    repairs (max over the down-set, min over the up-set).  Two-valued inputs
    with n <= 14 get the exact matching value for both ends when
    ``exact_boolean`` is set.
    """
    size = 1 << f.n
    if exact_boolean and f.n <= EXACT_MAX_N and f.distinct_values().size <= 2:
        d = distance_to_monotone_exact_boolean(f)
        return DistanceBounds(d, d, "exact-matching", "exact-matching")
    by_dir, _ = kernels.violation_counts(f.values, f.n, ell_bits)
    lower = Fraction(int(by_dir.max()) if by_dir.size else 0, size)
    up = kernels.upper_envelope(f.values, f.n)
    down = kernels.lower_envelope(f.values, f.n)
    changed = min(int(np.count_nonzero(up != f.values)), int(np.count_nonzero(down != f.values)))
    return DistanceBounds(lower, Fraction(changed, size), "direction-matching", "sweep-repair")
