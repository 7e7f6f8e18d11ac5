"""Disjointness instances and the hard-instance generators built on them.

Block sets are bitmasks over the block width ``m`` (bit j is coordinate
j + 1 of the block).  When a block family is turned into a function on the
cube, the ``log2(ell)`` index bits come first and the block coordinates are
shifted up past them.

Two parameterisations coexist: the monotonicity gadgets take ``ell`` as the
number of blocks, while the Fourier constructions take ``ell_bits``, the
number of index coordinates (so there are ``2 ** ell_bits`` blocks).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Sequence

import numpy as np

from . import kernels
from .core import (
    EXTENDED_INT,
    HI_SENTINEL,
    LO_SENTINEL,
    PM_ONE,
    BFunc,
    build_generalized_character,
    popcount,
)

NO_PROMISE = "none"
SPARSE_K = "sparse_k"


def _is_power_of_two(v: int) -> bool:
    return v >= 1 and not v & (v - 1)


def _rng(seed):
    return np.random.default_rng(seed)


# ----------------------------------------------------------------- instances

@dataclass(frozen=True)
class DisjInstance:
    """ell block pairs (x_t, y_t) over [m], with an optional sparsity promise."""

    ell: int
    m: int
    x_blocks: tuple[int, ...]
    y_blocks: tuple[int, ...]
    promise: str = NO_PROMISE
    k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "x_blocks", tuple(int(b) for b in self.x_blocks))
        object.__setattr__(self, "y_blocks", tuple(int(b) for b in self.y_blocks))
        if not _is_power_of_two(self.ell):
            raise ValueError(f"block count {self.ell} is not a power of two")
        if self.m < 1:
            raise ValueError("block width must be positive")
        if len(self.x_blocks) != self.ell or len(self.y_blocks) != self.ell:
            raise ValueError("need exactly ell blocks per side")
        for b in self.x_blocks + self.y_blocks:
            if b < 0 or b >> self.m:
                raise ValueError(f"block mask {b:#x} exceeds m={self.m}")
        if self.promise == SPARSE_K:
            if self.k is None:
                raise ValueError("sparse_k promise needs k")
            for t, (x, y) in enumerate(zip(self.x_blocks, self.y_blocks)):
                if popcount(x) != self.k or popcount(y) != self.k:
                    raise ValueError(f"block {t} violates the weight-{self.k} promise")
                if popcount(x & y) > 1:
                    raise ValueError(f"block {t} intersects in more than one coordinate")
        elif self.promise != NO_PROMISE:
            raise ValueError(f"unknown promise {self.promise!r}")

    @property
    def ell_bits(self) -> int:
        return self.ell.bit_length() - 1

    @property
    def n(self) -> int:
        """Dimension of the cube the gadgets live on."""
        return self.ell_bits + self.m

    def intersecting_blocks(self) -> list[int]:
        return [t for t, (x, y) in enumerate(zip(self.x_blocks, self.y_blocks)) if x & y]

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "m": self.m,
            "k": self.k,
            "promise": self.promise,
            "x_blocks": list(self.x_blocks),
            "y_blocks": list(self.y_blocks),
        }

    @classmethod
    def from_json(cls, doc) -> "DisjInstance":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(
            ell=doc["ell"],
            m=doc["m"],
            x_blocks=doc["x_blocks"],
            y_blocks=doc["y_blocks"],
            promise=doc.get("promise", NO_PROMISE),
            k=doc.get("k"),
        )


def gen_sparse_block(m: int, k: int, intersect: bool, seed=None, min_weight: int = 2):
    """Random weight-k pair over [m], disjoint or meeting in one coordinate.

    A uniform permutation is cut into x = perm[:k] and y either perm[k:2k]
    or perm[k-1:2k-1]; by symmetry this is uniform over all valid pairs.
    """
    if k < min_weight:
        raise ValueError(f"k={k} below the minimum weight {min_weight}")
    need = 2 * k - 1 if intersect else 2 * k
    if need > m:
        raise ValueError(f"cannot fit two weight-{k} sets with that overlap into m={m}")
    perm = _rng(seed).permutation(m)
    x_idx = perm[:k]
    y_idx = perm[k - 1:2 * k - 1] if intersect else perm[k:2 * k]
    x = sum(1 << int(i) for i in x_idx)
    y = sum(1 << int(i) for i in y_idx)
    return x, y


def gen_sparse_instance(
    ell: int,
    m: int,
    k: int,
    intersecting: Collection[int] = (),
    seed=None,
    min_weight: int = 2,
) -> DisjInstance:
    """Sparse OR-DISJ instance; blocks listed in ``intersecting`` share one
    coordinate, all others are disjoint.  Each block draws from its own
    stream spawned from ``seed``."""
    if not _is_power_of_two(ell):
        raise ValueError(f"block count {ell} is not a power of two")
    hits = set(intersecting)
    if any(not 0 <= t < ell for t in hits):
        raise ValueError("intersecting block index out of range")
    streams = np.random.SeedSequence(seed).spawn(ell)
    xs, ys = [], []
    for t in range(ell):
        x, y = gen_sparse_block(m, k, t in hits, streams[t], min_weight=min_weight)
        xs.append(x)
        ys.append(y)
    return DisjInstance(ell, m, tuple(xs), tuple(ys), SPARSE_K, k)


def choose_blocks(ell: int, count: int, seed=None) -> list[int]:
    """``count`` distinct block indices, uniformly at random."""
    if not 0 <= count <= ell:
        raise ValueError(f"cannot choose {count} of {ell} blocks")
    # spawn key kept clear of the per-block streams of gen_sparse_instance
    rng = _rng(np.random.SeedSequence(seed, spawn_key=(1 << 20,)))
    return sorted(int(t) for t in rng.choice(ell, size=count, replace=False))


def eval_disj(inst: DisjInstance) -> int:
    """+1 iff some block pair intersects (the OR fires), else -1."""
    return 1 if any(x & y for x, y in zip(inst.x_blocks, inst.y_blocks)) else -1


def concatenate(inst: DisjInstance) -> DisjInstance:
    """Single block of width ell*m: block t occupies bits [t*m, (t+1)*m)."""
    x = sum(b << (t * inst.m) for t, b in enumerate(inst.x_blocks))
    y = sum(b << (t * inst.m) for t, b in enumerate(inst.y_blocks))
    if inst.promise == SPARSE_K and popcount(x & y) <= 1:
        return DisjInstance(1, inst.ell * inst.m, (x,), (y,), SPARSE_K, inst.ell * inst.k)
    return DisjInstance(1, inst.ell * inst.m, (x,), (y,))


# ------------------------------------------------------- monotonicity gadgets

def mono_epsilon(ell: int) -> Fraction:
    """Farness target 1/(8 ell) of the untruncated gadget."""
    return Fraction(1, 8 * ell)


def build_mono_gadget(inst: DisjInstance) -> BFunc:
    """h(t, z) = 4|t| + 2|z| + f_x(t, z) + g_y(t, z)."""
    xs = np.array(inst.x_blocks, dtype=np.int64)
    ys = np.array(inst.y_blocks, dtype=np.int64)
    return BFunc(inst.n, EXTENDED_INT, kernels.mono_gadget_values(xs, ys, inst.ell_bits, inst.m))


@dataclass(frozen=True)
class Truncation:
    m: int
    radius: Fraction           # c' * sqrt(m), a multiple of 1/2
    clamp_probability: Fraction

    @property
    def c_prime(self) -> float:
        return float(self.radius) / math.sqrt(self.m)

    def upper_cut(self) -> Fraction:
        return Fraction(self.m, 2) + self.radius

    def lower_cut(self) -> Fraction:
        return Fraction(self.m, 2) - self.radius


def truncation_radius(m: int, max_clamp: Fraction = Fraction(1, 16)) -> Truncation:
    """Smallest half-integer radius r whose clamp event
    | |z| - m/2 | >= r has binomial probability at most ``max_clamp``."""
    weights = [math.comb(m, w) for w in range(m + 1)]
    total = 1 << m
    r = Fraction(0)
    while True:
        clamped = sum(c for w, c in enumerate(weights) if abs(w - Fraction(m, 2)) >= r)
        p = Fraction(clamped, total)
        if p <= max_clamp:
            return Truncation(m, r, p)
        r += Fraction(1, 2)


def build_mono_gadget_truncated(inst: DisjInstance, trunc: Truncation | None = None) -> BFunc:
    """h with |z| far above m/2 sent to +inf and far below to -inf."""
    if inst.m < 4:
        raise ValueError("truncation needs m >= 4")
    trunc = trunc or truncation_radius(inst.m)
    h = build_mono_gadget(inst).values.copy()
    wz = np.bitwise_count(np.arange(1 << inst.n, dtype=np.int64) >> inst.ell_bits)
    dev2 = 2 * wz.astype(np.int64) - inst.m          # 2(|z| - m/2)
    r2 = int(2 * trunc.radius)
    h[dev2 >= r2] = HI_SENTINEL
    h[dev2 <= -r2] = LO_SENTINEL
    return BFunc(inst.n, EXTENDED_INT, h)


def finite_range(f: BFunc) -> np.ndarray:
    vals = f.distinct_values()
    return vals[(vals != HI_SENTINEL) & (vals != LO_SENTINEL)]


def clamped_fraction(f: BFunc) -> Fraction:
    clamped = np.count_nonzero((f.values == HI_SENTINEL) | (f.values == LO_SENTINEL))
    return Fraction(int(clamped), 1 << f.n)


# ------------------------------------------------------------ index selectors

@dataclass(frozen=True)
class IndexSelector:
    """Map from each ell_bits-bit prefix to a coordinate set over the suffix.

    ``sets[a]`` is a bitmask over all n coordinates and never touches the
    low ``ell_bits`` (prefix) bits.
    """

    ell_bits: int
    n: int
    sets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(int(s) for s in self.sets))
        if not 0 <= self.ell_bits <= self.n:
            raise ValueError("ell_bits outside [0, n]")
        if len(self.sets) != 1 << self.ell_bits:
            raise ValueError(f"need {1 << self.ell_bits} selected sets")
        prefix = (1 << self.ell_bits) - 1
        for a, s in enumerate(self.sets):
            if s < 0 or s >> self.n:
                raise ValueError(f"set for prefix {a} exceeds n={self.n}")
            if s & prefix:
                raise ValueError(f"set for prefix {a} touches the index coordinates")

    @property
    def m(self) -> int:
        return self.n - self.ell_bits

    def sizes(self) -> list[int]:
        return [popcount(s) for s in self.sets]

    def blocks(self) -> tuple[int, ...]:
        """Selected sets expressed over the suffix, [m]."""
        return tuple(s >> self.ell_bits for s in self.sets)

    def to_json(self) -> dict:
        return {"ell_bits": self.ell_bits, "n": self.n, "sets": list(self.sets)}


def selector_from_blocks(blocks: Sequence[int], m: int) -> IndexSelector:
    ell = len(blocks)
    if not _is_power_of_two(ell):
        raise ValueError(f"block count {ell} is not a power of two")
    ell_bits = ell.bit_length() - 1
    return IndexSelector(ell_bits, ell_bits + m, tuple(int(b) << ell_bits for b in blocks))


def build_selector_function(sel: IndexSelector) -> BFunc:
    """f(x) = chi_{C(prefix of x)}(x)."""
    sets = np.array(sel.sets, dtype=np.int64)
    return BFunc(sel.n, PM_ONE, kernels.selector_values(sets, sel.n, sel.ell_bits))


# ----------------------------------------------------------- Fourier gadget

def fourier_epsilon_ell(eps: Fraction) -> int:
    """Largest ell with eps < 2^(-2 ell - 1)."""
    eps = Fraction(eps)
    if eps >= Fraction(1, 2):
        raise ValueError("eps must be below 1/2")
    ell = 0
    while eps < Fraction(1, 2 ** (2 * (ell + 1) + 1)):
        ell += 1
    return ell


def approx_degree_epsilon_ell(eps: Fraction) -> int:
    """Largest ell with eps < 2^(-ell - 1)."""
    eps = Fraction(eps)
    if eps >= Fraction(1, 2):
        raise ValueError("eps must be below 1/2")
    ell = 0
    while eps < Fraction(1, 2 ** (ell + 2)):
        ell += 1
    return ell


def check_fourier_params(n: int, k: int, ell_bits: int) -> int:
    """Validate (n, k, ell_bits) for the Fourier gadget; return d = (n-k)/2."""
    if (n - k) % 2:
        raise ValueError(f"n - k = {n - k} must be even")
    d = (n - k) // 2
    if d < 1:
        raise ValueError("need k <= n - 2")
    if not 0 <= ell_bits or 2 * ell_bits > k:
        raise ValueError(f"need 0 <= ell_bits <= k/2, got ell_bits={ell_bits}, k={k}")
    return d


def gen_fourier_instance(
    n: int, k: int, ell_bits: int, intersecting: Collection[int] = (), seed=None
) -> DisjInstance:
    """OR-d-DISJ instance with 2^ell_bits blocks of width n - ell_bits."""
    d = check_fourier_params(n, k, ell_bits)
    return gen_sparse_instance(1 << ell_bits, n - ell_bits, d, intersecting, seed, min_weight=1)


def fourier_target_degree(inst: DisjInstance) -> int:
    """k = n - 2d for an instance built by :func:`gen_fourier_instance`."""
    return inst.n - 2 * inst.k


def fourier_gadget_selector(inst: DisjInstance) -> IndexSelector:
    """Index selector t -> [m] minus (x_t symmetric-difference y_t)."""
    full = (1 << inst.m) - 1
    blocks = [full & ~(x ^ y) for x, y in zip(inst.x_blocks, inst.y_blocks)]
    return selector_from_blocks(blocks, inst.m)


def build_fourier_gadget(inst: DisjInstance) -> BFunc:
    """h = f_x * g_y * chi_{suffix}, assembled pointwise from the two sides."""
    if inst.promise != SPARSE_K:
        raise ValueError("Fourier gadget needs a sparse_d instance")
    check_fourier_params(inst.n, fourier_target_degree(inst), inst.ell_bits)
    f = build_generalized_character(inst.x_blocks, inst.m)
    g = build_generalized_character(inst.y_blocks, inst.m)
    suffix = ((1 << inst.m) - 1) << inst.ell_bits
    chi = build_selector_function(IndexSelector(inst.ell_bits, inst.n, (suffix,) * inst.ell))
    return BFunc(inst.n, PM_ONE, f.values * g.values * chi.values)


# ---------------------------------------------------- D+ / D- distributions

def check_approx_params(n: int, k: int, ell_bits: int) -> None:
    if k % 2:
        raise ValueError("k must be even")
    if not 0 <= ell_bits <= k // 2 - 1:
        raise ValueError(f"need 0 <= ell_bits <= k/2 - 1, got {ell_bits}")
    if n - k + 1 > n - ell_bits:
        raise ValueError("big set does not fit in the suffix")
    if k // 2 >= n - k + 1:
        raise ValueError("need k/2 < n - k + 1 so the big set is the unique largest")


def default_big_set(n: int, k: int, ell_bits: int) -> int:
    """The first n - k + 1 suffix coordinates."""
    return ((1 << (n - k + 1)) - 1) << ell_bits


def _random_subset(rng, n: int, ell_bits: int, size: int) -> int:
    idx = rng.choice(n - ell_bits, size=size, replace=False)
    return sum(1 << (int(i) + ell_bits) for i in idx)


def dplus_selector(n: int, k: int, ell_bits: int, seed=None) -> IndexSelector:
    check_approx_params(n, k, ell_bits)
    rng = _rng(seed)
    sets = [_random_subset(rng, n, ell_bits, k // 2) for _ in range(1 << ell_bits)]
    return IndexSelector(ell_bits, n, tuple(sets))


def dminus_selector(n: int, k: int, ell_bits: int, big_set: int | None = None, seed=None):
    """Returns ``(selector, b)`` where prefix ``b`` carries the big set."""
    check_approx_params(n, k, ell_bits)
    if big_set is None:
        big_set = default_big_set(n, k, ell_bits)
    if popcount(big_set) != n - k + 1 or big_set >> n or big_set & ((1 << ell_bits) - 1):
        raise ValueError("big set must be n - k + 1 suffix coordinates")
    rng = _rng(seed)
    b = int(rng.integers(1 << ell_bits))
    sets = [_random_subset(rng, n, ell_bits, k // 2) for _ in range(1 << ell_bits)]
    sets[b] = big_set
    return IndexSelector(ell_bits, n, tuple(sets)), b


def sample_dplus(n: int, k: int, ell_bits: int, seed=None) -> BFunc:
    return build_selector_function(dplus_selector(n, k, ell_bits, seed))


def sample_dminus(n: int, k: int, ell_bits: int, big_set: int | None = None, seed=None) -> BFunc:
    sel, _ = dminus_selector(n, k, ell_bits, big_set, seed)
    return build_selector_function(sel)
