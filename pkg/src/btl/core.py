"""Points, coordinate sets, characters and truth tables on the n-cube.

Encoding used throughout the package: a point is an integer whose bit ``i``
is set exactly when coordinate ``i + 1`` equals +1.  Coordinate sets are
bitmasks in the same layout, so the character of ``S`` at ``x`` is
``(-1) ** popcount(S & ~x)``.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels

MAX_N = 24
HI_SENTINEL = 1 << 30
LO_SENTINEL = -(1 << 30)

PM_ONE = "pm_one"
EXTENDED_INT = "extended_int"
RANGE_KINDS = (PM_ONE, EXTENDED_INT)


def popcount(w: int) -> int:
    return bin(w).count("1")


def coords_to_mask(coords: Iterable[int], n: int | None = None) -> int:
    """Bitmask of a set of 1-based coordinates."""
    mask = 0
    for c in coords:
        if c < 1 or (n is not None and c > n):
            raise ValueError(f"coordinate {c} outside [1, {n}]")
        mask |= 1 << (c - 1)
    return mask


def mask_to_coords(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1]


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise ValueError(f"dimension n={n} outside [0, {MAX_N}]")


@dataclass(frozen=True)
class PointIndex:
    """A point of {-1,+1}^n stored as a bitmask."""

    bits: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits={self.bits} does not fit in n={self.n}")

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "PointIndex":
        bits = 0
        for i, s in enumerate(signs):
            if s not in (-1, 1):
                raise ValueError(f"coordinate {i + 1} is {s}, expected +-1")
            if s == 1:
                bits |= 1 << i
        return cls(bits, len(signs))

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if (self.bits >> i) & 1 else -1 for i in range(self.n))

    def coordinate(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"coordinate {i} outside [1, {self.n}]")
        return 1 if (self.bits >> (i - 1)) & 1 else -1


@dataclass(frozen=True)
class IndexSplit:
    """A point viewed as (index part t, suffix part z)."""

    ell_bits: int
    t: int
    z: int
    n: int

    def __post_init__(self):
        if not 0 <= self.ell_bits <= self.n:
            raise ValueError(f"ell_bits={self.ell_bits} outside [0, {self.n}]")
        if not 0 <= self.t < (1 << self.ell_bits):
            raise ValueError("index part out of range")
        if not 0 <= self.z < (1 << (self.n - self.ell_bits)):
            raise ValueError("suffix part out of range")


def hamming_weight(x: PointIndex) -> int:
    """Number of coordinates equal to +1."""
    return popcount(x.bits)


def flip(x: PointIndex, i: int, sign) -> PointIndex:
    """Force coordinate ``i`` (1-based) to +1 or -1.

    ``sign`` may be ``'+'``/``'-'`` or ``+1``/``-1``.
    """
    if not 1 <= i <= x.n:
        raise ValueError(f"coordinate {i} outside [1, {x.n}]")
    bit = 1 << (i - 1)
    if sign in ("+", 1):
        return PointIndex(x.bits | bit, x.n)
    if sign in ("-", -1):
        return PointIndex(x.bits & ~bit, x.n)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def character(S: int, x: PointIndex) -> int:
    """Parity character: product of the coordinates of ``x`` selected by mask ``S``."""
    if S < 0 or S >> x.n:
        raise ValueError(f"set mask {S:#x} has coordinates beyond n={x.n}")
    return -1 if popcount(S & ~x.bits) & 1 else 1


def split_point(x: PointIndex, ell_bits: int) -> IndexSplit:
    if not 0 <= ell_bits <= x.n:
        raise ValueError(f"ell_bits={ell_bits} outside [0, {x.n}]")
    return IndexSplit(ell_bits, x.bits & ((1 << ell_bits) - 1), x.bits >> ell_bits, x.n)


def join_point(s: IndexSplit) -> PointIndex:
    return PointIndex(s.t | (s.z << s.ell_bits), s.n)


def _frozen(values) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.int64)
    if arr.base is not None or arr.flags.writeable:
        arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class BFunc:
    """Exact truth table of a function on the n-cube.

    ``values[x]`` is the value at the point with bitmask ``x``.  ``pm_one``
    functions take values in {-1, +1}; ``extended_int`` functions take any
    integer in ``[LO_SENTINEL, HI_SENTINEL]``, the sentinels standing for
    -inf and +inf.
    """

    n: int
    range_kind: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_n(self.n)
        if self.range_kind not in RANGE_KINDS:
            raise ValueError(f"unknown range kind {self.range_kind!r}")
        vals = _frozen(self.values)
        if vals.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} values, got shape {vals.shape}")
        if self.range_kind == PM_ONE:
            if not np.all(np.abs(vals) == 1):
                raise ValueError("pm_one function has a value other than +-1")
        elif vals.size and (vals.min() < LO_SENTINEL or vals.max() > HI_SENTINEL):
            raise ValueError("extended_int value outside the sentinel range")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, n: int, fn, range_kind: str = PM_ONE) -> "BFunc":
        return cls(n, range_kind, [fn(x) for x in range(1 << n)])

    def __call__(self, x) -> int:
        if isinstance(x, PointIndex):
            if x.n != self.n:
                raise ValueError("point dimension does not match function")
            x = x.bits
        return int(self.values[x])

    def __eq__(self, other):
        if not isinstance(other, BFunc):
            return NotImplemented
        return (
            self.n == other.n
            and self.range_kind == other.range_kind
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def distinct_values(self) -> np.ndarray:
        return np.unique(self.values)


def build_generalized_character(blocks: Sequence[int], m: int) -> BFunc:
    """f(t, z) = chi_{blocks[t]}(z) on log2(len(blocks)) + m bits.

    ``blocks`` are bitmasks over the m suffix coordinates.
    """
    ell = len(blocks)
    if ell < 1 or ell & (ell - 1):
        raise ValueError(f"block count {ell} is not a power of two")
    ell_bits = ell.bit_length() - 1
    for j, b in enumerate(blocks):
        if b < 0 or b >> m:
            raise ValueError(f"block {j} mask {b:#x} exceeds m={m}")
    sets = np.array([b << ell_bits for b in blocks], dtype=np.int64)
    return BFunc(ell_bits + m, PM_ONE, kernels.selector_values(sets, ell_bits + m, ell_bits))


# ---------------------------------------------------------------- file format

def dumps_truth_table(f: BFunc, packed: bool = False) -> str:
    """Text form: header ``n=<n> range=<kind>`` then the values in index order.

    With ``packed=True`` (pm_one only) the body is one hex string, bit x of
    the little-endian byte stream being 1 where f(x) = +1.
    """
    if packed:
        if f.range_kind != PM_ONE:
            raise ValueError("only pm_one functions can be hex-packed")
        bits = np.packbits((f.values == 1).astype(np.uint8), bitorder="little")
        return f"n={f.n} range={PM_ONE} packing=hex\n{bits.tobytes().hex()}\n"
    out = io.StringIO()
    out.write(f"n={f.n} range={f.range_kind}\n")
    row = 32
    vals = f.values.tolist()
    for i in range(0, len(vals), row):
        out.write(" ".join(map(str, vals[i:i + row])))
        out.write("\n")
    return out.getvalue()


def loads_truth_table(text: str) -> BFunc:
    head, _, body = text.partition("\n")
    try:
        tags = dict(item.split("=", 1) for item in head.split())
        n = int(tags["n"])
        kind = tags["range"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed truth-table header: {head!r}") from exc
    packing = tags.get("packing", "none")
    if packing == "hex":
        if kind != PM_ONE:
            raise ValueError("hex packing requires range=pm_one")
        raw = np.frombuffer(bytes.fromhex("".join(body.split())), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[: 1 << n]
        if bits.size != 1 << n:
            raise ValueError("packed body too short")
        return BFunc(n, PM_ONE, 2 * bits.astype(np.int64) - 1)
    if packing != "none":
        raise ValueError(f"unknown packing {packing!r}")
    vals = np.array(body.split(), dtype=np.int64)
    return BFunc(n, kind, vals)


def write_truth_table(f: BFunc, path: str | os.PathLike, packed: bool = False) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_truth_table(f, packed=packed))


def read_truth_table(path: str | os.PathLike) -> BFunc:
    with open(path) as fh:
        return loads_truth_table(fh.read())
