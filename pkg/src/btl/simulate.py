"""Testers, the tester-to-protocol simulation, and the nonadaptive Yao harness."""
from __future__ import annotations

import itertools
import warnings
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .core import EXTENDED_INT, PM_ONE, BFunc
from .fourier import wht
from .instances import check_approx_params, default_big_set


class BudgetExceeded(RuntimeError):
    """A tester asked for more queries than it declared."""


class SimplicityViolation(RuntimeError):
    """A combiner needed more than (x, f(x), g(x)) to produce h(x)."""


ACCEPT = "accept"
REJECT = "reject"


# -------------------------------------------------------------------- oracle

class Oracle:
    """Query access to a truth table with budget enforcement and a query log."""

    def __init__(self, answer: Callable[[np.ndarray], np.ndarray], n: int, budget: int):
        self._answer = answer
        self.n = n
        self.budget = budget
        self._points: list[np.ndarray] = []
        self._answers: list[np.ndarray] = []
        self.count = 0

    @classmethod
    def for_function(cls, f: BFunc, budget: int) -> "Oracle":
        return cls(lambda xs: f.values[xs], f.n, budget)

    def query_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=np.int64).reshape(-1)
        if self.count + pts.size > self.budget:
            raise BudgetExceeded(f"{self.count + pts.size} queries exceed budget {self.budget}")
        if pts.size and (pts.min() < 0 or pts.max() >= 1 << self.n):
            raise ValueError("query point outside the cube")
        ans = np.asarray(self._answer(pts), dtype=np.int64)
        self.count += pts.size
        self._points.append(pts)
        self._answers.append(ans)
        return ans

    def query(self, x: int) -> int:
        return int(self.query_many([x])[0])

    def log(self) -> tuple[np.ndarray, np.ndarray]:
        if not self._points:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy()
        return np.concatenate(self._points), np.concatenate(self._answers)


# ------------------------------------------------------------------- testers

class Tester(ABC):
    n: int
    budget: int
    adaptive: bool = True

    @abstractmethod
    def run(self, oracle: Oracle, rng: np.random.Generator) -> bool:
        """Interact with ``oracle``; return True to accept."""


class NonadaptiveTester(Tester):
    """All queries are drawn by :meth:`plan` before any answer is seen."""

    adaptive = False

    @abstractmethod
    def plan(self, rng: np.random.Generator) -> np.ndarray: ...

    @abstractmethod
    def decide(self, points: np.ndarray, answers: np.ndarray) -> bool: ...

    def run(self, oracle, rng):
        points = self.plan(rng)
        return self.decide(points, oracle.query_many(points))


@dataclass
class EdgeTester(NonadaptiveTester):
    """Samples random hypercube edges, rejects on any violated one."""

    n: int
    trials: int
    eps: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        self.budget = 2 * self.trials

    def plan(self, rng):
        x = rng.integers(0, 1 << self.n, size=self.trials, dtype=np.int64)
        bit = np.left_shift(1, rng.integers(0, self.n, size=self.trials)).astype(np.int64)
        # interleaved (lower, upper) endpoint pairs
        return np.stack([x & ~bit, x | bit], axis=1).reshape(-1)

    def decide(self, points, answers):
        pairs = answers.reshape(-1, 2)
        return not np.any(pairs[:, 0] > pairs[:, 1])


@dataclass
class DerivativeDegreeTester(NonadaptiveTester):
    """Checks random (k+1)-fold discrete derivatives for vanishing.

    Each trial picks |S| = k + 1 and x, queries the subcube x xor T for all
    T within S, and rejects if the signed sum of (-1)^|T| f(x xor T) is
    nonzero.
    """

    n: int
    k: int
    trials: int

    def __post_init__(self):
        if not 0 <= self.k < self.n:
            raise ValueError("need 0 <= k < n")
        self.budget = self.trials << (self.k + 1)

    def plan(self, rng):
        w = self.k + 1
        coords = np.argsort(rng.random((self.trials, self.n)), axis=1)[:, :w]
        x = rng.integers(0, 1 << self.n, size=self.trials, dtype=np.int64)
        sub_bits = (np.arange(1 << w)[:, None] >> np.arange(w)) & 1        # (2^w, w)
        flips = (sub_bits[None, :, :] << coords[:, None, :]).sum(axis=2)  # (trials, 2^w)
        return (x[:, None] ^ flips).reshape(-1).astype(np.int64)

    def decide(self, points, answers):
        w = self.k + 1
        sign = 1 - 2 * (np.bitwise_count(np.arange(1 << w)) & 1).astype(np.int64)
        sums = answers.reshape(self.trials, 1 << w) @ sign
        return not np.any(sums)


@dataclass
class ExhaustiveMonotoneTester(NonadaptiveTester):
    """Reads the whole truth table and accepts iff it is monotone."""

    n: int

    def __post_init__(self):
        self.budget = 1 << self.n

    def plan(self, rng):
        return np.arange(1 << self.n, dtype=np.int64)

    def decide(self, points, answers):
        x, _ = kernels.first_violation(np.ascontiguousarray(answers, dtype=np.int64), self.n)
        return x < 0


def edge_tester(n: int, eps: float | None, trials: int) -> EdgeTester:
    return EdgeTester(n, trials, eps)


def derivative_degree_tester(n: int, k: int, trials: int) -> DerivativeDegreeTester:
    return DerivativeDegreeTester(n, k, trials)


def exhaustive_tester(n: int) -> ExhaustiveMonotoneTester:
    return ExhaustiveMonotoneTester(n)


@dataclass
class TesterRun:
    verdict: str
    points: np.ndarray = field(repr=False)
    answers: np.ndarray = field(repr=False)

    @property
    def queries(self) -> int:
        return int(self.points.size)


def _execute(t: Tester, oracle: Oracle, seed) -> str:
    if t.n != oracle.n:
        raise ValueError(f"tester dimension {t.n} does not match function dimension {oracle.n}")
    accepted = t.run(oracle, np.random.default_rng(seed))
    return ACCEPT if accepted else REJECT


def run_tester(t: Tester, f: BFunc, seed) -> TesterRun:
    oracle = Oracle.for_function(f, t.budget)
    verdict = _execute(t, oracle, seed)
    pts, ans = oracle.log()
    return TesterRun(verdict, pts, ans)


def rejection_rate(t: Tester, f: BFunc, repetitions: int, seed) -> float:
    seeds = np.random.SeedSequence(seed).spawn(repetitions)
    rejected = sum(run_tester(t, f, s).verdict == REJECT for s in seeds)
    return rejected / repetitions


# --------------------------------------------------------- exact tester odds

def edge_rejection_probability(f: BFunc, trials: int) -> Fraction:
    """Exact rejection probability of :class:`EdgeTester` on ``f``."""
    by_dir, _ = kernels.violation_counts(f.values, f.n, 0)
    p = Fraction(int(by_dir.sum()), f.n << (f.n - 1))
    return 1 - (1 - p) ** trials


def derivative_nonvanishing_probability(f: BFunc, k: int) -> Fraction:
    """Pr over |S| = k+1 and x that the S-derivative of f at x is nonzero.

    Computed from the spectrum: the S-derivative at x is a nonzero multiple
    of sum over U containing S of f^(U) chi_{U minus S}(x).
    """
    n = f.n
    coeffs = wht(f).coeffs
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    signs = 1 - 2 * (np.bitwise_count(masks) & 1).astype(np.int64)
    hits = 0
    subsets = 0
    for combo in itertools.combinations(range(n), k + 1):
        S = sum(1 << c for c in combo)
        subsets += 1
        sup = masks[(masks & S) == S]
        if not np.any(coeffs[sup]):
            continue
        restricted = np.zeros(size, dtype=np.int64)
        restricted[sup ^ S] = coeffs[sup]
        restricted *= signs
        kernels.wht_inplace(restricted)
        hits += int(np.count_nonzero(restricted))
    return Fraction(hits, subsets * size)


def derivative_rejection_probability(f: BFunc, k: int, trials: int) -> Fraction:
    p = derivative_nonvanishing_probability(f, k)
    return 1 - (1 - p) ** trials


# ----------------------------------------------------------------- combiners

RuleFn = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Combiner:
    """A combining operator given by a pointwise rule h(x) = rule(x, f(x), g(x)).

    ``operator``, when present, is the same operator written over whole
    truth tables; the protocol simulation checks the two agree at every
    queried point, which catches operators that are not simple.
    """

    name: str
    rule: RuleFn
    range_kind: str = EXTENDED_INT
    operator: Callable[[BFunc, BFunc], BFunc] | None = None

    def combine(self, f: BFunc, g: BFunc) -> BFunc:
        if f.n != g.n:
            raise ValueError("f and g must share a dimension")
        x = np.arange(1 << f.n, dtype=np.int64)
        return BFunc(f.n, self.range_kind, self.rule(x, f.values, g.values))


def mono_combiner(ell_bits: int) -> Combiner:
    tmask = (1 << ell_bits) - 1

    def rule(x, fx, gx):
        x = np.asarray(x, dtype=np.int64)
        wt = np.bitwise_count(x & tmask).astype(np.int64)
        wz = np.bitwise_count(x >> ell_bits).astype(np.int64)
        return 4 * wt + 2 * wz + fx + gx

    return Combiner(f"mono(ell_bits={ell_bits})", rule, EXTENDED_INT)


def fourier_combiner(ell_bits: int, n: int) -> Combiner:
    suffix = ((1 << n) - 1) & ~((1 << ell_bits) - 1)

    def rule(x, fx, gx):
        x = np.asarray(x, dtype=np.int64)
        chi = 1 - 2 * (np.bitwise_count(suffix & ~x) & 1).astype(np.int64)
        return fx * gx * chi

    return Combiner(f"fourier(ell_bits={ell_bits})", rule, PM_ONE)


# ------------------------------------------------------ protocol simulation

@dataclass
class Transcript:
    """Record of one simulated two-party run: one bit from each side per query."""

    queries: np.ndarray = field(repr=False)
    alice_bits: np.ndarray = field(repr=False)
    bob_bits: np.ndarray = field(repr=False)
    answers: np.ndarray = field(repr=False)
    verdict: str

    @property
    def query_count(self) -> int:
        return int(self.queries.size)

    @property
    def bits(self) -> int:
        return int(self.alice_bits.size + self.bob_bits.size)


def _encode(v: np.ndarray) -> np.ndarray:
    return (v == 1).astype(np.uint8)


def _decode(b: np.ndarray) -> np.ndarray:
    return 2 * b.astype(np.int64) - 1


def reduce_to_protocol(t: Tester, c: Combiner, f: BFunc, g: BFunc, seed) -> Transcript:
    """Run tester ``t`` on psi(f, g) with Alice holding f and Bob holding g.

    Each query x costs two bits: Alice sends f(x), Bob sends g(x), and both
    evaluate the rule locally.  The tester sees exactly what it would see on
    the combined function, so the verdict matches :func:`run_tester`.
    """
    if f.range_kind != PM_ONE or g.range_kind != PM_ONE:
        raise ValueError("protocol simulation sends one bit per value; f and g must be +-1")
    if f.n != g.n:
        raise ValueError("f and g must share a dimension")
    reference = c.operator(f, g).values if c.operator is not None else None
    sent_a: list[np.ndarray] = []
    sent_b: list[np.ndarray] = []

    def answer(xs):
        a_bits = _encode(f.values[xs])      # Alice -> Bob
        b_bits = _encode(g.values[xs])      # Bob -> Alice
        sent_a.append(a_bits)
        sent_b.append(b_bits)
        at_alice = np.asarray(c.rule(xs, f.values[xs], _decode(b_bits)), dtype=np.int64)
        at_bob = np.asarray(c.rule(xs, _decode(a_bits), g.values[xs]), dtype=np.int64)
        if not np.array_equal(at_alice, at_bob):
            raise SimplicityViolation(f"{c.name}: the parties computed different h(x)")
        if reference is not None and not np.array_equal(at_alice, reference[xs]):
            bad = int(xs[np.flatnonzero(at_alice != reference[xs])[0]])
            raise SimplicityViolation(
                f"{c.name}: h({bad}) is not determined by x, f(x), g(x)"
            )
        return at_alice

    oracle = Oracle(answer, f.n, t.budget)
    verdict = _execute(t, oracle, seed)
    pts, ans = oracle.log()
    empty = np.zeros(0, dtype=np.uint8)
    return Transcript(
        pts,
        np.concatenate(sent_a) if sent_a else empty,
        np.concatenate(sent_b) if sent_b else empty.copy(),
        ans,
        verdict,
    )


# ------------------------------------------------------------ Yao experiment

def random_query_sets(n: int, d: int, count: int, seed=None) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    return [np.sort(rng.choice(1 << n, size=d, replace=False)).astype(np.int64) for _ in range(count)]


def draw_selector_sets(rng, samples: int, n: int, k: int, ell_bits: int, big_set: int):
    """Sample the 1/2 D+ + 1/2 D- mixture as selector tables.

    Returns ``(is_minus, b, sets)`` with ``sets[s, a]`` the coordinate mask
    chosen for prefix ``a`` in draw ``s``; ``b`` is only meaningful where
    ``is_minus`` holds.
    """
    blocks = 1 << ell_bits
    width = n - ell_bits
    is_minus = rng.random(samples) < 0.5
    b = rng.integers(0, blocks, size=samples)
    order = np.argsort(rng.random((samples, blocks, width)), axis=2)[:, :, : k // 2]
    sets = np.sum(np.left_shift(np.int64(1), order + ell_bits), axis=2, dtype=np.int64)
    rows = np.flatnonzero(is_minus)
    sets[rows, b[rows]] = big_set
    return is_minus, b, sets


@dataclass
class YaoQueryStats:
    points: list[int]
    distinct_prefixes: int
    best_rule_error: float
    hit_rate: float                 # fraction of D- draws whose special prefix was queried
    no_hit_probability: Fraction    # exact, 1 - distinct_prefixes / 2^ell
    error_lower_bound: Fraction     # exact, no_hit_probability / 2

    def to_dict(self) -> dict:
        return {
            "points": self.points,
            "distinct_prefixes": self.distinct_prefixes,
            "best_rule_error": self.best_rule_error,
            "hit_rate": self.hit_rate,
            "no_hit_probability": str(self.no_hit_probability),
            "error_lower_bound": str(self.error_lower_bound),
        }


def best_rule_error(views: np.ndarray, is_minus: np.ndarray) -> float:
    """Error of the Bayes-optimal deterministic decision over the empirical
    joint law of (view, label)."""
    if views.size == 0:
        return min(int(is_minus.sum()), int((~is_minus).sum())) / max(is_minus.size, 1)
    keys, inv = np.unique(views, return_inverse=True)
    minus = np.bincount(inv, weights=is_minus, minlength=keys.size)
    plus = np.bincount(inv, weights=~is_minus, minlength=keys.size)
    return float(np.minimum(minus, plus).sum() / views.size)


def yao_experiment(
    n: int,
    k: int,
    ell_bits: int,
    query_sets: Sequence[Sequence[int]],
    samples: int,
    seed,
    big_set: int | None = None,
    chunk: int = 20000,
) -> dict:
    check_approx_params(n, k, ell_bits)
    if big_set is None:
        big_set = default_big_set(n, k, ell_bits)
    limit = (1 << ell_bits) / 6
    qsets = [np.asarray(q, dtype=np.int64).reshape(-1) for q in query_sets]
    for q in qsets:
        if q.size > limit:
            warnings.warn(f"query set of size {q.size} exceeds 2^ell/6 = {limit:.3f}", stacklevel=2)
    tmask = (1 << ell_bits) - 1
    rng = np.random.default_rng(seed)
    views = [[] for _ in qsets]
    hits = [0 for _ in qsets]
    labels = []
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        is_minus, b, sets = draw_selector_sets(rng, size, n, k, ell_bits, big_set)
        labels.append(is_minus)
        for j, q in enumerate(qsets):
            if q.size == 0:
                views[j].append(np.zeros(size, dtype=np.int64))
                continue
            chosen = sets[:, q & tmask]                       # (size, d)
            bits = (np.bitwise_count(chosen & ~q) & 1).astype(np.int64)
            views[j].append(bits @ (np.int64(1) << np.arange(q.size, dtype=np.int64)))
            hit = np.isin(b, np.unique(q & tmask)) & is_minus
            hits[j] += int(hit.sum())
        done += size
    is_minus = np.concatenate(labels)
    n_minus = max(int(is_minus.sum()), 1)
    stats = []
    for j, q in enumerate(qsets):
        prefixes = len(set((q & tmask).tolist()))
        no_hit = 1 - Fraction(prefixes, 1 << ell_bits)
        v = np.concatenate(views[j]) if views[j] else np.zeros(0, dtype=np.int64)
        stats.append(
            YaoQueryStats(
                points=q.tolist(),
                distinct_prefixes=prefixes,
                best_rule_error=best_rule_error(v, is_minus),
                hit_rate=hits[j] / n_minus,
                no_hit_probability=no_hit,
                error_lower_bound=no_hit / 2,
            )
        )
    errors = [s.best_rule_error for s in stats]
    return {
        "params": {"n": n, "k": k, "ell_bits": ell_bits, "samples": samples, "big_set": big_set},
        "query_set_size_limit": limit,
        "minus_fraction": float(is_minus.mean()) if samples else 0.0,
        "min_best_rule_error": min(errors) if errors else None,
        "mean_best_rule_error": float(np.mean(errors)) if errors else None,
        "min_error_lower_bound": str(min(s.error_lower_bound for s in stats)) if stats else None,
        "query_sets": [s.to_dict() for s in stats],
    }
