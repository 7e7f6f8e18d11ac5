"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--n 18] [--repeat 5]

Prints one row per kernel with the best-of-``repeat`` time of each backend
and the speedup.  Outputs are compared before timing.
"""
import argparse
import timeit

import numpy as np

from btl import _pykernels, kernels


def cases(n: int, rng):
    size = 1 << n
    pm = rng.choice(np.array([-1, 1], dtype=np.int64), size=size)
    ints = rng.integers(-50, 50, size=size, dtype=np.int64)
    # monotone-ish table with a few violations, the typical analysis input
    near = (2 * np.bitwise_count(np.arange(size)).astype(np.int64)) + rng.integers(-1, 2, size=size)
    ell_bits = min(4, n - 1)
    m = n - ell_bits
    xs = rng.integers(0, 1 << m, size=1 << ell_bits, dtype=np.int64)
    ys = rng.integers(0, 1 << m, size=1 << ell_bits, dtype=np.int64)
    small = min(n, 12)
    bool_small = (rng.random(1 << small) < 0.5).astype(np.int64)
    return {
        "wht_inplace": (lambda mod: mod.wht_inplace(pm.copy()), None),
        "first_violation": (lambda mod: mod.first_violation(near, n), None),
        "violation_counts": (lambda mod: mod.violation_counts(ints, n, ell_bits), None),
        "upper_envelope": (lambda mod: mod.upper_envelope(ints, n), None),
        "lower_envelope": (lambda mod: mod.lower_envelope(ints, n), None),
        "selector_values": (lambda mod: mod.selector_values(xs << ell_bits, n, ell_bits), None),
        "mono_gadget_values": (lambda mod: mod.mono_gadget_values(xs, ys, ell_bits, m), None),
        "violated_pairs": (lambda mod: mod.violated_pairs(bool_small, small, 1, 0), small),
        "count_violated_pairs": (lambda mod: mod.count_violated_pairs(bool_small, small), small),
    }


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=18)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    found = kernels.backends()
    if "cython" not in found:
        print("compiled extension not built; only the fallback is available")
    compiled = found.get("cython")
    rng = np.random.default_rng(args.seed)
    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':<22}{'dim':>5}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, (call, dim) in cases(args.n, rng).items():
        py = min(timeit.repeat(lambda: call(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:<22}{dim or args.n:>5}{py:>12.2f}{'-':>12}{'-':>10}")
            continue
        if name != "wht_inplace" and not _same(call(_pykernels), call(compiled)):
            raise SystemExit(f"{name}: backends disagree")
        cy = min(timeit.repeat(lambda: call(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<22}{dim or args.n:>5}{py:>12.2f}{cy:>12.2f}{py / cy:>10.1f}x")


if __name__ == "__main__":
    main()
