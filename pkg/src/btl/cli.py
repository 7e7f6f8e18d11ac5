"""Command-line front end: ``btl gen | analyze | simulate | verify-claims``.

Every document written carries ``version``, ``seed`` and ``parameters``.
Exit status: 0 on success, 1 when a claim fails, 2 on usage errors or
infeasible parameters.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, claims, fourier, instances, monotone, simulate
from .core import PM_ONE, build_generalized_character, dumps_truth_table, read_truth_table

EXIT_OK, EXIT_CLAIM_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _document(args, parameters: dict, **body) -> dict:
    return {"version": __version__, "seed": args.seed, "parameters": parameters, **body}


def _emit(args, text: str, suffix: str = "") -> None:
    if args.out:
        Path(str(args.out) + suffix).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, default=_jsonable) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'kind', '')} needs {', '.join(missing)}".replace("  ", " "))


def _intersections(args, blocks: int):
    if args.intersect_blocks:
        return sorted(set(args.intersect_blocks))
    return instances.choose_blocks(blocks, 1, args.seed) if args.intersect else []


# ----------------------------------------------------------------------- gen

def cmd_gen(args) -> int:
    kind = args.kind
    params: dict = {"kind": kind}
    extra: dict = {}
    if kind in ("mono", "mono-truncated"):
        _require(args, "ell", "m", "k")
        hits = _intersections(args, args.ell)
        inst = instances.gen_sparse_instance(args.ell, args.m, args.k, hits, args.seed)
        if kind == "mono":
            f = instances.build_mono_gadget(inst)
        else:
            trunc = instances.truncation_radius(args.m)
            f = instances.build_mono_gadget_truncated(inst, trunc)
            extra["truncation"] = {
                "radius": str(trunc.radius),
                "c_prime": trunc.c_prime,
                "clamp_probability": str(trunc.clamp_probability),
            }
        params.update(ell=args.ell, m=args.m, k=args.k, intersecting=hits)
        extra["instance"] = inst.to_json()
    elif kind == "fourier":
        _require(args, "n", "k", "ell")
        hits = _intersections(args, 1 << args.ell)
        inst = instances.gen_fourier_instance(args.n, args.k, args.ell, hits, args.seed)
        f = instances.build_fourier_gadget(inst)
        params.update(n=args.n, k=args.k, ell_bits=args.ell, intersecting=hits)
        extra["instance"] = inst.to_json()
        extra["selector"] = instances.fourier_gadget_selector(inst).to_json()
    else:
        _require(args, "n", "k", "ell")
        if kind == "dplus":
            sel = instances.dplus_selector(args.n, args.k, args.ell, args.seed)
        else:
            sel, b = instances.dminus_selector(args.n, args.k, args.ell, seed=args.seed)
            extra["big_prefix"] = b
        f = instances.build_selector_function(sel)
        params.update(n=args.n, k=args.k, ell_bits=args.ell)
        extra["selector"] = sel.to_json()

    table = dumps_truth_table(f, packed=args.packed)
    if args.format == "csv":
        _emit(args, _csv(enumerate(f.values.tolist()), ["x", "value"]))
        return EXIT_OK
    if args.out:
        # instance JSON next to the truth table
        _emit(args, table, ".tt")
        _emit(args, _dump(_document(args, params, n=f.n, range=f.range_kind,
                                     truth_table=Path(str(args.out) + ".tt").name, **extra)), ".json")
    else:
        _emit(args, _dump(_document(args, params, n=f.n, range=f.range_kind, truth_table=table, **extra)))
    return EXIT_OK


# ------------------------------------------------------------------- analyze

def _analyze_monotone(f, ell_bits: int) -> dict:
    rep = monotone.violation_report(f, ell_bits, pairs=f.n <= 12 and f.distinct_values().size <= 2)
    out = rep.to_dict()
    out["is_monotone"] = rep.is_clean()
    out["distance_bounds"] = monotone.distance_bounds_general(f, ell_bits).to_dict()
    return out


def _analyze_fourier(f) -> dict:
    s = fourier.wht(f)
    sizes = s.set_sizes()
    by_level = np.bincount(sizes, weights=None, minlength=f.n + 1)
    mass = [int(np.dot(s.coeffs[sizes == j], s.coeffs[sizes == j])) for j in range(f.n + 1)]
    tails = {str(j): str(fourier.tail_mass(s, j)) for j in range(f.n + 1)}
    return {
        "degree": fourier.fourier_degree(s),
        "support_size": int(s.support().size),
        "square_sum": s.square_sum(),
        "level_mass_scaled": mass,
        "level_sizes": by_level.tolist(),
        "scale": f"coefficients scaled by 2^{f.n}; masses scaled by 4^{f.n}",
        "tail_mass": tails,
    }


def cmd_analyze(args) -> int:
    try:
        f = read_truth_table(args.file)
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e}") from e
    want_mono = args.monotone or not args.fourier
    want_fourier = args.fourier or (not args.monotone and f.range_kind == PM_ONE)
    if args.format == "csv":
        if want_fourier and not args.monotone:
            _emit(args, fourier.wht(f).to_csv(include_zeros=args.include_zeros))
        else:
            rep = monotone.violation_report(f, args.ell_bits)
            _emit(args, _csv(((i + 1, int(c)) for i, c in enumerate(rep.violated_by_direction)),
                             ["direction", "violated_edges"]))
        return EXIT_OK
    body: dict = {"n": f.n, "range": f.range_kind}
    if want_mono:
        body["monotone"] = _analyze_monotone(f, args.ell_bits)
    if want_fourier:
        if f.range_kind != PM_ONE:
            raise UsageError("Fourier analysis needs a pm_one function")
        body["fourier"] = _analyze_fourier(f)
    params = {"file": str(args.file), "ell_bits": args.ell_bits}
    _emit(args, _dump(_document(args, params, **body)))
    return EXIT_OK


# ------------------------------------------------------------------ simulate

def _sim_reduction(args) -> dict:
    _require(args, "k")
    combiner_name = args.combiner
    seq = np.random.SeedSequence(args.seed)
    if combiner_name == "mono":
        _require(args, "ell", "m")
        hits = _intersections(args, args.ell)
        inst = instances.gen_sparse_instance(args.ell, args.m, args.k, hits, args.seed)
        comb = simulate.mono_combiner(inst.ell_bits)
        eps = float(instances.mono_epsilon(args.ell))
    else:
        _require(args, "n", "ell")
        hits = _intersections(args, 1 << args.ell)
        inst = instances.gen_fourier_instance(args.n, args.k, args.ell, hits, args.seed)
        comb = simulate.fourier_combiner(inst.ell_bits, inst.n)
        eps = None
    n = inst.n
    f = build_generalized_character(inst.x_blocks, inst.m)
    g = build_generalized_character(inst.y_blocks, inst.m)
    tester = _make_tester(args, n, eps)
    h = comb.combine(f, g)
    runs = []
    for s in seq.spawn(args.reps):
        tr = simulate.reduce_to_protocol(tester, comb, f, g, s)
        direct = simulate.run_tester(tester, h, s)
        runs.append((tr, direct))
    rejected = sum(tr.verdict == simulate.REJECT for tr, _ in runs)
    return {
        "params": {"combiner": combiner_name, "tester": args.tester, "n": n, "k": args.k,
                   "ell": args.ell, "m": inst.m, "intersecting": hits, "reps": args.reps},
        "trials": getattr(tester, "trials", None),
        "rejection_rate": rejected / args.reps,
        "transcript_bits": {
            "max": max(tr.bits for tr, _ in runs),
            "max_queries": max(tr.query_count for tr, _ in runs),
            "all_equal_2q": all(tr.bits == 2 * tr.query_count for tr, _ in runs),
        },
        "paired_verdicts_equal": all(tr.verdict == d.verdict for tr, d in runs),
        "disj_value": instances.eval_disj(inst),
        "error_bounds": {"rejection_rate_halfwidth_95": _hoeffding(args.reps)},
    }


def _hoeffding(reps: int, delta: float = 0.05) -> float:
    return float(np.sqrt(np.log(2 / delta) / (2 * reps)))


def _make_tester(args, n: int, eps):
    if args.tester == "edge":
        trials = args.trials if args.trials is not None else 16 * n * max(args.ell or 1, 1)
        return simulate.edge_tester(n, eps, trials)
    if args.tester == "derivative":
        return simulate.derivative_degree_tester(n, args.degree if args.degree is not None else args.k,
                                                 args.trials if args.trials is not None else 32)
    return simulate.exhaustive_tester(n)


def _sim_yao(args) -> dict:
    _require(args, "n", "k", "ell")
    d = args.d if args.d is not None else (1 << args.ell) // 6
    qsets = simulate.random_query_sets(args.n, d, args.query_sets, [args.seed, 1])
    res = simulate.yao_experiment(args.n, args.k, args.ell, qsets, args.samples, [args.seed, 2])
    return {
        "params": {**res["params"], "d": d, "query_sets": args.query_sets},
        "trials": args.samples,
        "rejection_rate": None,
        "transcript_bits": None,
        "error_bounds": {
            "min_best_rule_error": res["min_best_rule_error"],
            "mean_best_rule_error": res["mean_best_rule_error"],
            "analytic_lower_bound": res["min_error_lower_bound"],
            "monte_carlo_halfwidth_95": _hoeffding(args.samples),
        },
        "query_sets": res["query_sets"],
    }


def _sim_tester(args) -> dict:
    family = args.family
    if family in ("mono", "mono-truncated"):
        _require(args, "ell", "m", "k")
        hits = _intersections(args, args.ell)
        inst = instances.gen_sparse_instance(args.ell, args.m, args.k, hits, args.seed)
        f = (instances.build_mono_gadget(inst) if family == "mono"
             else instances.build_mono_gadget_truncated(inst))
        eps = float(instances.mono_epsilon(args.ell))
        params = {"family": family, "ell": args.ell, "m": args.m, "k": args.k, "intersecting": hits}
    else:
        _require(args, "n", "k", "ell")
        sampler = instances.sample_dplus if family == "dplus" else instances.sample_dminus
        f = sampler(args.n, args.k, args.ell, seed=[args.seed, 3])
        eps = None
        params = {"family": family, "n": args.n, "k": args.k, "ell_bits": args.ell}
    tester = _make_tester(args, f.n, eps)
    rate = simulate.rejection_rate(tester, f, args.reps, [args.seed, 4])
    exact = None
    if args.tester == "edge":
        exact = simulate.edge_rejection_probability(f, tester.trials)
    elif args.tester == "derivative" and f.range_kind == PM_ONE and f.n <= 14:
        exact = simulate.derivative_rejection_probability(f, tester.k, tester.trials)
    params.update(tester=args.tester, reps=args.reps)
    return {
        "params": params,
        "trials": getattr(tester, "trials", None),
        "rejection_rate": rate,
        "transcript_bits": None,
        "error_bounds": {
            "exact_rejection_probability": None if exact is None else float(exact),
            "halfwidth_95": _hoeffding(args.reps),
        },
    }


def cmd_simulate(args) -> int:
    if args.seed is None:
        raise UsageError("simulate requires --seed")
    body = {"reduction": _sim_reduction, "yao": _sim_yao, "tester": _sim_tester}[args.kind](args)
    params = body.pop("params")
    _emit(args, _dump(_document(args, params, **body)))
    return EXIT_OK


# ------------------------------------------------------------- verify-claims

def cmd_verify_claims(args) -> int:
    names = args.claim or list(claims.CLAIMS)
    unknown = [n for n in names if n not in claims.CLAIMS]
    if unknown:
        raise UsageError(f"unknown claim(s) {', '.join(unknown)}; choose from {', '.join(claims.CLAIMS)}")
    seed = args.seed if args.seed is not None else 0
    results = []
    for res in claims.run_claims(names, args.scale, seed):
        results.append(res)
        if args.format is None or args.out:
            print(res.line(), flush=True)
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} claims passed", file=sys.stderr)
    if args.format == "json":
        doc = _document(args, {"scale": args.scale, "claims": names}, passed=ok,
                        results=[r.to_dict() for r in results])
        doc["seed"] = seed
        _emit(args, _dump(doc))
    elif args.format == "csv":
        _emit(args, _csv(((r.name, "pass" if r.passed else "fail", r.computed, r.required) for r in results),
                         ["claim", "status", "computed", "required"]))
    return EXIT_OK if ok else EXIT_CLAIM_FAILED


# -------------------------------------------------------------------- parser

def _common(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=d(None), help="random seed (recorded in the output)")
    p.add_argument("--format", choices=("json", "csv"), default=d(None),
                   help="json (default) or csv; verify-claims prints plain lines unless set")
    p.add_argument("--out", type=Path, default=d(None), help="output path (stdout if omitted)")
    p.add_argument("--scale", choices=tuple(claims.SCALES), default=d("default"))
    return p


def _params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--m", type=int, help="block width")
    p.add_argument("--k", type=int, help="sparsity or target degree")
    p.add_argument("--ell", type=int,
                   help="block count for mono families, index bits for fourier/dplus/dminus/yao")
    p.add_argument("--intersect", action="store_true", help="make one random block intersect")
    p.add_argument("--intersect-blocks", type=int, nargs="+", metavar="T",
                   help="make exactly these blocks intersect")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="btl", description=__doc__.splitlines()[0], parents=[_common(False)])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)

    g = sub.add_parser("gen", parents=[common], help="generate an instance and its gadget")
    g.add_argument("kind", choices=("mono", "mono-truncated", "fourier", "dplus", "dminus"))
    _params(g)
    g.add_argument("--packed", action="store_true", help="hex-packed truth table")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", parents=[common], help="analyse a truth-table file")
    a.add_argument("file", type=Path)
    a.add_argument("--monotone", action="store_true")
    a.add_argument("--fourier", action="store_true")
    a.add_argument("--ell-bits", type=int, default=0, help="index bits for the per-index violation matrix")
    a.add_argument("--include-zeros", action="store_true", help="keep zero coefficients in CSV spectra")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", parents=[common], help="run testers, reductions and the Yao experiment")
    s.add_argument("kind", choices=("reduction", "yao", "tester"))
    _params(s)
    s.add_argument("--tester", choices=("edge", "derivative", "exhaustive"), default="edge")
    s.add_argument("--combiner", choices=("mono", "fourier"), default="mono")
    s.add_argument("--family", choices=("mono", "mono-truncated", "dplus", "dminus"), default="mono")
    s.add_argument("--trials", type=int)
    s.add_argument("--degree", type=int, help="degree threshold of the derivative tester (default --k)")
    s.add_argument("--reps", type=int, default=100)
    s.add_argument("--d", type=int, help="query-set size for yao (default 2^ell // 6)")
    s.add_argument("--query-sets", type=int, default=20)
    s.add_argument("--samples", type=int, default=100_000)
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify-claims", parents=[common], help="run the acceptance checks")
    v.add_argument("--claim", action="append", metavar="NAME", help="run only this claim (repeatable)")
    v.set_defaults(func=cmd_verify_claims)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    if args.command == "gen" and args.seed is None:
        args.seed = 0
    if args.format is None and args.command != "verify-claims":
        args.format = "json"
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"btl: error: {e}", file=sys.stderr)
        return EXIT_USAGE
