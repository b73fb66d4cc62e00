"""Command-line entry point.

Every subcommand prints a single JSON run report on stdout:

    {"subcommand": ..., "parameters": ..., "results": ...,
     "status": "pass" | "fail" | "error", "elapsed": seconds}

Exit code 0 iff status is "pass".  Exact quantities are serialized as
strings (polynomials, rationals); floats are plainly floats.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import bounds, gram, observables, parastat, speicher, verify
from .qfock import normal_order, parse_word, vacuum_expectation
from .qpoly import QPoly
from .wick import NonVEVWordError, wick_expectation


def _jsonable(obj):
    if isinstance(obj, QPoly):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, dict):
        return {_key(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


# -- subcommand implementations (each returns (results, passed)) -----------


def _cmd_vev(args):
    word = parse_word(args.word)
    results = {"word": args.word}
    ok = True
    if args.method in ("rewrite", "both"):
        results["rewrite"] = str(vacuum_expectation(word))
    if args.method in ("wick", "both"):
        results["wick"] = str(wick_expectation(word))
    if args.method == "both":
        ok = results["rewrite"] == results["wick"]
        results["methods_agree"] = ok
        results["value"] = results["rewrite"]
    else:
        results["value"] = results.get("rewrite", results.get("wick"))
    return results, ok


def _cmd_gram(args):
    g = gram.gram_matrix(args.n, limit=args.limit_n)
    results = {"n": args.n, "dim": g.dim}
    ok = True
    if args.exact:
        det = gram.det_exact(g.entries)
        zag = gram.zagier_determinant(args.n)
        ok = det == zag
        results["det_poly"] = str(det)
        results["match"] = ok
    if args.at is not None:
        results["matrix_at_q"] = g.evaluate_float(args.at).tolist()
    if not args.exact and args.at is None:
        results["entries"] = [[str(e) for e in row] for row in g.entries]
    return results, ok


def _cmd_zagier(args):
    zag = gram.zagier_determinant(args.n)
    results = {"n": args.n, "det_poly": str(zag),
               "factors": [(str(b), e) for b, e in gram.zagier_factors(args.n)]}
    ok = True
    if args.n <= gram.EXACT_LIMIT:
        ok = gram.det_gram_exact(args.n) == zag
        results["match"] = ok
    return results, ok


def _cmd_positivity(args):
    samples = list(np.linspace(args.lo, args.hi, args.samples))
    scan = gram.positivity_scan(args.n, samples)
    ok = all(e > 1e-12 for _, e in scan)
    return {"n": args.n,
            "eigen_table": [{"q": q, "min_eigenvalue": e} for q, e in scan],
            "all_positive": ok}, ok


def _cmd_observables(args):
    space = observables.TruncatedFockSpace(
        modes=tuple(range(args.modes)), cap=args.cap)
    depth = args.depth if args.depth is not None else args.cap - 1
    if args.check == "commutator":
        reports = [observables.check_transition_commutator(space, k, l, m, depth)
                   for k in range(args.modes)
                   for l in range(args.modes)
                   for m in range(args.modes)]
        ok = all(r["exact"] for r in reports)
        return {"check": "commutator", "depth": depth, "dim": space.dim,
                "triples": len(reports), "all_exact": ok,
                "failures": [r for r in reports if not r["exact"]]}, ok
    if args.check == "locality":
        reports = [observables.locality_check_discrete(space, x, y, w, depth)
                   for x in range(args.modes)
                   for y in range(args.modes)
                   for w in range(args.modes)]
        ok = all(r["exact"] for r in reports)
        return {"check": "locality", "all_exact": ok}, ok
    energies = {k: Fraction(k + 1) for k in space.modes}
    rep = observables.check_free_hamiltonian(space, energies, depth)
    return {"check": "hamiltonian", "energies": {k: str(v) for k, v in
                                                 energies.items()},
            "diagonal_exact": rep["exact"]}, rep["exact"]


def _cmd_para(args):
    kind = "parabose" if args.kind == "bose" else "parafermi"
    r = parastat.build_green(kind, args.p, args.modes, cap=args.cap)
    if args.check == "trilinear":
        rep = parastat.check_trilinear(r)
        return rep, rep["exact"]
    if args.check == "vacuum":
        rep = parastat.check_vacuum_conditions(r)
        return rep, rep["pass"]
    norms = {}
    for n in range(1, args.p + 2):
        norms[f"same_mode_n{n}"] = parastat.max_occupancy(r, (0,) * n)
    sym = kind == "parafermi"
    expected = all(
        (norms[f"same_mode_n{n}"] > 1e-10) == (n <= args.p)
        for n in range(1, args.p + 2)) if sym else True
    return {"kind": kind, "p": args.p, "norms": norms}, expected


def _cmd_gentile(args):
    rep = parastat.gentile_demo(args.theta, n_max=args.nmax)
    ok = rep["parafermi_sector_vanishes"]
    return rep, ok


def _cmd_speicher(args):
    word = parse_word(args.word)
    est = speicher.mc_estimate(word, args.q, args.N, args.samples, args.seed)
    target = speicher.quon_target(word, args.q)
    sigmas = abs(est.mean - target) / est.stderr if est.stderr else 0.0
    ok = abs(est.mean - target) <= max(3 * est.stderr, 2.0 / args.N)
    return {"mean": est.mean, "stderr": est.stderr, "target": target,
            "sigmas": sigmas, "samples": est.samples, "N": args.N}, ok


def _cmd_bounds(args):
    if args.bounds_cmd == "convert":
        if args.vf is not None:
            v = Fraction(args.vf)
            q = bounds.q_from_v(v, bounds.FERMIONIC)
            res = {"v_f": str(v), "q": str(q), "q_float": float(q)}
        elif args.vb is not None:
            v = Fraction(args.vb)
            q = bounds.q_from_v(v, bounds.BOSONIC)
            res = {"v_b": str(v), "q": str(q), "q_float": float(q)}
        else:
            q = Fraction(args.q)
            res = {"q": str(q),
                   "v_f": str(bounds.v_from_q(q, bounds.FERMIONIC)),
                   "v_b": str(bounds.v_from_q(q, bounds.BOSONIC))}
        return res, True
    if args.bounds_cmd == "propagate":
        prop = bounds.propagate_statistics(Fraction(args.qe))
        return {"q_e": str(prop.q_fermionic),
                "q_gamma": float(prop.q_bosonic_exact),
                "q_gamma_exact": str(prop.q_bosonic_exact),
                "q_gamma_leading": str(prop.q_bosonic_leading),
                "v_gamma_exact": str(prop.v_bosonic_exact),
                "v_gamma_leading": str(prop.v_bosonic_leading)}, True
    if args.bounds_cmd == "composite":
        qc = bounds.composite_q(Fraction(args.q), args.n)
        return {"q_constituent": str(Fraction(args.q)), "n": args.n,
                "q_composite": str(qc), "q_composite_float": float(qc)}, True
    if args.bounds_cmd == "overlap":
        exact, approx = bounds.compositeness_overlap(args.la, args.lb)
        return {"exact_norm_sq": exact, "approx_norm_sq": approx}, True
    momenta = tuple(int(x) for x in args.momenta.split(","))
    rep = bounds.conservation_residual_check(
        Fraction(args.qe), momenta, max_particles=args.cap)
    sweep = bounds.conservation_sweep(momenta=momenta)
    rep["sweep"] = sweep
    ok = abs(sweep["slope"] - 1.0) <= 0.2
    return rep, ok


def _cmd_verify_all(args):
    rep = verify.run_all()
    for c in rep["criteria"]:
        line = "PASS" if c["passed"] else "FAIL"
        print(f"[{line}] criterion {c['id']}: {c['name']} "
              f"({c['elapsed']}s)", file=sys.stderr)
    return rep, rep["passed"]


# -- argument parsing ------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="quon",
        description="Exact quon-algebra computations and verification checks")
    p.add_argument("--seed", type=int, default=0,
                   help="global RNG seed for stochastic subcommands")
    p.add_argument("--limit-dim", type=int, default=parastat.DIM_BUDGET,
                   help="matrix dimension budget for realizations")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; computations are deterministic "
                        "regardless of this setting")
    p.add_argument("--stable-output", action="store_true",
                   help="zero the elapsed field so identical invocations "
                        "produce byte-identical output")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("vev", help="vacuum expectation of an operator word")
    s.add_argument("--word", required=True)
    s.add_argument("--method", choices=("rewrite", "wick", "both"),
                   default="both")
    s.set_defaults(fn=_cmd_vev)

    s = sub.add_parser("gram", help="n-quon Gram matrix")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--exact", action="store_true",
                   help="compute the exact determinant and compare")
    s.add_argument("--at", type=float, default=None,
                   help="evaluate the matrix at this q")
    s.add_argument("--limit-n", type=int, default=gram.BUILD_LIMIT)
    s.set_defaults(fn=_cmd_gram)

    s = sub.add_parser("zagier", help="closed-form Gram determinant")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=_cmd_zagier)

    s = sub.add_parser("positivity", help="Gram eigenvalue scan over q")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--lo", type=float, default=-0.98)
    s.add_argument("--hi", type=float, default=0.98)
    s.set_defaults(fn=_cmd_positivity)

    s = sub.add_parser("observables", help="q=0 number-operator checks")
    s.add_argument("--modes", type=int, default=3)
    s.add_argument("--cap", type=int, default=3)
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--check", choices=("commutator", "locality", "hamiltonian"),
                   default="commutator")
    s.set_defaults(fn=_cmd_observables)

    s = sub.add_parser("para", help="parastatistics realization checks")
    s.add_argument("--kind", choices=("bose", "fermi"), required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--modes", type=int, default=2)
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("--check", choices=("trilinear", "vacuum", "occupancy"),
                   default="trilinear")
    s.set_defaults(fn=_cmd_para)

    s = sub.add_parser("gentile", help="occupancy-cap basis-dependence demo")
    s.add_argument("--nmax", type=int, default=2)
    s.add_argument("--theta", type=float, default=0.7853981633974483)
    s.set_defaults(fn=_cmd_gentile)

    s = sub.add_parser("speicher", help="random-sign ansatz Monte Carlo")
    s.add_argument("--word", required=True)
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--N", type=int, default=100)
    s.add_argument("--samples", type=int, default=2000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=_cmd_speicher)

    s = sub.add_parser("bounds", help="violation-parameter arithmetic")
    bs = s.add_subparsers(dest="bounds_cmd", required=True)
    c = bs.add_parser("convert")
    c.add_argument("--vf")
    c.add_argument("--vb")
    c.add_argument("--q")
    c.set_defaults(fn=_cmd_bounds)
    c = bs.add_parser("propagate")
    c.add_argument("--qe", required=True)
    c.set_defaults(fn=_cmd_bounds)
    c = bs.add_parser("composite")
    c.add_argument("--q", required=True)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(fn=_cmd_bounds)
    c = bs.add_parser("overlap")
    c.add_argument("--la", type=float, required=True)
    c.add_argument("--lb", type=float, required=True)
    c.set_defaults(fn=_cmd_bounds)
    c = bs.add_parser("conservation")
    c.add_argument("--qe", required=True)
    c.add_argument("--momenta", default="1,2,5,9")
    c.add_argument("--cap", type=int, default=3)
    c.set_defaults(fn=_cmd_bounds)

    s = sub.add_parser("verify-all", help="run the full verification suite")
    s.set_defaults(fn=_cmd_verify_all)
    return p


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    params = {k: v for k, v in vars(args).items()
              if k not in ("fn",) and not callable(v)}
    try:
        results, ok = args.fn(args)
        status = "pass" if ok else "fail"
    except (ValueError, NonVEVWordError, gram.GramLimitError,
            parastat.DimensionBudgetError,
            observables.TruncationError) as exc:
        results = {"error": str(exc)}
        status = "error"
    elapsed = 0.0 if args.stable_output else round(time.perf_counter() - t0, 3)
    report = {"subcommand": args.subcommand,
              "parameters": _jsonable(params),
              "results": _jsonable(results),
              "status": status,
              "elapsed": elapsed}
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if status == "pass" else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
