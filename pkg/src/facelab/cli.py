"""Command-line interface.

Exit codes: 0 success, 1 a check failed (an inequality, equality or rank
verdict came out false), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .complex import read_sc, write_sc
from .errors import FacelabError, LsopFailure, PieceNotManifold, UnexpectedBase
from .fields import DEFAULT_PRIME, as_field_spec
from .report import dumps, make_report

CHECK_FAILURES = (UnexpectedBase, PieceNotManifold, LsopFailure)


def _field(text: str):
    try:
        return as_field_spec(text)
    except FacelabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json")}
    if "field" in cfg:
        cfg["field"] = str(cfg["field"])
    return cfg


def _guard(fn, *a, **kw):
    """Run a check, turning a precondition error into a not-applicable record."""
    try:
        return fn(*a, **kw)
    except FacelabError as exc:
        return {"not_applicable": f"{type(exc).__name__}: {exc}"}


# -- commands ----------------------------------------------------------------------
def cmd_analyze(args):
    from .enumerative import h_vector, prime_vectors
    from .homology import betti, euler
    from .manifold import classify
    from .surgery import missing_facets

    K = read_sc(args.file)
    rep = classify(K, args.field)
    res = {
        "classification": rep.to_json(),
        "f_vector": list(K.f_vector()),
        "euler": euler(K),
        "betti": betti(K, args.field).to_json(),
    }
    if K.is_pure():
        res["h_vector"] = list(h_vector(K))
        res["missing_facets"] = [list(f) for f in missing_facets(K)]
    res["prime_vectors"] = _guard(prime_vectors, K, args.field)
    return res, True


def cmd_complete(args):
    from .manifold import completion

    K = read_sc(args.file)
    comp = completion(K, args.field)
    if args.output:
        write_sc(comp.complex, args.output, header=f"completion, cone vertex {comp.cone_vertex}")
    res = comp.to_json()
    res["output"] = args.output
    return res, True


def cmd_oracle(args):
    from .enumerative import is_M_vector
    from .oracle import gorenstein_check, reduce

    K = read_sc(args.file)
    trials = []
    for t in range(args.trials):
        Q = reduce(K, args.field, args.seed + t * 1000)
        trials.append({
            "seed": Q.seed,
            "seeds_tried": list(Q.seeds_tried),
            "field": str(Q.field),
            "hilbert": list(Q.hilbert[: Q.d + 1]),
            "hilbert_d_plus_1": Q.hilbert[Q.d + 1],
            "socle": list(Q.socle()),
            "h_dprime": list(Q.h_dprime()),
            "lsop_valid": Q.is_valid,
            "macaulay_growth": is_M_vector(Q.hilbert),
        })
    keys = ("hilbert", "socle", "h_dprime")
    consistent = all(all(t[k] == trials[0][k] for k in keys) for t in trials)
    first = reduce(K, args.field, args.seed)
    res = {
        "trials": trials,
        "consistent_across_seeds": consistent,
        "gorenstein": _guard(gorenstein_check, first),
    }
    ok = consistent and all(t["lsop_valid"] and t["macaulay_growth"] for t in trials)
    return res, ok


def cmd_bounds(args):
    from .enumerative import check_g_theorems, check_kuhnel_bounds, check_weighted_betti

    K = read_sc(args.file)
    res = {
        "g_theorems": _guard(check_g_theorems, K, args.field, args.assume_wlp),
        "kuhnel": _guard(check_kuhnel_bounds, K, args.field, args.assume_wlp),
        "weighted_betti": _guard(check_weighted_betti, K, args.field),
    }
    ok = all(r.get("passed", True) for r in res.values())
    return res, ok


def cmd_decompose(args):
    from .surgery import decompose_minimal_g2, decompose_minimal_g_tilde2, move_count

    K = read_sc(args.file)
    fn = decompose_minimal_g2 if args.mode == "g2" else decompose_minimal_g_tilde2
    steps = fn(K, args.field)
    return {"mode": args.mode, "field": str(args.field), "moves": move_count(steps),
            "steps": [s.to_json() for s in steps]}, True


def cmd_generate(args):
    from .generators import generate

    params = {"d": args.dim, "n": args.vertices, "k": args.facets, "shape": args.shape}
    if args.kind == "walkup":
        if not args.script:
            raise FacelabError("walkup needs --script FILE")
        with open(args.script) as fh:
            params["script"] = json.load(fh)
    needed = {"simplex_boundary": ["d"], "stacked_sphere": ["d", "n"], "stacked_ball": ["d", "k"],
              "join_ball": ["d", "k"]}.get(args.kind, [])
    missing = [p for p in needed if params.get(p) is None]
    if missing:
        flags = {"d": "--dim", "n": "--vertices", "k": "--facets"}
        raise FacelabError(f"{args.kind} needs {', '.join(flags[m] for m in missing)}")
    K = generate(args.kind, params, args.seed)
    if args.output:
        write_sc(K, args.output, header=f"generated: {args.kind} seed {args.seed}")
    elif not args.json:
        sys.stdout.write(K.to_sc())
    return {"kind": args.kind, "f_vector": list(K.f_vector()), "vertices": K.n, "output": args.output}, True


def cmd_subdivide(args):
    from .surgery import barycentric_subdivision

    K = read_sc(args.file)
    S = barycentric_subdivision(K, args.times)
    if args.output:
        write_sc(S, args.output, header=f"barycentric subdivision x{args.times}")
    elif not args.json:
        sys.stdout.write(S.to_sc())
    return {"times": args.times, "f_vector": list(S.f_vector()), "output": args.output}, True


def cmd_handles(args):
    from .enumerative import h_bar_dprime
    from .surgery import pl_handle_sequence

    K = read_sc(args.file)
    seq = pl_handle_sequence(K, args.field)
    res = seq.to_json()
    res["h_bar_dprime"] = list(h_bar_dprime(K, args.field))
    return res, True


def cmd_verify_suite(args):
    from .acceptance import run_all

    nums = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    results = run_all(nums)
    if not args.json:
        for r in results:
            print(r.line())
            for f in r.failures[:10]:
                print("    " + f)
    return {"criteria": [r.to_json() for r in results],
            "all_passed": all(r.ok for r in results)}, all(r.ok for r in results)


# -- parser -------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="facelab", description="Face numbers and algebra of homology manifolds.")
    p.add_argument("--version", action="version", version=f"facelab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True, field=True):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file", help="input .sc file (one facet per line)")
        if field:
            sp.add_argument("--field", type=_field, default=as_field_spec(DEFAULT_PRIME),
                            help="coefficient field P or P:K (default %(default)s)")
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        sp.set_defaults(func=func)
        return sp

    add("analyze", cmd_analyze, "classify and compute face numbers")
    sp = add("complete", cmd_complete, "cone off the boundary")
    sp.add_argument("-o", "--output", help="write the completion here")
    sp = add("oracle", cmd_oracle, "Artinian reduction by linear algebra")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1)
    sp = add("bounds", cmd_bounds, "g-theorem, Kuhnel-type and weighted Betti checks")
    sp.add_argument("--assume-wlp", action="store_true")
    sp = add("decompose", cmd_decompose, "minimal g2 / minimal g~2 decomposition")
    sp.add_argument("--mode", choices=("g2", "gtilde2"), default="g2")
    sp = add("generate", cmd_generate, "generate a complex", file=False, field=False)
    sp.add_argument("kind", choices=("simplex_boundary", "stacked_sphere", "stacked_ball", "join_ball", "walkup",
                                     "kuhnel_d3_mobius"))
    sp.add_argument("--dim", type=int, help="d: number of vertices of a facet")
    sp.add_argument("--vertices", type=int)
    sp.add_argument("--facets", type=int)
    sp.add_argument("--shape", choices=("random", "long"), default="random")
    sp.add_argument("--script", help="JSON build script for walkup")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp = add("subdivide", cmd_subdivide, "barycentric subdivision", field=False)
    sp.add_argument("--times", type=int, default=1)
    sp.add_argument("-o", "--output")
    add("handles", cmd_handles, "PL handle indices from interior faces")
    sp = add("verify-suite", cmd_verify_suite, "run the acceptance battery", file=False, field=False)
    sp.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")
    return p


def _human(results, indent: str = "") -> None:
    for k, v in results.items():
        if isinstance(v, dict):
            print(f"{indent}{k}:")
            _human(v, indent + "  ")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            print(f"{indent}{k}:")
            for i, item in enumerate(v):
                print(f"{indent}  [{i}]")
                _human(item, indent + "    ")
        else:
            print(f"{indent}{k}: {v}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        results, ok = args.func(args)
    except CHECK_FAILURES as exc:
        print(f"facelab: check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FacelabError as exc:
        print(f"facelab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"facelab: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0
    if args.json:
        rep = make_report(args.command, _config(args), results,
                          input_path=getattr(args, "file", None), timings={"total_s": round(elapsed, 6)})
        print(dumps(rep))
    elif args.command != "verify-suite":
        _human(json.loads(dumps(results)))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
