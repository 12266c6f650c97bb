"""``entax`` command line.

Exit codes: 0 success, 1 the query ran but the answer is negative (not
convertible, no catalyst, not contained, a must-pass axiom failed),
2 bad input, 3 type-class budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .asymptotic import Direction, default_budget, estimate_E, rate_frontier
from .axioms import HarnessConfig, all_must_pass_clean, check_internal_state, run_axiom_suite
from .catalysis import Catalyst, convertible_with_catalyst, search_catalyst
from .errors import BudgetExceeded, EntaxError, NotFound
from .io import StateFormatError, file_digest, load_state
from .majorization import convertible_single_copy
from .multipartite import ghz_counterexample

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _dims(text: str):
    parts = text.replace("-", ",").split(",")
    if len(parts) == 1:
        return (2, int(parts[0]))
    lo, hi = (int(p) for p in parts)
    return (lo, hi)


def _qubit(text: Optional[str]):
    if text is None:
        return None
    return [complex(x.strip()) for x in text.split(",")]


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write primary output here instead of stdout")
    common.add_argument("--manifest", help="write a JSON run manifest here")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--tol", type=float, default=1e-9)

    p = argparse.ArgumentParser(prog="entax", description="LOCC convertibility and entanglement rates for pure states")
    p.add_argument("--version", action="version", version=f"entax {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("convert-check", parents=[common], help="single-copy or catalysed convertibility a -> b")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--catalyst", help="state file for a catalyst c (tests a+c -> b+c)")

    s = sub.add_parser("catalyst-search", parents=[common], help="search for a catalyst enabling a -> b")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--max-dim", type=int, default=4)
    s.add_argument("--grid-points", type=int, default=51)
    s.add_argument("--refine-iters", type=int, default=200)

    s = sub.add_parser("rate-frontier", parents=[common], help="threshold m for n = 1..nmax, as CSV")
    s.add_argument("--a", required=True)
    s.add_argument("--e", required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--eps", type=float, default=0.0)
    s.add_argument("--direction", choices=[d.value for d in Direction], default="dilution")

    s = sub.add_parser("estimate-e", parents=[common], help="best dilution ratio m/n up to n copies")
    s.add_argument("--a", required=True)
    s.add_argument("--e", required=True)
    s.add_argument("--eps", type=float, default=0.0)
    s.add_argument("--n", type=int, default=32)

    s = sub.add_parser("axiom-suite", parents=[common], help="run the randomised axiom battery")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--dims", type=_dims, default=(2, 6), help="e.g. 2-6")
    s.add_argument("--epsilon", type=float, default=0.05)
    s.add_argument("--n", type=int, default=32)
    s.add_argument("--pairs", type=int, default=10_000)
    s.add_argument("--only", nargs="*", help="restrict to these axiom ids")

    s = sub.add_parser("multipartite-demo", parents=[common], help="tri-partite incomparability report")
    s.add_argument("--psi1", help="qubit 1 of b as 'x,y' (complex literals), default 1,0")
    s.add_argument("--psi3", help="qubit 3 of c as 'x,y', default 1,0")

    s = sub.add_parser("internal-check", parents=[common], help="least n with x contained in n copies of e")
    s.add_argument("--e", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--nmax", type=int, default=16)
    return p


def _cmd_convert_check(args, inputs):
    a, b = load_state(args.a), load_state(args.b)
    inputs += [args.a, args.b]
    if args.catalyst:
        inputs.append(args.catalyst)
        v = convertible_with_catalyst(a, b, Catalyst(load_state(args.catalyst)), args.tol)
    else:
        v = convertible_single_copy(a, b, args.tol)
    return _json(v.to_dict()), EXIT_OK if v.convertible else EXIT_NEGATIVE


def _cmd_catalyst_search(args, inputs):
    a, b = load_state(args.a), load_state(args.b)
    inputs += [args.a, args.b]
    try:
        c = search_catalyst(a, b, args.max_dim, args.grid_points, args.refine_iters, args.tol)
    except NotFound as exc:
        out = {"found": False, "spectrum": None, "margin": exc.best_margin, "evaluations": exc.evaluations}
        return _json(out), EXIT_NEGATIVE
    out = {"found": True, "spectrum": list(c.spectrum.probs), "margin": c.margin,
           "evaluations": c.evaluations, "provenance": c.provenance.value}
    return _json(out), EXIT_OK


def _cmd_rate_frontier(args, inputs):
    a, e = load_state(args.a), load_state(args.e)
    inputs += [args.a, args.e]
    front = rate_frontier(a, e, args.nmax, args.eps, args.direction, workers=args.threads)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "m", "m_over_n", "direction", "epsilon", "entropy_ref", "budget_exceeded"])
    for pt in front.points:
        w.writerow([pt.n, "" if pt.m is None else pt.m, "" if pt.m is None else repr(pt.m / pt.n),
                    pt.direction.value, repr(pt.epsilon), repr(front.reference_entropy_ratio),
                    str(pt.budget_exceeded).lower()])
    code = EXIT_BUDGET if any(pt.budget_exceeded for pt in front.points) else EXIT_OK
    return buf.getvalue(), code


def _cmd_estimate_e(args, inputs):
    a, e = load_state(args.a), load_state(args.e)
    inputs += [args.a, args.e]
    est = estimate_E(a, e, args.eps, args.n, workers=args.threads)
    out = {"m": est.m, "n": est.n, "m_over_n": est.ratio, "entropy_ratio": est.reference, "epsilon": args.eps}
    return _json(out), EXIT_OK


def _cmd_axiom_suite(args, inputs):
    cfg = HarnessConfig(dims=args.dims, samples=args.samples, seed=args.seed, tol=args.tol,
                        n=args.n, epsilon=args.epsilon, pairs=args.pairs)
    reports = run_axiom_suite(cfg, only=args.only)
    text = "".join(r.to_json() + "\n" for r in reports)
    return text, EXIT_OK if all_must_pass_clean(reports) else EXIT_NEGATIVE


def _cmd_multipartite_demo(args, inputs):
    return _json(ghz_counterexample(_qubit(args.psi1), _qubit(args.psi3), args.tol)), EXIT_OK


def _cmd_internal_check(args, inputs):
    e, x = load_state(args.e), load_state(args.x)
    inputs += [args.e, args.x]
    res = check_internal_state(e, x, args.nmax)
    return _json({"contained": res.contained, "n": res.n}), EXIT_OK if res.contained else EXIT_NEGATIVE


COMMANDS = {
    "convert-check": _cmd_convert_check,
    "catalyst-search": _cmd_catalyst_search,
    "rate-frontier": _cmd_rate_frontier,
    "estimate-e": _cmd_estimate_e,
    "axiom-suite": _cmd_axiom_suite,
    "multipartite-demo": _cmd_multipartite_demo,
    "internal-check": _cmd_internal_check,
}


def _write_manifest(path, args, argv, inputs, elapsed, code):
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(args).items()
              if k not in ("out", "manifest")}
    manifest = {
        "subcommand": args.command,
        "argv": list(argv),
        "params": params,
        "seed": args.seed,
        "version": __version__,
        "type_class_budget": default_budget(),
        "wall_clock_seconds": elapsed,
        "exit_code": code,
        "inputs": {str(p): file_digest(p) for p in inputs},
    }
    Path(path).write_text(_json(manifest))


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    inputs: List[str] = []
    t0 = time.perf_counter()
    try:
        text, code = COMMANDS[args.command](args, inputs)
    except BudgetExceeded as exc:
        print(f"entax: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (StateFormatError, EntaxError, ValueError, OSError, KeyError) as exc:
        print(f"entax: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.manifest:
        _write_manifest(args.manifest, args, argv, inputs, time.perf_counter() - t0, code)
    return code


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
