"""Command line front-end: ``youngbench {verify,campaign,generate,search}``.

Exit codes
----------
verify    0 conditions consistent, 2 inconsistent (suspected bug), 1 input error
campaign  0 no failing check, 1 failures or bad arguments
generate  0 files written, 1 error
search    0 no witness, 2 witness found (escalate), 1 bad arguments
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .campaigns import SUITES, run_campaign
from .conjecture import search_necessity_counterexample
from .errors import YoungBenchError
from .generators import GeneratorConfig, equality_family, opnorm_counterexample, random_pair
from .linalg import Tolerance
from .matrix_io import load_matrix, save_matrix
from .norms import parse_norms
from .reports import dump_json, manifest, rows_to_csv, write_text
from .young import ConjugatePair, check_equivalence

FAMILIES = ("random", "equality", "opnorm-counterexample")


def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _error(msg):
    print(f"youngbench: error: {msg}", file=sys.stderr)


def cmd_verify(args):
    try:
        a = load_matrix(args.a)
        b = load_matrix(args.b)
        cp = ConjugatePair(args.p)
        norms = parse_norms(args.norms)
        tol = Tolerance(args.tol_rel, args.tol_abs)
        report = check_equivalence(a, b, cp, norms, tol)
    except (YoungBenchError, ValueError, OSError) as exc:
        _error(f"{type(exc).__name__}: {exc}")
        return 1
    params = {
        "a": str(args.a),
        "b": str(args.b),
        "p": cp.p,
        "norms": [d.label for d in norms],
        "tol_rel": args.tol_rel,
        "tol_abs": args.tol_abs,
    }
    doc = {
        "manifest": manifest("verify", params, args.seed),
        "toolVersion": __version__,
        "seed": args.seed,
        "report": report.to_dict(),
    }
    write_text(dump_json(doc), args.out)
    if not report.overall_consistent:
        _error("conditions disagree; this contradicts the equivalence theorem and indicates a bug")
        return 2
    return 0


def cmd_campaign(args):
    try:
        dims = _ints(args.dim) if args.dim else None
        p_list = _floats(args.p) if args.p else None
        summary = run_campaign(args.suite, args.trials, args.seed, dims, p_list)
    except (YoungBenchError, ValueError) as exc:
        _error(f"{type(exc).__name__}: {exc}")
        return 1
    params = {"suite": args.suite, "trials": args.trials, "dims": dims, "p": p_list}
    doc = {"manifest": manifest("campaign", params, args.seed), "summary": summary.to_dict()}
    write_text(dump_json(doc), args.out)
    if args.csv:
        Path(args.csv).write_text(rows_to_csv(summary.rows))
    print(
        f"{summary.suite}: {summary.passes}/{len(summary.rows)} checks passed in {summary.elapsed:.2f}s",
        file=sys.stderr,
    )
    return 0 if summary.ok else 1


def cmd_generate(args):
    try:
        if args.family == "opnorm-counterexample":
            a, b, cp = opnorm_counterexample(args.dim)
            p = cp.p
        else:
            cfg = GeneratorConfig(
                seed=args.seed, dimension=args.dim, decay=args.decay, decay_param=args.decay_param, p=args.p
            )
            a, b = random_pair(cfg) if args.family == "random" else equality_family(cfg)
            p = cfg.p
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        save_matrix(a, out / "a.json")
        save_matrix(b, out / "b.json")
        params = {
            "family": args.family,
            "dim": args.dim,
            "p": p,
            "decay": args.decay,
            "decay_param": args.decay_param,
        }
        (out / "manifest.json").write_text(dump_json(manifest("generate", params, args.seed)))
    except (YoungBenchError, ValueError, OSError) as exc:
        _error(f"{type(exc).__name__}: {exc}")
        return 1
    return 0


def cmd_search(args):
    try:
        dims = _ints(args.dim)
        cfg = GeneratorConfig(
            seed=args.seed, dimension=dims[0], decay=args.decay, decay_param=args.decay_param, p=args.p
        )
        result = search_necessity_counterexample(
            cfg,
            args.trials,
            dims=dims,
            b_kind=args.b_kind,
            z_kind=args.z_kind,
            start=args.start,
            iterations=args.iterations,
            start_noise=args.start_noise,
            workers=args.workers,
        )
    except (YoungBenchError, ValueError) as exc:
        _error(f"{type(exc).__name__}: {exc}")
        return 1
    params = {"trials": args.trials, "dims": dims, "p": cfg.p, **result.settings}
    doc = {"manifest": manifest("search", params, args.seed), "result": result.to_dict()}
    write_text(dump_json(doc), args.out)
    if result.witness is not None:
        _error(f"witness found (violation {result.witness_violation:.3e}); replay with --seed {args.seed}")
        return 2
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="youngbench", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="decide the four equivalent conditions for a pair of matrices")
    v.add_argument("a", help="matrix JSON file for a")
    v.add_argument("b", help="matrix JSON file for b")
    v.add_argument("--p", type=float, default=2.0)
    v.add_argument("--norms", default="op,schatten:1,schatten:2,dyadic")
    v.add_argument("--tol-rel", type=float, default=1e-9)
    v.add_argument("--tol-abs", type=float, default=1e-12)
    v.add_argument("--seed", type=int, default=0, help="recorded in the report only")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("campaign", help="run a seeded property suite")
    c.add_argument("suite", help=", ".join(SUITES))
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--dim", default=None, help="dimension list, e.g. 2..8 or 2,4,6")
    c.add_argument("--p", default=None, help="comma-separated exponents")
    c.add_argument("--out", default=None, help="summary JSON (stdout when omitted)")
    c.add_argument("--csv", default=None, help="per-check CSV table")
    c.set_defaults(func=cmd_campaign)

    g = sub.add_parser("generate", help="write an instance pair as matrix JSON")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--dim", type=int, default=4)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--p", type=float, default=2.0)
    g.add_argument("--decay", choices=("none", "geometric", "powerlaw"), default="none")
    g.add_argument("--decay-param", type=float, default=None)
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("search", help="counterexample search for necessity of the three conditions")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dim", default="2..6")
    s.add_argument("--p", type=float, default=2.0)
    s.add_argument("--decay", choices=("none", "geometric", "powerlaw"), default="geometric")
    s.add_argument("--decay-param", type=float, default=0.5)
    s.add_argument("--b-kind", choices=("general", "psd_diagonal"), default="general")
    s.add_argument("--z-kind", choices=("contraction", "unitary"), default="contraction")
    s.add_argument("--start", choices=("random", "feasible", "mixed"), default="mixed")
    s.add_argument("--start-noise", type=float, default=0.0)
    s.add_argument("--iterations", type=int, default=200)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
