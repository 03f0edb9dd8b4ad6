"""Command-line entry point; every subcommand writes JSON lines."""

import argparse
import json
import sys

from . import cm, groups, harness
from . import jacobian as jac
from .errors import Exhausted, G2CMError, NotCyclic


def int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="g2cm", description="Genus-2 Jacobians over F_p and CM Frobenius checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze-curve", help="point counts, P(X) and group structure of y^2=f(x)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int_list, required=True, help="c0,c1,...,c5[,c6] lowest degree first")
    p.add_argument("--ell", type=int_list)
    p.add_argument("--enum-bound", type=int, default=jac.ENUM_BOUND)

    p = sub.add_parser("analyze-cm", help="Frobenius polynomial and theorem verdicts for CM data")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int_list, required=True, help="c1,c2,c3,c4")
    p.add_argument("--ell", type=int_list)

    p = sub.add_parser("sweep", help="enumerate CM parameter tuples with prime norm")
    p.add_argument("--D-max", type=int, required=True)
    p.add_argument("--ab-max", type=int, required=True)
    p.add_argument("--c-max", type=int, required=True)
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("--suite", choices=["ed1", "c2", "geometric", "sylow-gen"], required=True)
    p.add_argument("--ell-max", type=int, default=31)
    p.add_argument("--curves", type=int, default=30)
    p.add_argument("--p-max", type=int, default=61)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sylow-gen", help="random search for an ell-Sylow generator")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int_list, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--max-trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def emit(record, out):
    out.write(json.dumps(record, sort_keys=False) + "\n")


def run(args, out):
    if args.command == "analyze-curve":
        emit(harness.analyze_curve(args.p, args.f, args.ell, args.enum_bound), out)
        return 0
    if args.command == "analyze-cm":
        if len(args.c) != 4:
            raise G2CMError("--c needs exactly four integers")
        K = cm.CMField(args.D, args.a, args.b)
        emit(harness.analyze_cm_instance(K, cm.FrobeniusElement(*args.c), args.ell), out)
        return 0
    if args.command == "sweep":
        cfg = harness.SweepConfig(args.D_max, args.ab_max, args.c_max, args.p_max,
                                  args.seed, args.threads)
        for record in harness.sweep_cm_params(cfg):
            emit(record, out)
        return 0
    if args.command == "verify":
        summary = harness.verify_corpus(args.suite, args.ell_max, args.curves, args.p_max,
                                        args.trials, args.seed)
        emit(summary, out)
        return 0 if summary["ok"] else 1
    if args.command == "sylow-gen":
        c = jac.Curve(args.p, tuple(args.f))
        record = {"input": {"p": args.p, "f": list(c.f), "ell": args.ell}, "seed": args.seed}
        try:
            found = groups.sylow_generator_search(c, args.ell, args.max_trials, args.seed)
        except NotCyclic:
            record["status"] = "not-cyclic"
        except Exhausted:
            record["status"] = "exhausted"
        else:
            record.update(status="found", generator=[list(found.generator.u),
                                                     list(found.generator.v)],
                          order=found.order, trials=found.trials)
        emit(record, out)
        return 0 if record["status"] == "found" else 1
    raise AssertionError(args.command)  # pragma: no cover


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = open(args.out, "w", encoding="utf-8") if getattr(args, "out", None) else sys.stdout
    try:
        return run(args, out)
    except G2CMError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
