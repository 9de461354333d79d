"""Command-line interface.

Exit codes: 0 prediction and oracle agree (or informational command
succeeded), 2 at least one disagreement, 64 usage error, 65 domain error,
66 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import criteria, sweep as sweep_mod
from .decompose import lemma31_extract
from .directions import check_complementarity
from .errors import PPKitError
from .families import (
    closed_form_components,
    eval_family,
    family_for_theorem,
    theorem_info,
)
from .gf import build_field
from .tower import build_tower, valid_us

EXIT_OK = 0
EXIT_DISAGREE = 2
EXIT_USAGE = 64
EXIT_DOMAIN = 65
EXIT_IO = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_field_args(p):
    p.add_argument("--p", type=int, required=True, help="characteristic")
    p.add_argument("--m", type=int, required=True, help="extension degree of F_q")
    p.add_argument("--u", type=int, default=None, help="override the tower's u")


def _add_param_args(p):
    p.add_argument("--theorem", required=True, help="theorem id, e.g. 3.6")
    p.add_argument("--delta", type=int, default=None, help="delta encoding in F_{q^2}")
    p.add_argument(
        "--trdelta",
        type=int,
        default=None,
        help="base-field encoding of Tr(delta); picks the least matching delta",
    )
    p.add_argument("--gamma", type=int, default=None, help="gamma encoding")
    p.add_argument("--i", type=int, default=None, help="exponent parameter i")
    p.add_argument("--d", type=int, default=None, help="odd extension degree d")


def build_parser() -> _Parser:
    ap = _Parser(prog="ppkit", description="permutation family toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    fi = sub.add_parser("field-info", parents=[], help="describe F_q and its tower")
    _add_field_args(fi)

    ck = sub.add_parser("check", help="compare criterion and oracle at one point")
    _add_field_args(ck)
    _add_param_args(ck)

    sw = sub.add_parser("sweep", help="exhaustive (delta, gamma) sweep")
    _add_field_args(sw)
    _add_param_args(sw)
    sw.add_argument("--plan", default=None, help="JSON plan file; flags override it")
    sw.add_argument(
        "--gamma-domain",
        choices=["stated", "full"],
        default="stated",
        help="restrict gamma to the theorem's hypothesis or probe all of F_{q^2}",
    )
    sw.add_argument(
        "--probe-hypotheses",
        action="store_true",
        help="alias for --gamma-domain full",
    )
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--out", default=None, help="output path (default stdout)")
    sw.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")

    de = sub.add_parser("decompose", help="closed-form vs extracted components")
    _add_field_args(de)
    _add_param_args(de)

    di = sub.add_parser("directions", help="direction/permuting-slope duality")
    _add_field_args(di)
    _add_param_args(di)
    return ap


def _resolve_delta(tower, args) -> int:
    if args.delta is not None:
        return args.delta
    if args.trdelta is not None:
        for delta in range(tower.order):
            if tower.trace(delta) == args.trdelta:
                return delta
        raise PPKitError(f"no delta has trace {args.trdelta}")
    return 0


def _cmd_field_info(args) -> int:
    base = build_field(args.p, args.m)
    tower = build_tower(base, u=args.u)
    info = {
        "p": base.p,
        "m": base.m,
        "q": base.q,
        "modulus": list(base.modulus),
        "tower_kind": tower.kind,
        "tower_u": tower.u,
        "tower_order": tower.order,
        "valid_us": valid_us(base),
    }
    print(json.dumps(info, indent=2))
    return EXIT_OK


def _cmd_check(args) -> int:
    tower = build_tower(build_field(args.p, args.m), u=args.u)
    delta = _resolve_delta(tower, args)
    if args.gamma is None:
        raise PPKitError("check requires --gamma")
    rec = sweep_mod.check_single(
        args.theorem, args.p, args.m, delta, args.gamma,
        u=args.u, i=args.i, d=args.d,
    )
    print(json.dumps(rec.serialize(), indent=2))
    return EXIT_OK if rec.agree else EXIT_DISAGREE


def _cmd_sweep(args) -> int:
    probe = args.probe_hypotheses or args.gamma_domain == "full"
    if args.plan:
        plan = sweep_mod.SweepPlan.from_file(
            args.plan,
            tid=args.theorem, p=args.p, m=args.m, u=args.u,
            i=args.i, d=args.d,
            probe_hypotheses=probe or None,
            workers=args.workers if args.workers != 1 else None,
        )
    else:
        plan = sweep_mod.SweepPlan(
            tid=args.theorem, p=args.p, m=args.m, u=args.u,
            i=args.i, d=args.d, probe_hypotheses=probe, workers=args.workers,
        )
    records = sweep_mod.run_plan(plan)
    try:
        sweep_mod.write_records(records, args.out or sys.stdout, args.format)
    except OSError as exc:
        print(f"ppkit: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    summary = sweep_mod.summarize(records)
    print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK if summary["disagreements"] == 0 else EXIT_DISAGREE


def _cmd_decompose(args) -> int:
    tower = build_tower(build_field(args.p, args.m), u=args.u)
    delta = _resolve_delta(tower, args)
    gamma = args.gamma if args.gamma is not None else 1
    spec = family_for_theorem(args.theorem, delta, gamma, i=args.i, d=args.d)
    extracted = lemma31_extract(spec, tower)
    closed = closed_form_components(
        args.theorem, tower, tower.elem(delta), tower.elem(gamma), i=args.i
    )
    match = closed.same_values(extracted)
    print(
        json.dumps(
            {
                "theorem": args.theorem,
                "delta": delta,
                "gamma": gamma,
                "closed_form": closed.serialize(),
                "extracted": extracted.serialize(),
                "values_match": match,
            },
            indent=2,
        )
    )
    return EXIT_OK if match else EXIT_DISAGREE


def _cmd_directions(args) -> int:
    tower = build_tower(build_field(args.p, args.m), u=args.u)
    delta = _resolve_delta(tower, args)
    gamma = args.gamma if args.gamma is not None else 0
    info = theorem_info(args.theorem)
    # duality is checked for the family with its linear part removed
    spec = family_for_theorem(args.theorem, delta, 0, i=args.i, d=args.d)
    f = lambda e: eval_family(spec, tower, e).enc
    report = check_complementarity(f, tower)
    out = {
        "theorem": args.theorem,
        "delta": delta,
        "direction_count": len(report.directions),
        "permuting_count": len(report.permuting),
        "complementary": report.complementary,
        "sizes_sum_to_field": report.sizes_sum_to_field,
    }
    if gamma:
        out["gamma_permutes"] = gamma in report.permuting
    print(json.dumps(out, indent=2))
    return EXIT_OK if report.complementary else EXIT_DISAGREE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "field-info": _cmd_field_info,
        "check": _cmd_check,
        "sweep": _cmd_sweep,
        "decompose": _cmd_decompose,
        "directions": _cmd_directions,
    }
    try:
        return handlers[args.cmd](args)
    except PPKitError as exc:
        print(f"ppkit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"ppkit: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
