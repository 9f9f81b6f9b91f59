"""Command-line driver.

Exit codes: 0 success (SAT, agreement, no violations), 1 negative verdict,
2 input or parse error, 3 enumeration budget exceeded. Errors are reported as
one line ``sepmodels: error: <kind>: <reason>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import serialize as ser
from .errors import BudgetExceeded, InputError, ParseError
from .groups import (act_on_measured_partition, act_on_nom_store, act_on_nom_subst,
                     act_on_random_subst, correspondence_witness, homogeneity_auto)
from .monoid import INSTANCES, buggy_partition_rm, check_laws
from .prob import (DEFAULT_BUDGET, make_decoder, sat_prob_m1, sat_prob_m2,
                   translate_prob_m1_to_m2)
from .store import sat_store_m1, sat_store_m2, translate_store_m1_to_m2
from .syntax import parse_prop

EPILOG = """\
proposition syntax:  x |-> 3   X ~ ber(1/2)   X ~ {0: 1/4, 1: 3/4}   true
  '*' binds tighter than '/\\', which binds tighter than '\\/'; all are
  left-associative; use parentheses to override.
"""


class _Failure(Exception):
    def __init__(self, kind: str, message: str, code: int):
        super().__init__(message)
        self.kind, self.code = kind, code


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _Failure("io", f"cannot read {path}: {exc.strerror}", 2) from exc
    except json.JSONDecodeError as exc:
        raise _Failure("input", f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}", 2) from exc


def _load_prop(text: str, kind: str):
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    return parse_prop(text, kind)


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _verdict(ok: bool) -> str:
    return "SAT" if ok else "UNSAT"


def _check(args, model: str, prop, data) -> bool:
    if model == "store-m1":
        shape, store, subst = ser.store_m1_from_json(data)
        return sat_store_m1(shape, store, subst, prop)
    if model == "store-m2":
        store, subst = ser.store_m2_from_json(data)
        return sat_store_m2(store, subst, prop)
    if model == "prob-m1":
        space, rvs = ser.prob_m1_from_json(data)
        return sat_prob_m1(space, rvs, prop, budget=args.budget)
    part, rvs = ser.prob_m2_from_json(data)
    return sat_prob_m2(part, rvs, prop, budget=args.budget, literal_dist=args.literal_dist)


def cmd_check(args) -> int:
    prop = _load_prop(args.prop, args.model.split("-")[0])
    ok = _check(args, args.model, prop, _load_json(args.instance))
    _emit(args, _verdict(ok), {"model": args.model, "verdict": _verdict(ok)})
    return 0 if ok else 1


def _translate(args, logic: str, data):
    if logic == "store":
        shape, store, subst = ser.store_m1_from_json(data)
        return ser.store_m2_to_json(*translate_store_m1_to_m2(shape, store, subst))
    space, rvs = ser.prob_m1_from_json(data)
    dec = ser.decoder_from_json(_load_json(args.dec)) if args.dec else make_decoder(space.omega)
    return ser.prob_m2_to_json(*translate_prob_m1_to_m2(space, rvs, dec))


def cmd_translate(args) -> int:
    print(json.dumps(_translate(args, args.logic, _load_json(args.instance)), indent=2))
    return 0


def cmd_equiv(args) -> int:
    prop = _load_prop(args.prop, args.logic)
    data = _load_json(args.instance)
    first = _check(args, f"{args.logic}-m1", prop, data)
    second = _check(args, f"{args.logic}-m2", prop, _translate(args, args.logic, data))
    agree = first == second
    text = f"model1: {_verdict(first)}\nmodel2: {_verdict(second)}\nagree: {'yes' if agree else 'no'}"
    _emit(args, text, {"model1": _verdict(first), "model2": _verdict(second), "agree": agree})
    return 0 if agree else 1


def cmd_laws(args) -> int:
    if args.cases < 0:
        raise _Failure("input", "--cases must be nonnegative", 2)
    if args.instance == "finprob":
        inst = INSTANCES["finprob"]([f"w{i}" for i in range(args.omega_size)])
    elif args.instance == "buggy-partition":
        inst = buggy_partition_rm()
    else:
        inst = INSTANCES[args.instance]()
    report = check_laws(inst, args.seed, args.cases)
    lines = [report.summary()]
    lines += [f"  {v.law} (case {v.case}): {', '.join(v.elements)}" for v in report.violations]
    _emit(args, "\n".join(lines), report.to_json())
    return 0 if report.passed else 1


def _show_affine(pi) -> str:
    return "\n".join(f"[{a}, {b}) -> [{c}, {d})" for (a, b), (c, d) in pi.pieces)


def cmd_homogeneity(args) -> int:
    p = ser.surjection_from_json(_load_json(args.surjection))
    dec = ser.decoder_from_json(_load_json(args.dec))
    dec_prime = ser.decoder_from_json(_load_json(args.dec_prime))
    pi = homogeneity_auto(p, dec_prime, dec)
    _emit(args, _show_affine(pi), ser.pwaffine_to_json(pi))
    return 0


def cmd_witness_fix(args) -> int:
    a = ser.partition_from_json(_load_json(args.a))
    b = ser.partition_from_json(_load_json(args.b))
    pi = correspondence_witness(a, b)
    _emit(args, _show_affine(pi), ser.pwaffine_to_json(pi))
    return 0


def cmd_act(args) -> int:
    data = _load_json(args.on)
    by = _load_json(args.by) if args.by else None
    if args.group == "perm":
        if by is None and "perm" not in data:
            raise _Failure("input", "no permutation: give --by or a 'perm' field", 2)
        pi = ser.finperm_from_json(by if by is not None else data["perm"])
        store, subst = ser.store_m2_from_json(data)
        out = ser.store_m2_to_json(act_on_nom_store(store, pi), act_on_nom_subst(subst, pi))
    else:
        if by is None and "affine" not in data:
            raise _Failure("input", "no automorphism: give --by or an 'affine' field", 2)
        pi = ser.pwaffine_from_json(by if by is not None else data["affine"])
        part, rvs = ser.prob_m2_from_json(data)
        out = ser.prob_m2_to_json(act_on_measured_partition(part, pi), act_on_random_subst(rvs, pi))
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="largest atom count for which '*' is decided (default %(default)s)")
    budget.add_argument("--literal-dist", action="store_true",
                        help="Model 2 only: a level set must be a single cell, not a union")

    parser = argparse.ArgumentParser(prog="sepmodels", epilog=EPILOG,
                                     formatter_class=argparse.RawDescriptionHelpFormatter,
                                     description="Decide and cross-check separation-logic models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, budget], help="decide satisfaction in one model")
    p.add_argument("model", choices=("store-m1", "store-m2", "prob-m1", "prob-m2"))
    p.add_argument("--prop", required=True, help="proposition text or a file containing it")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("translate", parents=[common], help="print the Model-2 image of an instance")
    p.add_argument("logic", choices=("store", "prob"))
    p.add_argument("--instance", required=True)
    p.add_argument("--dec", help="decoder file (prob only; default: equal-length cells)")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("equiv", parents=[common, budget], help="compare Model 1 with translated Model 2")
    p.add_argument("logic", choices=("store", "prob"))
    p.add_argument("--prop", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--dec", help="decoder file (prob only)")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("laws", parents=[common], help="check resource-monoid laws")
    p.add_argument("instance", choices=(*INSTANCES, "buggy-partition"),
                   help="buggy-partition is a deliberately broken canary")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--cases", type=int, default=500)
    p.add_argument("--omega-size", type=int, default=8, help="finprob sample-space size")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("homogeneity", parents=[common], help="automorphism refining a surjection")
    p.add_argument("--surjection", required=True)
    p.add_argument("--dec", required=True, help="decoder of the target space")
    p.add_argument("--dec-prime", required=True, help="decoder of the source space")
    p.set_defaults(func=cmd_homogeneity)

    p = sub.add_parser("witness-fix", parents=[common], help="automorphism fixing A but not B")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_witness_fix)

    p = sub.add_parser("act", parents=[common], help="apply a group element to an instance")
    p.add_argument("group", choices=("perm", "affine"))
    p.add_argument("--on", required=True)
    p.add_argument("--by", help="group element file (overrides the instance's own field)")
    p.set_defaults(func=cmd_act)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        kind, message, code = exc.kind, str(exc), exc.code
    except ParseError as exc:
        kind, message, code = "parse", str(exc), 2
    except InputError as exc:
        kind, message, code = "input", str(exc), 2
    except BudgetExceeded as exc:
        kind, message, code = "budget", str(exc), 3
    print(f"sepmodels: error: {kind}: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
