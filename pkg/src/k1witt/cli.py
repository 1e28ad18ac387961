"""JSON command-line front end.

Every invocation prints exactly one JSON document on stdout.  Exit codes:
0 success, 1 malformed input, 2 a library precondition was violated.
"""
from __future__ import annotations

import argparse
import json
import sys

from k1witt import equivariant as eq
from k1witt import finite_field as ff
from k1witt import k1_ring as k1
from k1witt import quad_forms as qf
from k1witt import verify
from k1witt.padic import default_precision


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc})") from None


def _gram(args, attr: str = "gram") -> qf.GramForm:
    data = _load_json(getattr(args, attr), attr)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError(f"{attr}: expected an array of arrays of integers")
    return qf.GramForm.from_json(data, args.l)


def _element(args) -> k1.SphereElement:
    try:
        return k1.parse_element(args.x, args.p, args.prec)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _group(args) -> eq.FiniteGroup:
    spec = _load_json(args.group, "group")
    if not isinstance(spec, dict):
        raise InputError("group: expected an object")
    return eq.FiniteGroup.from_json(spec)


def cmd_ff_sqclass(args):
    return {"class": ff.square_class(args.x, args.l)}


def cmd_ff_nonsquare(args):
    return {"nonsquare": ff.smallest_nonsquare(args.l).value}


def cmd_gw_classify(args):
    return qf.class_of(_gram(args)).to_json()


def cmd_gw_diag(args):
    diag, basis = qf.diagonalize(_gram(args))
    return {"diag": diag, "basis": basis.tolist()}


def cmd_gw_equiv(args):
    f, g = _gram(args), _gram(args, "other")
    test = qf.brute_force_equivalent if args.brute else qf.equivalent
    return {"equivalent": bool(test(f, g))}


def cmd_eq_push(args):
    group = _group(args)
    f = _gram(args)
    if args.rep is None:
        rep = eq.Representation.trivial(group, args.l, f.dim)
    else:
        rep = eq.Representation(group, args.l, _load_json(args.rep, "rep"))
    out = eq.pushforward(eq.EquivariantForm(rep, f))
    return {"gram": out.to_json(), "class": qf.class_of(out).to_json()}


def cmd_eq_card(args):
    return eq.cardinality_via_forms(_group(args), args.l).to_json()


def cmd_eq_alpha2(args):
    out = eq.alpha2_forms(_gram(args))
    return {"gram": out.to_json(), "class": qf.class_of(out).to_json()}


def cmd_k1_card(args):
    data = _load_json(args.space, "space")
    if not isinstance(data, (dict, list)):
        raise InputError("space: expected an object with 'components'")
    try:
        space = k1.PiFiniteSpace.from_json(data, args.p)
    except (KeyError, TypeError) as exc:
        raise InputError(f"space: {exc}") from None
    return k1.element_to_json(k1.k1_cardinality(space, args.prec))


def _unary(op):
    def run(args):
        return k1.element_to_json(op(_element(args)))
    return run


def cmd_k1_nu(args):
    return k1.element_to_json(k1.nu(qf.GWClass(args.rank, args.e), args.l, args.prec))


def cmd_k1_encard(args):
    return {"value": k1.en_module_cardinality(args.n, args.k, args.p)}


def cmd_verify(args):
    try:
        return verify.run(args.suite, args.seed)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k1witt", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group_cmd", required=True)

    def sub(parent, name, func, **kw):
        p = parent.add_parser(name, **kw)
        p.set_defaults(func=func)
        return p

    prec = dict(type=int, default=None, help="p-adic digits (default $K1WITT_PREC or 64)")

    ffp = top.add_parser("ff").add_subparsers(dest="cmd", required=True)
    p = sub(ffp, "sqclass", cmd_ff_sqclass)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p = sub(ffp, "nonsquare", cmd_ff_nonsquare)
    p.add_argument("--l", type=int, required=True)

    gwp = top.add_parser("gw").add_subparsers(dest="cmd", required=True)
    for name, func in (("classify", cmd_gw_classify), ("diag", cmd_gw_diag)):
        p = sub(gwp, name, func)
        p.add_argument("--l", type=int, required=True)
        p.add_argument("--gram", required=True)
    p = sub(gwp, "equiv", cmd_gw_equiv)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--gram", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--brute", action="store_true")

    eqp = top.add_parser("eq").add_subparsers(dest="cmd", required=True)
    p = sub(eqp, "push", cmd_eq_push)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--rep", default=None, help="one matrix per group element; default trivial")
    p.add_argument("--gram", required=True)
    p = sub(eqp, "card", cmd_eq_card)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--group", required=True)
    p = sub(eqp, "alpha2", cmd_eq_alpha2)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--gram", required=True)

    k1p = top.add_parser("k1").add_subparsers(dest="cmd", required=True)
    p = sub(k1p, "card", cmd_k1_card)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--prec", **prec)
    for name, op in (("alpha", k1.alpha), ("delta", k1.delta), ("theta", k1.theta),
                     ("log", k1.rezk_log)):
        p = sub(k1p, name, _unary(op))
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--x", required=True)
        p.add_argument("--prec", **prec)
    p = sub(k1p, "nu", cmd_k1_nu)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--e", type=int, choices=(0, 1), required=True)
    p.add_argument("--prec", **prec)
    p = sub(k1p, "encard", cmd_k1_encard)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub(top, "verify", cmd_verify)
    p.add_argument("--suite", default=None, help=f"one of {sorted(verify.SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(obj, stream) -> None:
    stream.write(json.dumps(obj, separators=(",", ":")) + "\n")


def main(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "prec", "absent") is None:
            args.prec = default_precision()
        result = args.func(args)
    except InputError as exc:
        _emit({"error": {"code": "malformed_input", "message": str(exc)}}, stdout)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        _emit({"error": {"code": "precondition", "message": str(exc)}}, stdout)
        return 2
    _emit(result, stdout)
    if args.func is cmd_verify and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
