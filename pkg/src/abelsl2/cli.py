"""Command-line entry point: ``abelsl2 {fourier,act,compose,decompose,suite}``.

Exit codes: 0 success, 1 failed check or math error, 2 usage error,
3 dimension guard.
"""

import argparse
import json
import sys
from fractions import Fraction

from abelsl2 import abvar, corr
from abelsl2.abvar import PolarizedContext
from abelsl2.action import act_general
from abelsl2.errors import AbelSl2Error, DimensionGuard
from abelsl2.expr import ExprError, format_class, format_rational, parse
from abelsl2.lefschetz import primitive_decomposition
from abelsl2.sl2rep import GroupElement
from abelsl2.suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text, what):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def parse_matrix(text):
    """``"a,b;c,d"`` with rational entries."""
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise UsageError(f"matrix must look like 'a,b;c,d', got {text!r}")
    try:
        entries = [[Fraction(x.strip()) for x in r] for r in rows]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad matrix entry in {text!r}") from None
    try:
        return GroupElement.from_rows(entries)
    except (ValueError, AbelSl2Error) as exc:
        raise UsageError(str(exc)) from None


def _context(args):
    ctype = _ints(args.type, "--type") if args.type else None
    g = args.g if args.g is not None else (len(ctype) if ctype else None)
    if g is None:
        raise UsageError("give --g or --type")
    if ctype is not None and len(ctype) != g:
        raise UsageError(f"--type has {len(ctype)} entries but --g is {g}")
    try:
        return PolarizedContext(g, ctype)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _class_tree(z):
    v = z.variety
    return {
        "class": format_class(z),
        "terms": [{"monomial": v.algebra.monomial_label(m) if m else "1",
                   "coefficient": format_rational(c)} for m, c in sorted(z.terms.items())],
    }


def _emit(args, text, tree):
    if args.format == "structured":
        print(json.dumps(tree, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_fourier(args):
    ctx = _context(args)
    z = abvar.fourier(parse(args.expr, ctx))
    _emit(args, format_class(z), _class_tree(z))
    return EXIT_OK


def cmd_act(args):
    ctx = _context(args)
    m = parse_matrix(args.matrix)
    z = act_general(m, parse(args.expr, ctx))
    _emit(args, format_class(z), dict(_class_tree(z), matrix=str(m)))
    return EXIT_OK


def cmd_compose(args):
    ctx = _context(args)
    left = corr.Correspondence(parse(args.left, ctx, m=2))
    right = corr.Correspondence(parse(args.right, ctx, m=2))
    out = corr.compose(left, right).value
    _emit(args, format_class(out), _class_tree(out))
    return EXIT_OK


def cmd_decompose(args):
    ctx = _context(args)
    comps = primitive_decomposition(parse(args.expr, ctx))
    rows = [{"power": c.power, "lambda": c.lam, "q": format_rational(c.q),
             "primitive": format_class(c.primitive), "term": format_class(c.term)}
            for c in comps]
    lines = ["q\tlambda\tpower\tprimitive\tterm"]
    lines += [f"{r['q']}\t{r['lambda']}\t{r['power']}\t{r['primitive']}\t{r['term']}" for r in rows]
    _emit(args, "\n".join(lines), {"components": rows})
    return EXIT_OK


def cmd_suite(args):
    ctype = _ints(args.type, "--type") if args.type else None
    g = args.g if args.g is not None else (len(ctype) if ctype else 1)
    try:
        rep = run_suite(args.name, g, ctype, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tree = rep.to_tree()
    tree["seed"] = args.seed
    _emit(args, rep.to_text(), tree)
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="abelsl2",
                                     description="Exact sl2 and SL2 actions on abelian variety cohomology.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, expr=True):
        p.add_argument("--g", type=int, help="dimension of the abelian variety")
        p.add_argument("--type", help="polarization type c1,c2,... (default principal)")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if expr:
            p.add_argument("--expr", required=True, help="class expression")

    p = sub.add_parser("fourier", help="Fourier transform of a class")
    common(p)
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("act", help="action of an SL2(Q) matrix on a class")
    common(p)
    p.add_argument("--matrix", required=True, help="'a,b;c,d' with determinant 1")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("compose", help="composition left∘right of two correspondences")
    common(p, expr=False)
    p.add_argument("--left", required=True, help="expression on A x A")
    p.add_argument("--right", required=True, help="expression on A x A")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("decompose", help="primitive (Lefschetz) decomposition of a class")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("suite", help="run a verification suite")
    p.add_argument("name", choices=SUITES)
    common(p, expr=False)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ExprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionGuard as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except AbelSl2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
