"""Command-line front end.

Exit codes: 0 no failing row, 1 some row failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import ast
import json
import os
import sys
from typing import Dict, Iterable, List, Optional

from . import combinatorics, lommel, moments, qseries, registry
from .exactalg import RatFunc, var

CAP_ENV = "QLOMMEL_MAX_ORDER"


class UsageError(Exception):
    pass


# rendering ------------------------------------------------------------------------------

def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, default=str) + "\n")


def _negative(co: RatFunc) -> bool:
    sign = 1 if co.scalar > 0 else -1
    return all(val * sign < 0 for val in co.num.terms.values())


def _mono(v: str, e: int) -> str:
    return v if e == 1 else f"{v}^{e}"


def grouped_pretty(r: RatFunc, v: str) -> str:
    """Descending powers of ``v`` with rational-function coefficients, e.g. ``x - 1/[1-c]``."""
    try:
        parts = r.coefficients_in(v)
    except ValueError:
        return r.pretty()
    if not parts:
        return "0"
    terms = []
    for e in sorted(parts, reverse=True):
        co = parts[e]
        neg = _negative(co)
        txt = (-co if neg else co).pretty()
        if e == 0:
            body = txt
        elif txt == "1":
            body = _mono(v, e)
        elif len(co.num) == 1 and not co.den:
            body = f"{txt}*{_mono(v, e)}"
        else:
            body = f"({txt})*{_mono(v, e)}"
        terms.append((neg, body))
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def grouped_latex(r: RatFunc, v: str) -> str:
    try:
        parts = r.coefficients_in(v)
    except ValueError:
        return r.latex()
    if not parts:
        return "0"
    out = ""
    for i, e in enumerate(sorted(parts, reverse=True)):
        co = parts[e]
        neg = _negative(co)
        body = (-co if neg else co).latex()
        mono = "" if e == 0 else (v if e == 1 else f"{v}^{{{e}}}")
        if mono and body == "1":
            body = mono
        elif mono:
            body = (f"{body} {mono}" if len(co.num) == 1 else f"\\left({body}\\right) {mono}")
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


# expression parsing ------------------------------------------------------------------------

def parse_expr(text: str) -> RatFunc:
    """Rational expression in the named variables: ``+ - * / **`` with integer powers."""
    try:
        tree = ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise UsageError(f"cannot parse expression {text!r}") from exc

    def ev(node) -> RatFunc:
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return RatFunc.const(node.value)
        if isinstance(node, ast.Name):
            try:
                return RatFunc.from_poly(var(node.id))
            except (KeyError, ValueError) as exc:
                raise UsageError(f"unknown variable {node.id!r}") from exc
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    exp, sign = exp.operand, -1
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise UsageError("exponents must be integer literals")
                return ev(node.left) ** (sign * exp.value)
            lhs, rhs = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return lhs + rhs
            if isinstance(node.op, ast.Sub):
                return lhs - rhs
            if isinstance(node.op, ast.Mult):
                return lhs * rhs
            if isinstance(node.op, ast.Div):
                if rhs.is_zero():
                    raise UsageError("zero-divisor")
                return lhs / rhs
        raise UsageError(f"unsupported expression {text!r}")

    return ev(tree)


def _params(items: Optional[List[str]]) -> Dict[str, RatFunc]:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form name=expr")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_expr(v)
    return out


# commands ----------------------------------------------------------------------------------

def _cap() -> Optional[int]:
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw == "":
        return None
    try:
        cap = int(raw)
    except ValueError as exc:
        raise UsageError(f"{CAP_ENV} must be an integer") from exc
    if cap < 0:
        raise UsageError(f"{CAP_ENV} must be nonnegative")
    return cap


def _check_cap(name: str, value: Optional[int]) -> None:
    if value is None:
        return
    if value < 0:
        raise UsageError(f"{name} must be nonnegative")
    cap = _cap()
    if cap is not None and value > cap:
        raise UsageError(f"{name}={value} exceeds {CAP_ENV}={cap}")


def cmd_poly(args) -> int:
    _check_cap("--n", args.n)
    params = _params(args.param)
    if args.family not in lommel.FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(lommel.FAMILIES)}")
    if args.family == "assoc_AW":
        from .askey_wilson import AW_PARAMS
        bind = {k: params.pop(k, RatFunc.from_poly(var(k))) for k in AW_PARAMS}
        p = lommel.family_polynomial("assoc_AW", args.n, bind)
        if params:
            p = p.substitute(params)
    else:
        p = lommel.family_polynomial(args.family, args.n, params or None)
    v = "z" if args.family == "R3_laurent" else "x"
    if args.json:
        _emit({"family": args.family, "n": args.n, "canonical": p.canonical(),
               "pretty": grouped_pretty(p, v), "latex": grouped_latex(p, v)})
    elif args.latex:
        print(grouped_latex(p, v))
    else:
        print(grouped_pretty(p, v))
    return 0


SERIES_KINDS = ("classical", "first_q", "third_q", "cf")


def cmd_series(args) -> int:
    _check_cap("--order", args.order)
    if args.kind == "cf":
        spec = moments.FUNCTIONALS[args.functional]()
        s = moments.cf_series(spec, args.order)
    else:
        s = qseries.bessel_like_series(args.kind, args.order)
    if args.json:
        _emit({"kind": args.kind, "var": s.var, "order": s.order,
               "coeffs": [co.canonical() for co in s.coeffs]})
    elif args.latex:
        terms = [f"\\left({co.latex()}\\right) {s.var}^{{{i}}}" for i, co in enumerate(s.coeffs)
                 if not co.is_zero()]
        print(" + ".join(terms + [f"O({s.var}^{{{s.order + 1}}})"]))
    else:
        print(s.pretty())
    return 0


def cmd_moments(args) -> int:
    _check_cap("--order", args.order)
    vals = moments.functional_moments(args.functional, args.order)
    for n, m in enumerate(vals):
        row = {"functional": args.functional, "n": n, "moment": m.canonical()}
        if args.latex:
            row["latex"] = m.latex()
        _emit(row)
    return 0


def cmd_enumerate(args) -> int:
    kind = args.kind
    if kind == "motzkin":
        _check_cap("--length", args.length)
        it = combinatorics.enumerate_motzkin2(args.length, args.height)
        objs = (p.to_json() for p in it)
    elif kind == "polyomino":
        if args.max_area is None and args.semiperimeter is None:
            raise UsageError("polyomino enumeration needs --max-area or --semiperimeter")
        _check_cap("--max-area", args.max_area)
        _check_cap("--semiperimeter", args.semiperimeter)
        it = combinatorics.enumerate_polyominoes(args.max_area, args.diagonal_bound,
                                                 args.column_bound, args.semiperimeter)
        objs = (p.to_json() for p in it)
    elif kind == "schroder":
        if args.to_x is None or args.to_x < args.from_x:
            raise UsageError("schroder enumeration needs --to >= --from")
        _check_cap("--to", args.to_x)
        it = combinatorics.enumerate_schroder(args.from_x, args.to_x, args.max_souths)
        objs = (p.to_json() for p in it)
    else:
        _check_cap("--n", args.n)
        it = combinatorics.enumerate_path_tuples(args.n)
        objs = ({"type": "path_tuple", "paths": [[p.start, p.steps] for p in tup],
                 "stats": {"n": args.n}} for tup in it)
    count = 0
    for obj in objs:
        _emit(obj)
        count += 1
    print(f"{count} objects", file=sys.stderr)
    return 0


def _rows_exit(rows: Iterable[dict]) -> int:
    rows = list(rows)
    for r in rows:
        _emit(r)
    s = registry.summarize(rows)
    print(f"pass {s['pass']}  flagged {s['flagged']}  fail {s['fail']}", file=sys.stderr)
    return 1 if s["fail"] else 0


_BOUND_FLAGS = ("order", "max_n", "max_m", "m", "k", "n", "unit_n")


def _run_ids(ids: Iterable[str], overrides: dict) -> int:
    cap = _cap()
    rows = []
    for id_ in ids:
        try:
            rows.extend(registry.verify(id_, overrides, cap))
        except KeyError as exc:
            raise UsageError(f"unknown identity id {id_!r}") from exc
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return _rows_exit(rows)


def cmd_verify(args) -> int:
    if args.id == "list":
        for id_ in registry.identity_ids():
            ident = registry.REGISTRY[id_]
            _emit({"id": id_, "group": ident.group, "defaults": ident.defaults, "summary": ident.summary})
        return 0
    if args.id not in registry.REGISTRY:
        raise UsageError(f"unknown identity id {args.id!r} (try `verify list`)")
    overrides = {k: getattr(args, k) for k in _BOUND_FLAGS if getattr(args, k) is not None}
    return _run_ids([args.id], overrides)


def cmd_conjecture(args) -> int:
    if args.which == "kishore":
        return _run_ids(["thm:kishore"], {"max_n": args.max_n})
    if args.which == "finite-kishore":
        return _run_ids(["conj:finite-kishore"], {"max_m": args.m, "max_n": args.max_n})
    return _run_ids([f"conj:gamma-{args.variant}"], {"max_n": args.max_n})


def cmd_suite(args) -> int:
    ids = args.ids or None
    if ids:
        unknown = [i for i in ids if i not in registry.REGISTRY]
        if unknown:
            raise UsageError(f"unknown identity id {unknown[0]!r}")
    try:
        rows = registry.suite(ids, jobs=args.jobs, cap=_cap())
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _rows_exit(rows)


# parser --------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qlommel", description="Exact q-Lommel polynomial toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("poly", help="a member of a polynomial family")
    sp.add_argument("family", help=", ".join(lommel.FAMILIES))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--param", action="append", metavar="NAME=EXPR",
                    help="rebind a symbol, e.g. c=q**2 (repeatable)")
    sp.add_argument("--latex", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("series", help="a Bessel-type factor or a moment generating function")
    sp.add_argument("kind", choices=SERIES_KINDS)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--functional", choices=sorted(moments.FUNCTIONALS), default="L_p")
    sp.add_argument("--latex", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("moments", help="moments of a named functional")
    sp.add_argument("functional", choices=sorted(moments.FUNCTIONALS))
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--latex", action="store_true")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("enumerate", help="dump combinatorial objects as JSON lines")
    sp.add_argument("kind", choices=("motzkin", "polyomino", "schroder", "tuples"))
    sp.add_argument("--length", type=int, default=4)
    sp.add_argument("--height", type=int, default=10 ** 6)
    sp.add_argument("--max-area", type=int)
    sp.add_argument("--semiperimeter", type=int)
    sp.add_argument("--diagonal-bound", type=int)
    sp.add_argument("--column-bound", type=int)
    sp.add_argument("--from", dest="from_x", type=int, default=0)
    sp.add_argument("--to", dest="to_x", type=int)
    sp.add_argument("--max-souths", type=int)
    sp.add_argument("--n", type=int, default=2)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="verify one identity by id (`verify list` shows all)")
    sp.add_argument("id")
    for flag in _BOUND_FLAGS:
        sp.add_argument("--" + flag.replace("_", "-"), dest=flag, type=int)
    sp.add_argument("--json", action="store_true", help="accepted for clarity; rows are always JSON")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("conjecture", help="predicted-denominator scans")
    sp.add_argument("which", choices=("kishore", "finite-kishore", "gamma"))
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--variant", choices=("norlund", "heine"), default="norlund")
    sp.set_defaults(func=cmd_conjecture)

    sp = sub.add_parser("suite", help="every registered identity at default bounds")
    sp.add_argument("--ids", nargs="*", help="restrict to these ids")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qlommel: error: {exc}", file=sys.stderr)
        return 2
    except ZeroDivisionError as exc:
        print(f"qlommel: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
