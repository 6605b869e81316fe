"""``deflaurent`` command line.

    deflaurent eval "comm(T^3, alpha)" --r 1 --s 1 --floor -10
    deflaurent eval "q*p" --rho 1 --sigma 1
    deflaurent embed "inv(q)" --r 0 --s 1
    deflaurent rebase "p^2*q" --r 1 --s 2
    deflaurent centralize "alpha + T^-1" --b0 "alpha^2" --r 1 --s 1
    deflaurent verify --suite coproduct

Exit status: 0 on success, 1 on mathematical failures, 2 on usage or
parse errors.
"""

import argparse
import json
import sys
from fractions import Fraction

from ..completion import centralizer_solve, make_generators, rebase
from ..deformation import make_spec
from ..errors import DeflaurentError, EvalError, InvalidParameter, ParseError, PrecisionExhausted
from ..exact_arith import NEG_INF, RatFun, format_rational
from ..expr import evaluate, parse, parse_ratfun, symbols
from ..series import DeformedSeries, commutator, inverse, mul, power
from ..weyl import DegreeParams, WeylElement, embed, v_degree, weyl_from_expr
from .verify import SUITES, run_suites

SCHEMA = "deflaurent/1"

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- evaluation --------------------------------------------------------------


class _Floored:
    """Series wrapper whose ``*`` truncates at a working floor."""

    __slots__ = ("z", "work")

    def __init__(self, z, work):
        self.z = z
        self.work = work

    def _wrap(self, z):
        return _Floored(z, self.work)

    def __add__(self, o):
        return self._wrap(self.z + o.z)

    def __sub__(self, o):
        return self._wrap(self.z - o.z)

    def __neg__(self):
        return self._wrap(-self.z)

    def __mul__(self, o):
        return self._wrap(mul(self.z, o.z, floor=self.work))


def evaluate_series(tree, spec, atom_images, floor, max_rounds=8):
    """Evaluate to floor ``floor``, deepening the working floor until the result is known there."""
    margin = 8
    for _ in range(max_rounds):
        work = floor - margin

        def atom(name):
            if name not in atom_images:
                raise EvalError("UnknownSymbol", f"{name!r} is not available in this mode")
            return _Floored(atom_images[name], work)

        def number(c, work=work):
            return _Floored(DeformedSeries.constant(spec, RatFun(c)), work)

        def inv(x, work=work):
            return _Floored(inverse(x.z, floor=work), work)

        try:
            out = evaluate(
                tree,
                atom,
                number=number,
                div=lambda a, b, work=work: _Floored(mul(a.z, inverse(b.z, floor=work), floor=work), work),
                inv=inv,
                power=lambda a, n, work=work: _Floored(power(a.z, n, floor=work), work),
                comm=lambda a, b, work=work: _Floored(commutator(a.z, b.z, floor=work), work),
            ).z
        except PrecisionExhausted:
            margin *= 2
            continue
        if out.floor <= floor:
            return out.truncate(floor)
        margin *= 2
    raise PrecisionExhausted(f"could not resolve the result down to floor {floor}")


def _spec_from_args(args):
    if args.r is None or args.s is None:
        raise UsageError("this command needs both --r and --s")
    return make_spec(args.r, args.s)


def _series_atoms(spec):
    return {"alpha": DeformedSeries.alpha(spec), "T": DeformedSeries.T(spec)}


def _embed_atoms(spec):
    return {"p": DeformedSeries(spec, {spec.r: RatFun.alpha()}), "q": DeformedSeries.T(spec, spec.s)}


def _needs_inverse(tree):
    from ..expr import Div, Inv, Pow

    if isinstance(tree, Inv):
        return True
    if isinstance(tree, Pow) and tree.exp < 0:
        return True
    if isinstance(tree, Div):
        return True
    return any(
        _needs_inverse(getattr(tree, name))
        for name in ("left", "right", "operand", "base")
        if getattr(tree, name, None) is not None
    )


def embed_expression(tree, spec, floor):
    """Weyl expression -> series: exact in A_1 when possible, else via the atom images."""
    names = symbols(tree)
    if names - {"p", "q"}:
        raise EvalError("UnknownSymbol", "embed accepts only p and q")
    if not _needs_inverse(tree):
        return embed(spec, weyl_from_expr(tree)).truncate(floor)
    return evaluate_series(tree, spec, _embed_atoms(spec), floor)


def series_expression(tree, spec, floor):
    names = symbols(tree)
    if names & {"p", "q"} and names & {"alpha", "T"}:
        raise EvalError("UnknownSymbol", "mixing p, q with alpha, T is not allowed")
    if names & {"p", "q"}:
        return embed_expression(tree, spec, floor)
    return evaluate_series(tree, spec, _series_atoms(spec), floor)


# -- commands ----------------------------------------------------------------


def _weyl_record(z):
    return {"terms": [[i, j, format_rational(c)] for (i, j), c in sorted(z.coeffs.items())]}


def _degree_text(v):
    return "-inf" if v == NEG_INF else format_rational(v)


def cmd_eval(args):
    tree = parse(args.expr)
    if args.r is not None or args.s is not None:
        spec = _spec_from_args(args)
        if symbols(tree) & {"p", "q"}:
            raise EvalError("UnknownSymbol", "p and q need the embed command in series mode")
        z = evaluate_series(tree, spec, _series_atoms(spec), args.floor)
        return z.render(), {"mode": "series", "result": z.to_record()}
    z = weyl_from_expr(tree)
    rec = {"mode": "weyl", "result": _weyl_record(z)}
    lines = [z.render()]
    if args.rho is not None or args.sigma is not None:
        params = DegreeParams(Fraction(args.rho or "0"), Fraction(args.sigma or "0"))
        v = v_degree(params, z)
        rec["v_degree"] = _degree_text(v)
        rec["rho"], rec["sigma"] = format_rational(params.rho), format_rational(params.sigma)
        lines.append(f"v = {_degree_text(v)}")
    return "\n".join(lines), rec


def cmd_embed(args):
    spec = _spec_from_args(args)
    z = embed_expression(parse(args.expr), spec, args.floor)
    return z.render(), {"mode": "embed", "result": z.to_record()}


def cmd_rebase(args):
    spec = _spec_from_args(args)
    z = series_expression(parse(args.expr), spec, args.floor)
    pair = make_generators(spec.r, spec.s, args.floor)
    rb = rebase(pair, z, max_steps=args.max_steps, floor=args.floor)
    return rb.render(), {"mode": "rebase", "result": rb.to_record()}


def cmd_centralize(args):
    spec = _spec_from_args(args)
    z = series_expression(parse(args.expr), spec, args.floor)
    b0 = parse_ratfun(args.b0)
    w = centralizer_solve(z, b0, args.floor)
    return w.render(), {"mode": "centralize", "result": w.to_record()}


def cmd_verify(args):
    results = run_suites(args.suite, seed=args.seed)
    lines = []
    for res in results:
        status = "PASS" if res["passed"] else "FAIL"
        line = f"{status} {res['suite']} ({res['checked']} cases)"
        if res["detail"]:
            line += f": {res['detail']}"
        lines.append(line)
    ok = all(res["passed"] for res in results)
    return "\n".join(lines), {"mode": "verify", "result": results, "passed": ok}


COMMANDS = {
    "eval": cmd_eval,
    "embed": cmd_embed,
    "rebase": cmd_rebase,
    "centralize": cmd_centralize,
    "verify": cmd_verify,
}


def _rational(text):
    try:
        return str(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="deflaurent", description="Exact deformed Laurent series and Weyl algebra tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, expr=True):
        if expr:
            p.add_argument("expr", help="expression in p, q, alpha, T with + - * / ^ inv() comm()")
        p.add_argument("--r", type=int)
        p.add_argument("--s", type=int)
        p.add_argument("--floor", type=int, default=-12, help="precision floor (default -12)")
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("eval", help="evaluate in A_1 (default) or in a series ring (--r/--s)")
    common(p)
    p.add_argument("--rho", type=_rational)
    p.add_argument("--sigma", type=_rational)
    p = sub.add_parser("embed", help="map a Weyl expression into the series ring")
    common(p)
    p = sub.add_parser("rebase", help="rewrite in the (alpha0, T0) generators")
    common(p)
    p.add_argument("--max-steps", type=int, default=None)
    p = sub.add_parser("centralize", help="solve [z, w] = 0 with prescribed constant term")
    common(p)
    p.add_argument("--b0", required=True, help="constant term of w, a rational function of alpha")
    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    return parser


def _emit(args, text, record, out):
    if args.format == "structured":
        body = {"schema": SCHEMA, "command": args.command}
        if getattr(args, "expr", None) is not None:
            body["input"] = args.expr
        body.update(record)
        body["text"] = text
        out.write(json.dumps(body, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _emit_error(args, kind, message, code, out, err):
    if getattr(args, "format", "text") == "structured":
        body = {"schema": SCHEMA, "command": getattr(args, "command", None), "error": {"kind": kind, "message": message}}
        out.write(json.dumps(body, sort_keys=True) + "\n")
    else:
        err.write(f"error: {kind}: {message}\n")
    return code


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        text, record = COMMANDS[args.command](args)
    except ParseError as exc:
        return _emit_error(args, "ParseError", str(exc), EXIT_USAGE, out, err)
    except (UsageError, InvalidParameter) as exc:
        return _emit_error(args, type(exc).__name__, str(exc), EXIT_USAGE, out, err)
    except EvalError as exc:
        return _emit_error(args, exc.kind, str(exc).split(": ", 1)[-1], EXIT_MATH, out, err)
    except DeflaurentError as exc:
        return _emit_error(args, type(exc).__name__, str(exc), EXIT_MATH, out, err)
    _emit(args, text, record, out)
    if args.command == "verify" and not record["passed"]:
        return EXIT_MATH
    return EXIT_OK
