"""Command-line front end (``hochkit``).

Exit status: 0 on success, 1 on a domain error (e.g. a non-cocycle passed to
``split``) or a failing selftest, 2 on usage or parse errors.
"""

import argparse
import json
import sys

from .dsl import parse_operator, parse_polynomial
from .errors import DslError, HochkitError
from .hkr import Truncation, alt, cohomology_report, split_cocycle
from .hochschild import (
    SignConvention,
    cup,
    gerstenhaber,
    hochschild_delta,
    hochschild_delta_via_bracket,
    partial_compose,
    total_compose,
)
from .multiop import ZeroCochain, apply
from .sder import sder_decompose
from .selftest import run_selftest

VERBS = ("eval", "cup", "compose", "bracket", "delta", "alt", "split",
         "sder-decompose", "cohomology", "selftest")


class _UsageError(Exception):
    pass


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", "-m", type=int, default=None,
                        help="number of variables m (inferred from the first D[...] if omitted)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = argparse.ArgumentParser(prog="hochkit", description="Exact Hochschild complex toolkit.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    s = sub.add_parser("eval", parents=[common], help="apply an operator to polynomials")
    s.add_argument("op")
    s.add_argument("args", nargs="+")

    s = sub.add_parser("cup", parents=[common], help="cup product")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("--cup-sign", choices=["paper", "signed", "unsigned"], default="unsigned")

    s = sub.add_parser("compose", parents=[common], help="total (or --slot partial) composition")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("--slot", type=int, default=None)

    s = sub.add_parser("bracket", parents=[common], help="Gerstenhaber bracket")
    s.add_argument("f")
    s.add_argument("g")

    s = sub.add_parser("delta", parents=[common], help="Hochschild differential")
    s.add_argument("op")
    s.add_argument("--via-bracket", action="store_true")

    s = sub.add_parser("alt", parents=[common], help="alternator")
    s.add_argument("op")

    s = sub.add_parser("split", parents=[common], help="split a cocycle as delta(E) + eta")
    s.add_argument("op")
    s.add_argument("--order", type=int, default=None)
    s.add_argument("--deg", type=int, default=None)
    s.add_argument("--slack", type=int, default=2)

    s = sub.add_parser("sder-decompose", parents=[common], help="write as composites of vector fields")
    s.add_argument("op")
    s.add_argument("--order", type=int, default=None)

    s = sub.add_parser("cohomology", parents=[common], help="truncated-window cohomology")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--deg", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--slack", type=int, default=2)

    s = sub.add_parser("selftest", parents=[common], help="run the embedded property suite")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    return p


class _Reader:
    """Resolves ``-`` arguments to stdin (read once)."""

    def __init__(self, stdin):
        self.stdin = stdin
        self.used = False

    def __call__(self, text):
        if text != "-":
            return text
        if self.used:
            raise _UsageError("stdin ('-') may be used for one argument only")
        self.used = True
        return self.stdin.read()


def _op(text, args, read):
    op = parse_operator(read(text), args.vars)
    if args.vars is None:
        args.vars = op.nvars
    return op


def _emit(out, args, text, data):
    if args.json:
        out.write(json.dumps(data) + "\n")
    else:
        out.write(text + "\n")


def _split_payload(E, eta):
    if isinstance(E, ZeroCochain):
        e_json = {"zero_cochain": E.value.to_json()}
        e_text = str(E.value)
    else:
        e_json, e_text = E.to_json(), str(E)
    return f"E = {e_text}\neta = {eta}", {"E": e_json, "eta": eta.to_json()}


def run(args, out, stdin):
    read = _Reader(stdin)
    v = args.verb
    if v == "eval":
        D = _op(args.op, args, read)
        polys = [parse_polynomial(read(a), D.nvars) for a in args.args]
        res = apply(D, polys)
        _emit(out, args, str(res), res.to_json())
        return 0
    if v in ("cup", "compose", "bracket"):
        f = _op(args.f, args, read)
        g = _op(args.g, args, read)
        if v == "cup":
            res = cup(f, g, SignConvention.from_name(args.cup_sign))
        elif v == "compose":
            res = total_compose(f, g) if args.slot is None else partial_compose(f, args.slot, g)
        else:
            res = gerstenhaber(f, g)
        _emit(out, args, str(res), res.to_json())
        return 0
    if v in ("delta", "alt"):
        D = _op(args.op, args, read)
        if v == "alt":
            res = alt(D)
        else:
            res = hochschild_delta_via_bracket(D) if args.via_bracket else hochschild_delta(D)
        _emit(out, args, str(res), res.to_json())
        return 0
    if v == "split":
        D = _op(args.op, args, read)
        t = None
        if args.order is not None or args.deg is not None:
            r = args.order if args.order is not None else max(
                (sum(a) for s, _ in D.terms() for a in s), default=1)
            d = args.deg if args.deg is not None else max(D.coeff_degree, 0)
            t = Truncation(D.nvars, D.arity, r, d)
        E, eta = split_cocycle(D, t, args.slack)
        text, data = _split_payload(E, eta)
        _emit(out, args, text, data)
        return 0
    if v == "sder-decompose":
        D = _op(args.op, args, read)
        r = args.order if args.order is not None else (D.order() if D else 0)
        dec = sder_decompose(D, r)
        _emit(out, args, str(dec), dec.to_json())
        return 0
    if v == "cohomology":
        if args.vars is None:
            raise _UsageError("cohomology needs --vars")
        rep = cohomology_report(args.vars, args.order, args.deg, args.nmax, args.slack)
        lines = [f"window m={args.vars} r={args.order} d={args.deg} slack={args.slack}",
                 "n  basis  dim  hkr"]
        for n, (b, dim, pr) in enumerate(zip(rep["basis_sizes"], rep["dims"], rep["hkr_prediction"])):
            lines.append(f"{n}  {b}  {dim}  {pr}")
        lines.append(f"match: {'true' if rep['match'] else 'false'}")
        _emit(out, args, "\n".join(lines), rep)
        return 0
    if v == "selftest":
        results = run_selftest(args.count, args.seed)
        passed = sum(r[1] for r in results)
        failed = sum(r[2] for r in results)
        lines = [f"{'PASS' if bad == 0 else 'FAIL'} {name}: {ok} passed, {bad} failed"
                 for name, ok, bad in results]
        lines.append(f"total: {passed} passed, {failed} failed")
        data = {"checks": [{"name": n, "passed": a, "failed": b} for n, a, b in results],
                "passed": passed, "failed": failed}
        _emit(out, args, "\n".join(lines), data)
        return 0 if failed == 0 else 1
    raise _UsageError(f"unknown verb {v}")


def _report_error(err, args_json, kind, extra=None):
    payload = {"kind": kind, "message": str(err)}
    payload.update(extra or {})
    if args_json:
        sys.stderr.write(json.dumps({"error": payload}) + "\n")
    else:
        sys.stderr.write(f"hochkit: {kind}: {err}\n")


def main(argv=None, out=None, stdin=None):
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return run(args, out, stdin)
    except DslError as e:
        _report_error(e, args.json, "parse-error",
                      {"line": e.line, "col": e.col, "expected": sorted(e.expected)})
        return 2
    except _UsageError as e:
        _report_error(e, args.json, "usage-error")
        return 2
    except (HochkitError, ValueError) as e:
        _report_error(e, args.json, type(e).__name__)
        return 1


if __name__ == "__main__":
    sys.exit(main())
