"""Command-line front end.

Exit codes: 0 success, 1 a verification claim failed, 2 usage error,
3 malformed JSON input, 4 a horizon/size guard was hit.
"""

from __future__ import annotations

import argparse
import ast
import csv
import json
import operator
import sys
from fractions import Fraction

from . import constructions as cons
from . import verify as verify_mod
from .errors import HorizonTooLarge, InvalidArgs, InvalidOverride, SchemaError, UnknownClaim, UnsupportedOperator
from .operators import simplify
from .rational import fmt, jsonable
from .serialize import dump_sequence, parse_operator, parse_sequence
from .sequences import Applied, IntInterval, eval_at
from .windows import (
    AlmostConvergent,
    NotAlmostConvergent,
    cesaro_profile,
    dilation_witness_check,
    lorentz_check,
    sucheston_bounds,
)
from .zeta import zeta_transform

CSV_HEADER = "# seqlab-csv v1"

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Pow: operator.pow}


class UsageError(Exception):
    pass


def parse_index(text: str) -> int:
    """Integers, optionally written with ``+ - * ^`` (``4^5-1``, ``2^2^5``)."""
    def walk(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Pow) and right > 4096:
                raise UsageError(f"exponent too large in {text!r}")
            return _BINOPS[type(node.op)](left, right)
        raise UsageError(f"not an integer expression: {text!r}")

    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError:
        raise UsageError(f"not an integer expression: {text!r}") from None
    return walk(tree.body)


def _index_list(text: str) -> list:
    return [parse_index(t) for t in text.split(",") if t.strip()]


def _read_json(path: str, stdin_used: list):
    if path == "-":
        if stdin_used:
            raise UsageError("stdin ('-') can feed only one argument")
        stdin_used.append(True)
        raw = sys.stdin.read()
    else:
        with open(path) as fh:
            raw = fh.read()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None


def _emit(obj):
    print(json.dumps(jsonable(obj)))


def _write_csv(header, rows):
    print(CSV_HEADER)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (Fraction, int)) and not isinstance(v, bool) else v for v in r])


# ---------------------------------------------------------------- commands


def cmd_gen(args, stdin_used):
    name = args.name
    if name == "alternating":
        seq = cons.alternating()
    elif name == "char-multiples":
        seq = cons.char_multiples(_need(args.j, "--j"))
    elif name == "thm41":
        seq = cons.thm41_truncated(args.blocks) if args.blocks else cons.thm41_sequence()
    elif name == "thm21":
        seq = cons.thm21_sequence(args.nmax or 5, allow_deep=args.allow_deep)
    elif name == "j-set":
        n = _need(args.n, "--n")
        if args.k:
            from .sequences import IndicatorUnion
            seq = IndicatorUnion.from_indices(cons.J_nk(n, args.k))
        else:
            J = cons.J_set(n)
            from .sequences import IndicatorUnion
            seq = IndicatorUnion((J,))
    elif name == "i-set":
        seq = cons.I_set(_need(args.n, "--n"), allow_deep=args.allow_deep)
    elif name == "ones":
        seq = cons.ones()
    else:
        raise UsageError(f"unknown generator {name!r}")
    _emit(dump_sequence(seq))
    return 0


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this generator")
    return value


def cmd_eval(args, stdin_used):
    seq = parse_sequence(_read_json(args.seq, stdin_used))
    ks = _index_list(args.at)
    vals = [(k, eval_at(seq, k)) for k in ks]
    if args.json:
        _emit([{"index": k, "value": v} for k, v in vals])
    else:
        for _, v in vals:
            print(fmt(v))
    return 0


def cmd_apply(args, stdin_used):
    op = parse_operator(_read_json(args.op, stdin_used), "$op")
    seq = parse_sequence(_read_json(args.seq, stdin_used), "$seq")
    if args.simplify:
        op = simplify(op)
    _emit(dump_sequence(Applied(op, seq)))
    return 0


def _enclosure_json(b):
    return {
        "enclosure": f"[{fmt(b.q_lower)}, {fmt(b.p_upper)}]",
        "qLower": b.q_lower,
        "pUpper": b.p_upper,
        "gapUpper": b.gap_upper,
        "nUsed": b.n_used,
        "exact": b.exact,
        "closedForm": b.closed_form,
        "perN": [
            {"n": s.n, "supSum": s.sup_sum, "infSum": s.inf_sum, "supWitness": s.sup_witness,
             "infWitness": s.inf_witness, "exact": s.exact, "scanHorizon": s.scan_horizon}
            for s in b.per_n
        ],
    }


def cmd_bounds(args, stdin_used):
    seq = parse_sequence(_read_json(args.seq, stdin_used))
    b = sucheston_bounds(seq, args.nmax, args.scan)
    if args.csv:
        _write_csv(["n", "supAvg", "infAvg", "D"],
                   [(s.n, s.sup_avg, s.inf_avg, s.sup_avg - s.inf_avg) for s in b.per_n])
    else:
        _emit(_enclosure_json(b))
    return 0


def _verdict_json(v):
    if isinstance(v, AlmostConvergent):
        return {"kind": "almost_convergent", "value": v.value, "reason": v.reason}
    if isinstance(v, NotAlmostConvergent):
        return {"kind": "not_almost_convergent", "gapLower": v.gap_lower, "reason": v.reason,
                "witnesses": v.witnesses}
    return {"kind": "inconclusive", "reason": v.reason, "decayedBelowTol": v.decayed_below_tol}


def cmd_lorentz(args, stdin_used):
    seq = parse_sequence(_read_json(args.seq, stdin_used))
    tol = Fraction(args.tol)
    rep = lorentz_check(seq, args.nmax, tol, args.scan)
    if args.csv:
        _write_csv(["n", "D"], rep.table)
    else:
        _emit({"table": [{"n": n, "D": d} for n, d in rep.table], "verdict": _verdict_json(rep.verdict),
               "exact": rep.exact, "subadditive": rep.subadditive})
    return 0


def cmd_cesaro(args, stdin_used):
    seq = parse_sequence(_read_json(args.seq, stdin_used))
    prof = cesaro_profile(seq, _index_list(args.at))
    if args.json:
        _emit([{"index": j, "value": v} for j, v in prof])
    else:
        for _, v in prof:
            print(fmt(v))
    return 0


def cmd_zeta(args, stdin_used):
    seq = parse_sequence(_read_json(args.seq, stdin_used))
    rows = [zeta_transform(seq, n, args.eps) for n in _index_list(args.n)]
    _emit([{"n": z.n, "value": z.value, "truncationBound": z.truncation_bound, "termsUsed": z.terms_used}
           for z in rows])
    return 0


def cmd_witness(args, stdin_used):
    x = parse_sequence(_read_json(args.x, stdin_used), "$x")
    op = parse_operator(_read_json(args.op, stdin_used), "$op")
    y = parse_sequence(_read_json(args.y, stdin_used), "$y")
    lo, hi = _index_list(args.region)
    region = IntInterval(lo, hi)
    value, j = dilation_witness_check(x, op, y, region)
    _emit({"maxValue": value, "witness": j})
    return 0


def cmd_verify(args, stdin_used):
    overrides = {}
    for item in args.set or []:
        if "=" not in item:
            raise UsageError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        overrides[k.strip()] = v.strip()
    if args.claim:
        reports = [verify_mod.run_claim(args.claim, overrides)]
    else:
        if overrides:
            raise UsageError("--set requires --claim")
        reports = verify_mod.run_all(parallel=args.parallel)
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    elif args.csv:
        _write_csv(["claimId", "pass", "elapsed"], [(r.claim_id, r.passed, r.elapsed_ms) for r in reports])
    else:
        for r in reports:
            print(f"{r.claim_id:4s} {'PASS' if r.passed else 'FAIL'} {r.elapsed_ms:6d} ms")
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seqlab", description="Exact experiments on bounded sequences.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a built-in sequence as JSON")
    p.add_argument("name", choices=["alternating", "char-multiples", "thm41", "thm21", "j-set", "i-set", "ones"])
    p.add_argument("--j", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--blocks", type=int, help="truncate thm41 to this many blocks")
    p.add_argument("--allow-deep", action="store_true", help="allow levels beyond 6")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="evaluate a sequence at indices")
    p.add_argument("--seq", required=True)
    p.add_argument("--at", required=True, help="comma-separated indices, e.g. 1,2,4^5-1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("apply", help="apply an operator to a sequence")
    p.add_argument("--op", required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--simplify", action="store_true")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("bounds", help="certified enclosure of the Banach-limit values")
    p.add_argument("--seq", required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--scan", type=int, default=None)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lorentz", help="almost-convergence table and verdict")
    p.add_argument("--seq", required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--tol", default="1/100")
    p.add_argument("--scan", type=int, default=None)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_lorentz)

    p = sub.add_parser("cesaro", help="exact Cesaro means")
    p.add_argument("--seq", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cesaro)

    p = sub.add_parser("zeta", help="zeta-type weighted averages")
    p.add_argument("--seq", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--eps", type=float, default=1e-8)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("witness", help="max of A(x + (I-T)y) over a region")
    p.add_argument("--x", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--region", required=True, help="lo,hi (half-open)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run the claim checks")
    p.add_argument("--claim")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a claim parameter")
    p.add_argument("--parallel", action="store_true")
    fmt_group = p.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", action="store_true")
    fmt_group.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, [])
    except (UsageError, InvalidArgs, UnknownClaim, InvalidOverride, UnsupportedOperator, ValueError) as exc:
        if isinstance(exc, SchemaError):
            print(f"seqlab: schema error at {exc}", file=sys.stderr)
            return 3
        print(f"seqlab: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"seqlab: schema error at {exc}", file=sys.stderr)
        return 3
    except HorizonTooLarge as exc:
        print(f"seqlab: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"seqlab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
