"""JSON descriptions of sequences and operators.

Integers and rationals travel as decimal strings (``"p/q"`` for rationals);
plain JSON integers are accepted on input for small parameters.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidArgs, SchemaError
from .operators import Cesaro, Compose, ConvexCombo, DiffIT, Dilation, Shift
from .rational import fmt
from .sequences import (
    Applied,
    Constant,
    GeometricIndicator,
    IndicatorUnion,
    IntInterval,
    Periodic,
    Pointwise,
    PrefixTail,
)


def _obj(d, path):
    if not isinstance(d, dict):
        raise SchemaError(path, f"expected an object, got {type(d).__name__}")
    if "kind" not in d:
        raise SchemaError(f"{path}.kind", "missing field")
    return d["kind"]


def _field(d, key, path):
    if key not in d:
        raise SchemaError(f"{path}.{key}", "missing field")
    return d[key]


def _rat(v, path) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(path, f"expected a rational string, got {v!r}")
    try:
        return Fraction(v.strip() if isinstance(v, str) else v)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"not a rational: {v!r}") from None


def _int(v, path) -> int:
    q = _rat(v, path)
    if q.denominator != 1:
        raise SchemaError(path, f"expected an integer, got {v!r}")
    return q.numerator


def _list(v, path) -> list:
    if not isinstance(v, list):
        raise SchemaError(path, f"expected a list, got {type(v).__name__}")
    return v


def _guard(path, build):
    try:
        return build()
    except InvalidArgs as exc:
        raise SchemaError(path, str(exc)) from None


def parse_sequence(d, path="$"):
    kind = _obj(d, path)
    if kind == "prefix_tail":
        prefix = [_rat(v, f"{path}.prefix[{i}]") for i, v in enumerate(_list(d.get("prefix", []), f"{path}.prefix"))]
        tail = _parse_tail(_field(d, "tail", path), f"{path}.tail")
        return PrefixTail(tuple(prefix), tail)
    if kind == "indicator":
        ivs = []
        for i, iv in enumerate(_list(_field(d, "intervals", path), f"{path}.intervals")):
            p = f"{path}.intervals[{i}]"
            iv = _list(iv, p)
            if len(iv) != 2:
                raise SchemaError(p, "interval must be [lo, hi]")
            lo, hi = _int(iv[0], f"{p}[0]"), _int(iv[1], f"{p}[1]")
            ivs.append(_guard(p, lambda: IntInterval(lo, hi)))
        return _guard(f"{path}.intervals", lambda: IndicatorUnion(tuple(ivs)))
    if kind == "geometric_indicator":
        a = _rat(_field(d, "a", path), f"{path}.a")
        b = _rat(_field(d, "b", path), f"{path}.b")
        r = _int(_field(d, "ratio", path), f"{path}.ratio")
        s = _int(d.get("start", 0), f"{path}.start")
        return _guard(path, lambda: GeometricIndicator(a, b, r, s))
    if kind == "apply":
        op = parse_operator(_field(d, "op", path), f"{path}.op")
        arg = parse_sequence(_field(d, "seq", path), f"{path}.seq")
        return Applied(op, arg)
    if kind == "pointwise":
        op = _field(d, "op", path)
        args = tuple(parse_sequence(a, f"{path}.args[{i}]") for i, a in enumerate(_list(_field(d, "args", path), f"{path}.args")))
        c = _rat(d.get("c", 1), f"{path}.c")
        dd = _rat(d.get("d", 0), f"{path}.d")
        return _guard(f"{path}.op", lambda: Pointwise(op, args, c, dd))
    raise SchemaError(f"{path}.kind", f"unknown sequence kind {kind!r}")


def _parse_tail(d, path):
    kind = _obj(d, path)
    if kind == "constant":
        return Constant(_rat(_field(d, "value", path), f"{path}.value"))
    if kind == "periodic":
        vals = [_rat(v, f"{path}.values[{i}]") for i, v in enumerate(_list(_field(d, "values", path), f"{path}.values"))]
        return _guard(f"{path}.values", lambda: Periodic(tuple(vals)))
    raise SchemaError(f"{path}.kind", f"unknown tail kind {kind!r}")


def parse_operator(d, path="$"):
    kind = _obj(d, path)
    if kind == "shift":
        p = _int(d.get("power", 1), f"{path}.power")
        return _guard(f"{path}.power", lambda: Shift(p))
    if kind == "diff":
        return DiffIT()
    if kind == "cesaro":
        return Cesaro()
    if kind == "dilation":
        m = _int(_field(d, "m", path), f"{path}.m")
        return _guard(f"{path}.m", lambda: Dilation(m))
    if kind == "convex":
        terms = []
        for i, t in enumerate(_list(_field(d, "terms", path), f"{path}.terms")):
            p = f"{path}.terms[{i}]"
            if not isinstance(t, dict):
                raise SchemaError(p, "expected an object")
            w = _rat(_field(t, "weight", p), f"{p}.weight")
            terms.append((w, parse_operator(_field(t, "op", p), f"{p}.op")))
        return _guard(f"{path}.terms", lambda: ConvexCombo(tuple(terms)))
    if kind == "compose":
        ops = tuple(parse_operator(o, f"{path}.ops[{i}]") for i, o in enumerate(_list(_field(d, "ops", path), f"{path}.ops")))
        return Compose(ops)
    raise SchemaError(f"{path}.kind", f"unknown operator kind {kind!r}")


def dump_sequence(seq) -> dict:
    if isinstance(seq, PrefixTail):
        if isinstance(seq.tail, Constant):
            tail = {"kind": "constant", "value": fmt(seq.tail.value)}
        else:
            tail = {"kind": "periodic", "values": [fmt(v) for v in seq.tail.values]}
        return {"kind": "prefix_tail", "prefix": [fmt(v) for v in seq.prefix], "tail": tail}
    if isinstance(seq, IndicatorUnion):
        return {"kind": "indicator", "intervals": [[str(iv.lo), str(iv.hi)] for iv in seq.intervals]}
    if isinstance(seq, GeometricIndicator):
        return {"kind": "geometric_indicator", "a": fmt(seq.a), "b": fmt(seq.b),
                "ratio": seq.ratio, "start": seq.start}
    if isinstance(seq, Applied):
        return {"kind": "apply", "op": dump_operator(seq.op), "seq": dump_sequence(seq.arg)}
    if isinstance(seq, Pointwise):
        out = {"kind": "pointwise", "op": seq.kind, "args": [dump_sequence(a) for a in seq.args]}
        if seq.kind in ("scale", "affine"):
            out["c"] = fmt(seq.c)
        if seq.kind == "affine":
            out["d"] = fmt(seq.d)
        return out
    raise TypeError(f"not a sequence expression: {seq!r}")


def dump_operator(op) -> dict:
    if isinstance(op, Shift):
        return {"kind": "shift", "power": op.power}
    if isinstance(op, DiffIT):
        return {"kind": "diff"}
    if isinstance(op, Cesaro):
        return {"kind": "cesaro"}
    if isinstance(op, Dilation):
        return {"kind": "dilation", "m": op.m}
    if isinstance(op, ConvexCombo):
        return {"kind": "convex", "terms": [{"weight": fmt(w), "op": dump_operator(t)} for w, t in op.terms]}
    if isinstance(op, Compose):
        return {"kind": "compose", "ops": [dump_operator(o) for o in op.ops]}
    raise TypeError(f"not an operator: {op!r}")
