"""Exact bounded sequences indexed by positive integers.

A sequence is an immutable expression tree:

* ``PrefixTail``          explicit prefix, then a constant or periodic tail
* ``IndicatorUnion``      0/1 indicator of sorted disjoint half-open intervals
* ``GeometricIndicator``  indicator of ``[ceil(a r^k), ceil(b r^k))``, ``k >= start``
* ``Applied``             an operator applied to a sequence
* ``Pointwise``           add / sub / mul / scale / affine of sequences

Values are ``fractions.Fraction`` and indices are Python ints, so the
indicator families can live at indices like ``2**(2**8)``.
"""

from __future__ import annotations

import bisect
import os
import operator
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from functools import reduce
from typing import Union

from . import forms
from .errors import HorizonTooLarge, InvalidArgs, UnsupportedComposition
from .operators import (
    Cesaro,
    Compose,
    ConvexCombo,
    DiffIT,
    Dilation,
    OPERATOR_TYPES,
    OperatorExpr,
    Shift,
)
from .rational import as_fraction, ceil_div

DEFAULT_HORIZON_CAP = 10**8
# Cesaro prefix sums and products without a normal form are summed term by
# term; this bounds that work.
ITERATION_CAP = 2_000_000

ZERO = Fraction(0)
ONE = Fraction(1)


def horizon_cap() -> int:
    env = os.environ.get("SEQLAB_HORIZON_CAP")
    if env:
        return int(env)
    return DEFAULT_HORIZON_CAP


# ---------------------------------------------------------------- leaf types


@dataclass(frozen=True)
class IntInterval:
    """Half-open integer interval ``[lo, hi)``."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 1 or self.lo >= self.hi:
            raise InvalidArgs(f"interval must satisfy 1 <= lo < hi, got [{self.lo}, {self.hi})")

    def __len__(self):
        return self.hi - self.lo

    def __contains__(self, k):
        return self.lo <= k < self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi))


@dataclass(frozen=True)
class Constant:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))


@dataclass(frozen=True)
class Periodic:
    values: tuple

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if not vals:
            raise InvalidArgs("periodic tail needs at least one value")
        object.__setattr__(self, "values", vals)


TailSpec = Union[Constant, Periodic]


@dataclass(frozen=True)
class PrefixTail:
    prefix: tuple
    tail: TailSpec

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(as_fraction(v) for v in self.prefix))
        if not isinstance(self.tail, (Constant, Periodic)):
            raise InvalidArgs(f"tail must be Constant or Periodic, got {self.tail!r}")

    def value(self, k: int) -> Fraction:
        L = len(self.prefix)
        if k <= L:
            return self.prefix[k - 1]
        if isinstance(self.tail, Constant):
            return self.tail.value
        vals = self.tail.values
        return vals[(k - L - 1) % len(vals)]

    @cached_property
    def form(self):
        """Normal form, built once per instance."""
        if isinstance(self.tail, Constant):
            return forms.step_from_values(self.prefix, len(self.prefix) + 1, self.tail.value)
        pf = forms.PeriodicForm(self.prefix, self.tail.values)
        return forms.periodic_to_step(pf) or pf


@dataclass(frozen=True)
class IndicatorUnion:
    intervals: tuple
    _los: tuple = field(init=False, repr=False, compare=False)
    _cum: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ivs = tuple(iv if isinstance(iv, IntInterval) else IntInterval(*iv) for iv in self.intervals)
        for a, b in zip(ivs, ivs[1:]):
            if b.lo < a.hi:
                raise InvalidArgs(f"intervals must be sorted and disjoint: {a} then {b}")
        cum = [0]
        for iv in ivs:
            cum.append(cum[-1] + len(iv))
        object.__setattr__(self, "intervals", ivs)
        object.__setattr__(self, "_los", tuple(iv.lo for iv in ivs))
        object.__setattr__(self, "_cum", tuple(cum))

    @classmethod
    def from_intervals(cls, intervals) -> "IndicatorUnion":
        """Normalize arbitrary (possibly overlapping) ``(lo, hi)`` pairs."""
        merged = []
        for lo, hi in sorted((iv.lo, iv.hi) if isinstance(iv, IntInterval) else tuple(iv) for iv in intervals):
            if lo >= hi:
                continue
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return cls(tuple(IntInterval(lo, hi) for lo, hi in merged))

    @classmethod
    def from_indices(cls, indices) -> "IndicatorUnion":
        return cls.from_intervals((k, k + 1) for k in indices)

    def value(self, k: int) -> Fraction:
        i = bisect.bisect_right(self._los, k) - 1
        return ONE if i >= 0 and k < self.intervals[i].hi else ZERO

    def count(self, k: int) -> int:
        """Number of ones among indices ``1..k``."""
        i = bisect.bisect_right(self._los, k) - 1
        if i < 0:
            return 0
        iv = self.intervals[i]
        return self._cum[i] + min(iv.hi, k + 1) - iv.lo

    def measure(self) -> int:
        return self._cum[-1]

    def indices(self):
        for iv in self.intervals:
            yield from iv


@dataclass(frozen=True)
class GeometricIndicator:
    """Indicator of ``U_{k >= start} [ceil(a r^k), ceil(b r^k))``."""

    a: Fraction
    b: Fraction
    ratio: int
    start: int = 0

    def __post_init__(self):
        a, b = as_fraction(self.a), as_fraction(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not isinstance(self.ratio, int) or self.ratio < 2:
            raise InvalidArgs(f"ratio must be an integer >= 2, got {self.ratio!r}")
        if not isinstance(self.start, int) or self.start < 0:
            raise InvalidArgs(f"start exponent must be an integer >= 0, got {self.start!r}")
        if not 0 < a < b:
            raise InvalidArgs(f"need 0 < a < b, got a={a}, b={b}")
        # ceil(b r^k) <= ceil(a r^(k+1)) for every k  <=>  b <= a r
        if b > a * self.ratio:
            raise InvalidArgs(f"blocks overlap: b={b} > a*ratio={a * self.ratio}")

    def block(self, k: int) -> tuple[int, int]:
        rk = self.ratio**k
        return ceil_div(self.a.numerator * rk, self.a.denominator), ceil_div(self.b.numerator * rk, self.b.denominator)

    def blocks_upto(self, k: int):
        """Yield nonempty blocks ``(lo, hi)`` with ``lo <= k``."""
        e = self.start
        while True:
            lo, hi = self.block(e)
            if lo > k:
                return
            if lo < hi:
                yield lo, hi
            e += 1

    def value(self, k: int) -> Fraction:
        for lo, hi in self.blocks_upto(k):
            if k < hi:
                return ONE
        return ZERO

    def count(self, k: int) -> int:
        return sum(min(hi, k + 1) - lo for lo, hi in self.blocks_upto(k))

    def truncated(self, upto: int) -> IndicatorUnion:
        """The blocks starting at or below ``upto``; agrees with self on ``1..upto``."""
        return IndicatorUnion.from_intervals(self.blocks_upto(upto))

    def has_zeros(self) -> bool:
        first_lo, _ = self.block(self.start)
        return first_lo > 1 or self.b < self.a * self.ratio


# --------------------------------------------------------------- tree nodes


@dataclass(frozen=True)
class Applied:
    op: OperatorExpr
    arg: "SequenceExpr"

    def __post_init__(self):
        if not isinstance(self.op, OPERATOR_TYPES):
            raise InvalidArgs(f"not an operator: {self.op!r}")
        _check_seq(self.arg)


POINTWISE_KINDS = ("add", "sub", "mul", "scale", "affine")


@dataclass(frozen=True)
class Pointwise:
    """Pointwise arithmetic.

    ``add``/``mul`` take one or more args, ``sub`` exactly two, ``scale``
    (``c * x``) and ``affine`` (``c * x + d``) exactly one.
    """

    kind: str
    args: tuple
    c: Fraction = ONE
    d: Fraction = ZERO

    def __post_init__(self):
        if self.kind not in POINTWISE_KINDS:
            raise InvalidArgs(f"unknown pointwise kind {self.kind!r}")
        args = tuple(self.args)
        for a in args:
            _check_seq(a)
        want = {"sub": 2, "scale": 1, "affine": 1}.get(self.kind)
        if want is not None and len(args) != want:
            raise InvalidArgs(f"{self.kind} takes {want} argument(s), got {len(args)}")
        if not args:
            raise InvalidArgs(f"{self.kind} needs at least one argument")
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "c", as_fraction(self.c))
        object.__setattr__(self, "d", as_fraction(self.d))

    def fn(self):
        kind, c, d = self.kind, self.c, self.d
        if kind == "add":
            return lambda *v: sum(v, ZERO)
        if kind == "sub":
            return lambda a, b: a - b
        if kind == "mul":
            return lambda *v: reduce(operator.mul, v, ONE)
        if kind == "scale":
            return lambda a: c * a
        return lambda a: c * a + d


SequenceExpr = Union[PrefixTail, IndicatorUnion, GeometricIndicator, Applied, Pointwise]
SEQUENCE_TYPES = (PrefixTail, IndicatorUnion, GeometricIndicator, Applied, Pointwise)


def _check_seq(s):
    if not isinstance(s, SEQUENCE_TYPES):
        raise InvalidArgs(f"not a sequence expression: {s!r}")


# ------------------------------------------------------------ constructors


def constant(c=1) -> PrefixTail:
    return PrefixTail((), Constant(as_fraction(c)))


def from_values(values, tail=0) -> PrefixTail:
    """Finite explicit prefix followed by a constant tail (default 0)."""
    return PrefixTail(tuple(values), Constant(as_fraction(tail)))


def add(*args) -> Pointwise:
    return Pointwise("add", args)


def sub(a, b) -> Pointwise:
    return Pointwise("sub", (a, b))


def mul(*args) -> Pointwise:
    return Pointwise("mul", args)


def scale(c, x) -> Pointwise:
    return Pointwise("scale", (x,), c=as_fraction(c))


def affine(c, d, x) -> Pointwise:
    return Pointwise("affine", (x,), c=as_fraction(c), d=as_fraction(d))


ONES = constant(1)
ZEROS = constant(0)


# --------------------------------------------------------------- evaluation


def eval_at(seq: SequenceExpr, k: int) -> Fraction:
    """Exact value ``x_k`` (``k >= 1``)."""
    if k < 1:
        raise InvalidArgs(f"index must be >= 1, got {k}")
    return _eval(seq, k)


def _eval(seq, k: int) -> Fraction:
    if isinstance(seq, (PrefixTail, IndicatorUnion, GeometricIndicator)):
        return seq.value(k)
    if isinstance(seq, Applied):
        return _eval_op(seq.op, seq.arg, k)
    if isinstance(seq, Pointwise):
        return seq.fn()(*(_eval(a, k) for a in seq.args))
    raise UnsupportedComposition(f"no evaluation rule for {type(seq).__name__}")


def _eval_op(op, arg, k: int) -> Fraction:
    if isinstance(op, Shift):
        return _eval(arg, k - op.power) if k > op.power else ZERO
    if isinstance(op, DiffIT):
        return _eval(arg, k) - (_eval(arg, k - 1) if k > 1 else ZERO)
    if isinstance(op, Cesaro):
        return _prefix(arg, k) / k
    if isinstance(op, Dilation):
        return _eval(arg, ceil_div(k, op.m))
    if isinstance(op, ConvexCombo):
        return sum((w * _eval_op(t, arg, k) for w, t in op.terms), ZERO)
    if isinstance(op, Compose):
        if not op.ops:
            return _eval(arg, k)
        return _eval_op(op.ops[0], _compose_rest(op, arg), k)
    raise UnsupportedComposition(f"no evaluation rule for operator {op!r}")


def _compose_rest(op: Compose, arg):
    rest = op.ops[1:]
    if not rest:
        return arg
    if len(rest) == 1:
        return Applied(rest[0], arg)
    return Applied(Compose(rest), arg)


def prefix_sum(seq: SequenceExpr, k: int) -> Fraction:
    """Exact ``x_1 + ... + x_k``; ``prefix_sum(seq, 0) == 0``."""
    if k < 0:
        raise InvalidArgs(f"index must be >= 0, got {k}")
    return _prefix(seq, k)


def _prefix(seq, k: int) -> Fraction:
    if k <= 0:
        return ZERO
    if isinstance(seq, (IndicatorUnion, GeometricIndicator)):
        return Fraction(seq.count(k))
    if isinstance(seq, PrefixTail):
        return _leaf_form(seq).prefix_sum(k)
    if isinstance(seq, Applied):
        return _prefix_op(seq.op, seq.arg, k)
    if isinstance(seq, Pointwise):
        if seq.kind in ("add", "sub"):
            parts = [_prefix(a, k) for a in seq.args]
            return sum(parts, ZERO) if seq.kind == "add" else parts[0] - parts[1]
        if seq.kind == "scale":
            return seq.c * _prefix(seq.args[0], k)
        if seq.kind == "affine":
            return seq.c * _prefix(seq.args[0], k) + seq.d * k
        return _prefix_fallback(seq, k)
    raise UnsupportedComposition(f"no prefix-sum rule for {type(seq).__name__}")


def _prefix_op(op, arg, k: int) -> Fraction:
    if isinstance(op, Shift):
        return _prefix(arg, k - op.power)
    if isinstance(op, DiffIT):
        # telescopes, with x_0 = 0
        return _eval(arg, k)
    if isinstance(op, Dilation):
        q, r = divmod(k, op.m)
        total = op.m * _prefix(arg, q)
        if r:
            total += r * _eval(arg, q + 1)
        return total
    if isinstance(op, ConvexCombo):
        return sum((w * _prefix_op(t, arg, k) for w, t in op.terms), ZERO)
    if isinstance(op, Compose):
        if not op.ops:
            return _prefix(arg, k)
        return _prefix_op(op.ops[0], _compose_rest(op, arg), k)
    if isinstance(op, Cesaro):
        return _prefix_fallback(Applied(op, arg), k)
    raise UnsupportedComposition(f"no prefix-sum rule for operator {op!r}")


def _prefix_fallback(seq, k: int) -> Fraction:
    nf = normal_form(seq, upto=k)
    if nf is not None:
        return nf[0].prefix_sum(k)
    if k > ITERATION_CAP:
        raise HorizonTooLarge(f"prefix sum to {k} needs term-by-term summation (cap {ITERATION_CAP})")
    return sum(_values(seq, k), ZERO)


# ------------------------------------------------------------- normal forms


def _leaf_form(seq: PrefixTail):
    return seq.form


def normal_form(seq: SequenceExpr, upto: int | None = None):
    """Reduce ``seq`` to a finite normal form.

    Returns ``(form, exact)`` or ``None``.  With ``upto=None`` only exact
    reductions are attempted.  With ``upto`` set, infinite indicator families
    may be truncated: the form then agrees with ``seq`` on ``1..upto`` and
    ``exact`` is False.
    """
    state = {"exact": True}
    form = _nf(seq, upto, state)
    if form is None:
        return None
    return form, state["exact"]


def _nf(seq, upto, state):
    if isinstance(seq, PrefixTail):
        if len(seq.prefix) > forms.DENSE_CAP:
            return None
        return _leaf_form(seq)
    if isinstance(seq, IndicatorUnion):
        runs = tuple((iv.lo, iv.hi, ONE) for iv in seq.intervals)
        return forms.StepForm(runs, seq.intervals[-1].hi if runs else 1, ZERO)
    if isinstance(seq, GeometricIndicator):
        if upto is None:
            return None
        state["exact"] = False
        return _nf(seq.truncated(max(upto, 1)), None, state)
    if isinstance(seq, Applied):
        return _nf_op(seq.op, seq.arg, upto, state)
    if isinstance(seq, Pointwise):
        parts = [_nf(a, upto, state) for a in seq.args]
        if any(p is None for p in parts):
            return None
        return forms.combine(seq.fn(), parts)
    return None


def _nf_op(op, arg, upto, state):
    if isinstance(op, Shift):
        inner = _nf(arg, None if upto is None else max(upto - op.power, 1), state)
        return None if inner is None else forms.shift(inner, op.power)
    if isinstance(op, DiffIT):
        inner = _nf(arg, upto, state)
        return None if inner is None else forms.difference(inner)
    if isinstance(op, Dilation):
        inner = _nf(arg, None if upto is None else ceil_div(upto, op.m), state)
        return None if inner is None else forms.dilate(inner, op.m)
    if isinstance(op, ConvexCombo):
        parts = [_nf_op(t, arg, upto, state) for _, t in op.terms]
        if any(p is None for p in parts):
            return None
        weights = [w for w, _ in op.terms]
        return forms.combine(lambda *v: sum((w * x for w, x in zip(weights, v)), ZERO), parts)
    if isinstance(op, Compose):
        if not op.ops:
            return _nf(arg, upto, state)
        return _nf_op(op.ops[0], _compose_rest(op, arg), upto, state)
    return None


# ---------------------------------------------------------- materialization


def materialize(seq: SequenceExpr, horizon: int) -> list:
    """``[x_1, ..., x_horizon]`` as Fractions."""
    cap = horizon_cap()
    if horizon > cap:
        raise HorizonTooLarge(f"horizon {horizon} exceeds cap {cap} (set SEQLAB_HORIZON_CAP to raise it)")
    if horizon < 0:
        raise InvalidArgs(f"horizon must be >= 0, got {horizon}")
    return _values(seq, horizon)


def _values(seq, h: int) -> list:
    if h <= 0:
        return []
    if isinstance(seq, PrefixTail):
        out = list(seq.prefix[:h])
        tail = seq.tail.values if isinstance(seq.tail, Periodic) else (seq.tail.value,)
        while len(out) < h:
            out.extend(tail[: h - len(out)])
        return out
    if isinstance(seq, (IndicatorUnion, GeometricIndicator)):
        return _indicator_values(seq, h)
    if isinstance(seq, Applied):
        return _values_op(seq.op, seq.arg, h)
    if isinstance(seq, Pointwise):
        cols = [_values(a, h) for a in seq.args]
        fn = seq.fn()
        return [fn(*vals) for vals in zip(*cols)]
    raise UnsupportedComposition(f"no evaluation rule for {type(seq).__name__}")


def _indicator_values(seq, h: int) -> list:
    out = [ZERO] * h
    ivs = seq.intervals if isinstance(seq, IndicatorUnion) else seq.blocks_upto(h)
    for iv in ivs:
        lo, hi = (iv.lo, iv.hi) if isinstance(iv, IntInterval) else iv
        if lo > h:
            break
        for k in range(lo, min(hi, h + 1)):
            out[k - 1] = ONE
    return out


def _values_op(op, arg, h: int) -> list:
    if isinstance(op, Shift):
        p = min(op.power, h)
        return [ZERO] * p + _values(arg, h - p)
    if isinstance(op, DiffIT):
        xs = _values(arg, h)
        return [xs[0]] + [xs[i] - xs[i - 1] for i in range(1, h)]
    if isinstance(op, Cesaro):
        out, s = [], ZERO
        for n, v in enumerate(_values(arg, h), start=1):
            s += v
            out.append(s / n)
        return out
    if isinstance(op, Dilation):
        xs = _values(arg, ceil_div(h, op.m))
        return [xs[(k - 1) // op.m] for k in range(1, h + 1)]
    if isinstance(op, ConvexCombo):
        cols = [(w, _values_op(t, arg, h)) for w, t in op.terms]
        return [sum((w * col[i] for w, col in cols), ZERO) for i in range(h)]
    if isinstance(op, Compose):
        if not op.ops:
            return _values(arg, h)
        return _values_op(op.ops[0], _compose_rest(op, arg), h)
    raise UnsupportedComposition(f"no evaluation rule for operator {op!r}")


def pointwise_check_equal(a: SequenceExpr, b: SequenceExpr, horizon: int):
    """Compare ``a`` and ``b`` exactly on ``1..horizon``.

    Returns ``(True, None)`` or ``(False, (k, a_k, b_k))`` for the smallest
    mismatching index ``k``.
    """
    if horizon < 1:
        raise InvalidArgs("horizon must be >= 1")
    xs, ys = materialize(a, horizon), materialize(b, horizon)
    for k, (x, y) in enumerate(zip(xs, ys), start=1):
        if x != y:
            return False, (k, x, y)
    return True, None


# ------------------------------------------------------------------- bounds


def value_range(seq: SequenceExpr) -> tuple[Fraction, Fraction]:
    """A sound interval ``[lo, hi]`` containing every value of ``seq``.

    Exact (both ends attained) for leaves and whenever an exact normal form
    exists; otherwise propagated by interval arithmetic.
    """
    if isinstance(seq, (IndicatorUnion, GeometricIndicator)):
        if isinstance(seq, IndicatorUnion) and not seq.intervals:
            return ZERO, ZERO
        if isinstance(seq, GeometricIndicator) and not seq.has_zeros():
            return ONE, ONE
        return ZERO, ONE
    nf = normal_form(seq)
    if nf is not None:
        return nf[0].value_range()
    if isinstance(seq, Applied):
        return _range_op(seq.op, value_range(seq.arg))
    if isinstance(seq, Pointwise):
        rs = [value_range(a) for a in seq.args]
        if seq.kind == "add":
            return sum((r[0] for r in rs), ZERO), sum((r[1] for r in rs), ZERO)
        if seq.kind == "sub":
            return rs[0][0] - rs[1][1], rs[0][1] - rs[1][0]
        if seq.kind == "mul":
            return reduce(_interval_mul, rs)
        lo, hi = rs[0]
        d = seq.d if seq.kind == "affine" else ZERO
        ends = (seq.c * lo + d, seq.c * hi + d)
        return min(ends), max(ends)
    raise UnsupportedComposition(f"no bound rule for {type(seq).__name__}")


def _interval_mul(r1, r2):
    prods = [a * b for a in r1 for b in r2]
    return min(prods), max(prods)


def _range_op(op, r):
    lo, hi = r
    if isinstance(op, Shift):
        return (min(lo, ZERO), max(hi, ZERO)) if op.power else r
    if isinstance(op, DiffIT):
        return min(lo, lo - hi), max(hi, hi - lo)
    if isinstance(op, (Cesaro, Dilation)):
        return r
    if isinstance(op, ConvexCombo):
        rs = [(w, _range_op(t, r)) for w, t in op.terms]
        return sum((w * a for w, (a, _) in rs), ZERO), sum((w * b for w, (_, b) in rs), ZERO)
    if isinstance(op, Compose):
        for t in reversed(op.ops):
            r = _range_op(t, r)
        return r
    raise UnsupportedComposition(f"no bound rule for operator {op!r}")


def bound(seq: SequenceExpr) -> Fraction:
    """Upper bound for ``sup_k |x_k|``; exact for leaves and normal forms."""
    lo, hi = value_range(seq)
    return max(abs(lo), abs(hi))


def limit_value(seq: SequenceExpr):
    """Closed-form almost-convergence limit if ``seq`` has an exact normal form.

    Eventually periodic sequences are almost convergent to the mean of one
    period (a constant tail is a period of length one).
    """
    nf = normal_form(seq)
    if nf is None:
        return None
    return nf[0].limit_mean()
