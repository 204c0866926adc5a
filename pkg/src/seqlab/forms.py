"""Finite normal forms for sequences with a finite description.

Two shapes cover everything the window engine can treat exactly:

``PeriodicForm``
    dense prefix followed by a periodic tail.  Good for small periodic
    patterns such as ``(1, 0, 1, 0, ...)`` or the indicator of ``jN``.

``StepForm``
    sparse list of constant runs ``[lo, hi) -> v`` followed by a constant
    tail from ``tail_start`` on; zero in the gaps.  Indices are Python ints,
    so runs may sit at ``2**(2**n)``.

Both are closed under shifts, first differences, dilations and pointwise
arithmetic; mixing the two converts the step form to a periodic one when
that stays small.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Callable, Sequence

# Largest dense prefix/period a normal form may carry.
DENSE_CAP = 1_000_000

ZERO = Fraction(0)


@dataclass(frozen=True)
class PeriodicForm:
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")

    @cached_property
    def _pcum(self):
        return _cumulative(self.prefix)

    @cached_property
    def _qcum(self):
        return _cumulative(self.period)

    @property
    def L(self) -> int:
        return len(self.prefix)

    @property
    def P(self) -> int:
        return len(self.period)

    def value(self, k: int) -> Fraction:
        if k <= self.L:
            return self.prefix[k - 1]
        return self.period[(k - self.L - 1) % self.P]

    def prefix_sum(self, k: int) -> Fraction:
        if k <= self.L:
            return self._pcum[k]
        q, r = divmod(k - self.L, self.P)
        return self._pcum[-1] + q * self._qcum[-1] + self._qcum[r]

    def values(self, h: int) -> list:
        out = list(self.prefix[:h])
        while len(out) < h:
            out.extend(self.period[: h - len(out)])
        return out

    def value_range(self):
        vals = self.prefix + self.period
        return min(vals), max(vals)

    def limit_mean(self) -> Fraction:
        return sum(self.period, ZERO) / self.P

    def compact(self) -> "PeriodicForm":
        period = _minimal_period(self.period)
        prefix = list(self.prefix)
        while prefix and prefix[-1] == period[-1]:
            prefix.pop()
            period = (period[-1],) + period[:-1]
        return PeriodicForm(tuple(prefix), period)


@dataclass(frozen=True)
class StepForm:
    runs: tuple  # ((lo, hi, value), ...) sorted, disjoint, hi <= tail_start, value != 0
    tail_start: int = 1
    tail: Fraction = ZERO

    @cached_property
    def _los(self):
        return tuple(r[0] for r in self.runs)

    @cached_property
    def _cum(self):
        cum = [ZERO]
        for lo, hi, v in self.runs:
            cum.append(cum[-1] + (hi - lo) * v)
        return tuple(cum)

    def _run_index(self, k: int) -> int:
        return bisect.bisect_right(self._los, k) - 1

    def value(self, k: int) -> Fraction:
        if k >= self.tail_start:
            return self.tail
        i = self._run_index(k)
        if i >= 0:
            lo, hi, v = self.runs[i]
            if k < hi:
                return v
        return ZERO

    def prefix_sum(self, k: int) -> Fraction:
        if k <= 0:
            return ZERO
        total = ZERO
        if k >= self.tail_start:
            total += (k - self.tail_start + 1) * self.tail
            k = self.tail_start - 1
        i = self._run_index(k)
        if i < 0:
            return total
        lo, hi, v = self.runs[i]
        return total + self._cum[i] + (min(hi, k + 1) - lo) * v

    def values(self, h: int) -> list:
        out = [ZERO] * h
        for lo, hi, v in self.runs:
            if lo > h:
                break
            for k in range(lo, min(hi, h + 1)):
                out[k - 1] = v
        for k in range(self.tail_start, h + 1):
            out[k - 1] = self.tail
        return out

    def breakpoints(self) -> list:
        """Indices ``k`` where the prefix sum ``S(k)`` may change slope."""
        pts = {0, self.tail_start - 1}
        for lo, hi, _ in self.runs:
            pts.add(lo - 1)
            pts.add(hi - 1)
        return sorted(pts)

    def value_range(self):
        vals = [v for _, _, v in self.runs]
        covered = sum(hi - lo for lo, hi, _ in self.runs)
        if covered < self.tail_start - 1:
            vals.append(ZERO)
        vals.append(self.tail)
        return min(vals), max(vals)

    def limit_mean(self) -> Fraction:
        return self.tail

    def to_periodic(self):
        if self.tail_start - 1 > DENSE_CAP:
            return None
        return PeriodicForm(tuple(self.values(self.tail_start - 1)), (self.tail,))


def _cumulative(vals: Sequence) -> tuple:
    out = [ZERO]
    for v in vals:
        out.append(out[-1] + v)
    return tuple(out)


def _minimal_period(period: tuple) -> tuple:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


def step_from_values(values: Sequence, tail_start: int | None = None, tail=ZERO, offset: int = 1) -> StepForm:
    """Build a step form from dense values placed at ``offset, offset+1, ...``."""
    runs = []
    k = offset
    for v in values:
        v = Fraction(v)
        if v != 0:
            if runs and runs[-1][1] == k and runs[-1][2] == v:
                runs[-1][1] = k + 1
            else:
                runs.append([k, k + 1, v])
        k += 1
    if tail_start is None:
        tail_start = k
    return StepForm(tuple(tuple(r) for r in runs), tail_start, Fraction(tail))


def periodic_to_step(form: PeriodicForm):
    form = form.compact()
    if form.P != 1:
        return None
    return step_from_values(form.prefix, form.L + 1, form.period[0])


def shift(form, p: int):
    if p == 0:
        return form
    if isinstance(form, StepForm):
        runs = tuple((lo + p, hi + p, v) for lo, hi, v in form.runs)
        return StepForm(runs, form.tail_start + p, form.tail)
    if form.L + p > DENSE_CAP:
        return None
    return PeriodicForm((ZERO,) * p + form.prefix, form.period)


def dilate(form, m: int):
    if m == 1:
        return form
    if isinstance(form, StepForm):
        runs = tuple((m * (lo - 1) + 1, m * (hi - 1) + 1, v) for lo, hi, v in form.runs)
        return StepForm(runs, m * (form.tail_start - 1) + 1, form.tail)
    if m * (form.L + form.P) > DENSE_CAP:
        return None
    prefix = tuple(v for v in form.prefix for _ in range(m))
    period = tuple(v for v in form.period for _ in range(m))
    return PeriodicForm(prefix, period).compact()


def difference(form):
    """Normal form of ``(I - T) x`` with the convention ``x_0 = 0``."""
    if isinstance(form, StepForm):
        pts = {form.tail_start}
        for lo, hi, _ in form.runs:
            pts.add(lo)
            pts.add(hi)
        runs = []
        for k in sorted(pts):
            d = form.value(k) - (form.value(k - 1) if k > 1 else ZERO)
            if d != 0:
                runs.append((k, k + 1, d))
        return StepForm(tuple(runs), form.tail_start + 1, ZERO)
    L, P = form.L, form.P
    if L + P + 1 > DENSE_CAP:
        return None
    vals = [form.value(k) for k in range(1, L + P + 2)]
    diffs = [vals[0]] + [vals[i] - vals[i - 1] for i in range(1, len(vals))]
    return PeriodicForm(tuple(diffs[: L + 1]), tuple(diffs[L + 1:])).compact()


def combine(fn: Callable, forms: list):
    """Pointwise ``fn(a_k, b_k, ...)`` over normal forms, or None if too large."""
    if all(isinstance(f, StepForm) for f in forms):
        return _combine_step(fn, forms)
    periodic = []
    for f in forms:
        if isinstance(f, StepForm):
            f = f.to_periodic()
            if f is None:
                return None
        periodic.append(f)
    L = max(f.L for f in periodic)
    P = 1
    for f in periodic:
        P = math.lcm(P, f.P)
    if L + P > DENSE_CAP:
        return None
    vals = [fn(*(f.value(k) for f in periodic)) for k in range(1, L + P + 1)]
    out = PeriodicForm(tuple(vals[:L]), tuple(vals[L:])).compact()
    return periodic_to_step(out) or out


def _combine_step(fn: Callable, forms: list) -> StepForm:
    T = max(f.tail_start for f in forms)
    pts = {1, T}
    for f in forms:
        pts.add(f.tail_start)
        for lo, hi, _ in f.runs:
            pts.add(lo)
            pts.add(hi)
    pts = sorted(p for p in pts if p <= T)
    runs = []
    for a, b in zip(pts, pts[1:]):
        v = fn(*(f.value(a) for f in forms))
        if v == 0:
            continue
        if runs and runs[-1][1] == a and runs[-1][2] == v:
            runs[-1][1] = b
        else:
            runs.append([a, b, v])
    tail = fn(*(f.tail for f in forms))
    # absorb a final run that matches the tail
    while runs and runs[-1][1] == T and runs[-1][2] == tail:
        T = runs.pop()[0]
    return StepForm(tuple(tuple(r) for r in runs), T, tail)
