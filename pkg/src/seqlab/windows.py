"""Exact window-sum analysis.

For a bounded sequence ``x`` and a window length ``n`` let

    f(n) = sup_m  x_{m+1} + ... + x_{m+n}
    g(n) = inf_m  x_{m+1} + ... + x_{m+n}        (m >= 0)

``f`` is subadditive and ``g`` superadditive, so by Fekete's lemma
``p(x) = lim f(n)/n = inf_n f(n)/n`` and ``q(x) = lim g(n)/n = sup_n g(n)/n``.
Any finite set of exactly computed ``f(n), g(n)`` therefore gives a sound
outer interval ``[max g(n)/n, min f(n)/n]`` for ``[q(x), p(x)]``, the set of
values of all Banach limits at ``x``.

Extrema over *all* ``m`` are exact whenever the sequence has a finite
normal form (see ``forms``): for eventually periodic sequences the window
sum is periodic in ``m`` past the prefix, and for step sequences it is
piecewise linear in ``m`` between finitely many breakpoints.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import forms
from .errors import InvalidArgs
from .operators import DiffIT, dilation_mixture
from .errors import UnsupportedOperator
from .sequences import (
    Applied,
    GeometricIndicator,
    IntInterval,
    SequenceExpr,
    add,
    eval_at,
    materialize,
    normal_form,
    prefix_sum,
)

DEFAULT_SCAN = 2**17
MAX_REGION = 10**6


@dataclass(frozen=True)
class WindowStats:
    n: int
    sup_sum: Fraction
    inf_sum: Fraction
    sup_witness: int
    inf_witness: int
    exact: bool
    scan_horizon: Optional[int] = None

    @property
    def sup_avg(self) -> Fraction:
        return self.sup_sum / self.n

    @property
    def inf_avg(self) -> Fraction:
        return self.inf_sum / self.n


@dataclass(frozen=True)
class BoundsEnclosure:
    q_lower: Fraction
    p_upper: Fraction
    n_used: int
    per_n: tuple
    exact: bool
    closed_form: Optional[Fraction] = None

    @property
    def gap_upper(self) -> Fraction:
        return self.p_upper - self.q_lower

    def contains(self, other: "BoundsEnclosure") -> bool:
        return self.q_lower <= other.q_lower and other.p_upper <= self.p_upper


@dataclass(frozen=True)
class AlmostConvergent:
    value: Fraction
    reason: str


@dataclass(frozen=True)
class NotAlmostConvergent:
    gap_lower: Fraction
    reason: str
    witnesses: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    decayed_below_tol: bool = False


@dataclass(frozen=True)
class LorentzReport:
    table: tuple  # ((n, D(n)), ...)
    verdict: object
    exact: bool
    subadditive: Optional[bool] = None


def window_sum(seq: SequenceExpr, m: int, n: int) -> Fraction:
    """``x_{m+1} + ... + x_{m+n}``."""
    if m < 0 or n < 1:
        raise InvalidArgs(f"need m >= 0 and n >= 1, got m={m}, n={n}")
    return prefix_sum(seq, m + n) - prefix_sum(seq, m)


def _extrema_over(form, n: int, candidates) -> tuple:
    best_hi = best_lo = None
    for m in candidates:
        w = form.prefix_sum(m + n) - form.prefix_sum(m)
        if best_hi is None or w > best_hi[0]:
            best_hi = (w, m)
        if best_lo is None or w < best_lo[0]:
            best_lo = (w, m)
    return best_hi, best_lo


def _candidates(form, n: int, limit: Optional[int]):
    if isinstance(form, forms.PeriodicForm):
        top = form.L + form.P
        if limit is not None:
            top = min(top, limit + 1)
        return range(top)
    pts = set()
    for b in form.breakpoints():
        pts.add(b)
        pts.add(b - n)
    if limit is not None:
        pts.add(limit)
        return sorted(m for m in pts if 0 <= m <= limit)
    return sorted(m for m in pts if m >= 0)


def window_extrema(seq: SequenceExpr, n: int, scan_horizon: Optional[int] = None) -> WindowStats:
    """Sup and inf of the length-``n`` window sum over start offsets ``m``.

    Exact over all ``m >= 0`` when ``seq`` has an exact normal form;
    otherwise over ``0 <= m <= scan_horizon`` (``exact=False``).
    """
    if n < 1:
        raise InvalidArgs(f"window length must be >= 1, got {n}")
    nf = normal_form(seq)
    if nf is not None:
        form = nf[0]
        hi, lo = _extrema_over(form, n, _candidates(form, n, None))
        return WindowStats(n, hi[0], lo[0], hi[1], lo[1], True)

    H = DEFAULT_SCAN if scan_horizon is None else scan_horizon
    nf = normal_form(seq, upto=H + n)
    if nf is not None:
        form = nf[0]
        hi, lo = _extrema_over(form, n, _candidates(form, n, H))
        return WindowStats(n, hi[0], lo[0], hi[1], lo[1], False, H)

    xs = materialize(seq, H + n)
    return _scan(xs, n, H)


def _scan(xs, n: int, H: int) -> WindowStats:
    w = sum(xs[:n], Fraction(0))
    hi = lo = (w, 0)
    for m in range(1, H + 1):
        w += xs[m + n - 1] - xs[m - 1]
        if w > hi[0]:
            hi = (w, m)
        if w < lo[0]:
            lo = (w, m)
    return WindowStats(n, hi[0], lo[0], hi[1], lo[1], False, H)


def sucheston_bounds(seq: SequenceExpr, n_max: int, scan_horizon: Optional[int] = None) -> BoundsEnclosure:
    """Outer enclosure ``[max_n g(n)/n, min_n f(n)/n]`` over ``n = 1..n_max``."""
    if n_max < 1:
        raise InvalidArgs(f"n_max must be >= 1, got {n_max}")
    stats = [window_extrema(seq, n, scan_horizon) for n in range(1, n_max + 1)]
    q = max(s.inf_avg for s in stats)
    p = min(s.sup_avg for s in stats)
    exact = all(s.exact for s in stats)
    closed = _closed_form(seq) if exact else None
    return BoundsEnclosure(q, p, n_max, tuple(stats), exact, closed)


def _closed_form(seq):
    nf = normal_form(seq)
    return None if nf is None else nf[0].limit_mean()


def geometric_grid(n_max: int) -> list:
    grid, n = [], 1
    while n <= n_max:
        grid.append(n)
        n *= 2
    return grid


def lorentz_check(seq: SequenceExpr, n_max: int, tol: Fraction = Fraction(1, 100),
                  scan_horizon: Optional[int] = None) -> LorentzReport:
    """Tabulate ``D(n) = (f(n) - g(n)) / n`` on ``n = 1, 2, 4, ...`` and decide.

    ``x`` is almost convergent iff ``D(n) -> 0``.  The verdict is only
    positive/negative when certified: an eventually periodic closed form
    (or an exact ``D(n) = 0``) for convergence, a structural run/gap
    certificate for divergence.
    """
    grid = geometric_grid(n_max)
    stats = [window_extrema(seq, n, scan_horizon) for n in grid]
    table = tuple((s.n, (s.sup_sum - s.inf_sum) / s.n) for s in stats)
    exact = all(s.exact for s in stats)

    subadditive = None
    if exact:
        h = {s.n: s.sup_sum - s.inf_sum for s in stats}
        subadditive = all(h[2 * n] <= 2 * h[n] for n in grid if 2 * n in h)

    closed = _closed_form(seq)
    if closed is not None:
        verdict = AlmostConvergent(closed, "eventually periodic: limit is the mean of one period")
    else:
        zero = next((s for s in stats if s.exact and s.sup_sum == s.inf_sum), None)
        if zero is not None:
            verdict = AlmostConvergent(zero.sup_avg, f"D({zero.n}) = 0 exactly")
        else:
            cert = _divergence_certificate(seq, grid[-1])
            if cert is not None:
                verdict = cert
            else:
                verdict = Inconclusive("finite scan cannot decide uniform convergence",
                                       decayed_below_tol=table[-1][1] <= tol)
    return LorentzReport(table, verdict, exact, subadditive)


def _divergence_certificate(seq, n: int):
    """Certificate for geometric indicator families with growing runs and gaps.

    If ``a < b < a*ratio`` then the ones-runs have length at least
    ``(b - a) r^k - 1`` and the zero gaps at least ``(a r - b) r^k - 1``, both
    unbounded, so every window length admits an all-ones window and an
    all-zeros window: ``f(n) = n``, ``g(n) = 0`` for every ``n``, hence
    ``p = 1`` and ``q = 0``.
    """
    if not isinstance(seq, GeometricIndicator) or not seq.b < seq.a * seq.ratio:
        return None
    ones = zeros = None
    e = seq.start
    while ones is None or zeros is None:
        lo, hi = seq.block(e)
        nlo, _ = seq.block(e + 1)
        if ones is None and hi - lo >= n:
            ones = lo - 1
        if zeros is None and nlo - hi >= n:
            zeros = hi - 1
        e += 1
    assert window_sum(seq, ones, n) == n and window_sum(seq, zeros, n) == 0
    return NotAlmostConvergent(
        Fraction(1),
        "ones-runs and zero-gaps grow without bound, so f(n) = n and g(n) = 0 for all n",
        {"n": n, "ones_window_start": ones, "zeros_window_start": zeros},
    )


def cesaro_profile(seq: SequenceExpr, indices) -> list:
    """Exact Cesaro means ``(Cx)_j`` at each requested ``j``."""
    indices = list(indices)
    if not indices:
        raise InvalidArgs("indices must be nonempty")
    out = []
    for j in indices:
        if j < 1:
            raise InvalidArgs(f"index must be >= 1, got {j}")
        out.append((j, prefix_sum(seq, j) / j))
    return out


def sliding_max(values, width: int) -> list:
    """Maxima of every length-``width`` window, in order of window start."""
    out, dq = [], deque()
    for i, v in enumerate(values):
        while dq and values[dq[-1]] <= v:
            dq.pop()
        dq.append(i)
        if dq[0] <= i - width:
            dq.popleft()
        if i >= width - 1:
            out.append(values[dq[0]])
    return out


def dilation_witness_check(x: SequenceExpr, op, y: SequenceExpr, region: IntInterval):
    """Max of ``(A(x + (I - T) y))_j`` over ``j`` in ``region``, with an attaining ``j``."""
    if dilation_mixture(op) is None:
        raise UnsupportedOperator("operator must simplify to a convex combination of dilations")
    if len(region) > MAX_REGION:
        raise InvalidArgs(f"region has {len(region)} points, cap is {MAX_REGION}")
    expr = Applied(op, add(x, Applied(DiffIT(), y)))
    best = None
    for j in region:
        v = eval_at(expr, j)
        if best is None or v > best[0]:
            best = (v, j)
    return best
