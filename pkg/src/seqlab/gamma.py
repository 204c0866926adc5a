"""Sampled checks of the three conditions defining the operator class Gamma.

(i)   H >= 0 and H1 = 1
(ii)  H maps null sequences to null sequences
(iii) limsup_j (A (I - T) x)_j >= 0 for A in the convex hull of powers of H

These quantify over infinite index sets, so each check is a finite-scale
property test with an explicit horizon.  Condition (iii) is tested in the
quantitative form used for convex combinations of dilations: every window
of length ``r`` of ``A s`` (``s = (I - T) y``) has maximum at least
``-2 m ||y|| / r``, ``m`` being the largest dilation factor in ``A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsupportedOperator
from .operators import DiffIT, OperatorExpr, dilation_mixture
from .sequences import ONES, Applied, SequenceExpr, bound, from_values, materialize
from .windows import sliding_max


@dataclass(frozen=True)
class CheckReport:
    check: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: dict | None = None


def check_positive_unital(op: OperatorExpr, samples: list, horizon: int) -> CheckReport:
    for i, s in enumerate(samples):
        xs = materialize(s, horizon)
        bad = next((k for k, v in enumerate(xs, 1) if v < 0), None)
        if bad is not None:
            raise ValueError(f"sample {i} is negative at index {bad}")
        hs = materialize(Applied(op, s), horizon)
        bad = next((k for k, v in enumerate(hs, 1) if v < 0), None)
        if bad is not None:
            return CheckReport("positive_unital", False, {"horizon": horizon},
                               {"sample": i, "index": bad, "value": hs[bad - 1]})
    ones = materialize(Applied(op, ONES), horizon)
    bad = next((k for k, v in enumerate(ones, 1) if v != 1), None)
    if bad is not None:
        return CheckReport("positive_unital", False, {"horizon": horizon},
                           {"sample": "ones", "index": bad, "value": ones[bad - 1]})
    return CheckReport("positive_unital", True, {"horizon": horizon, "samples": len(samples)})


def null_samples(horizon: int) -> dict:
    """Built-in null sequences, exact up to ``horizon`` and zero beyond."""
    return {
        "1/k": from_values([Fraction(1, k) for k in range(1, horizon + 1)]),
        "1/k^2": from_values([Fraction(1, k * k) for k in range(1, horizon + 1)]),
        "2^-k": from_values([Fraction(1, 2**k) for k in range(1, 65)]),
        "1/log(k+1)": from_values(
            [Fraction(1 / math.log(k + 1)).limit_denominator(10**6) for k in range(1, horizon + 1)]
        ),
    }


def check_c0(op: OperatorExpr, null: list, horizon: int, tol: Fraction) -> CheckReport:
    """Max of ``|(H s)_k|`` over the top decade ``k in [horizon/10, horizon]``."""
    lo = max(1, horizon // 10)
    worst = (Fraction(0), None, None)
    for i, s in enumerate(null):
        hs = materialize(Applied(op, s), horizon)
        for k in range(lo, horizon + 1):
            v = abs(hs[k - 1])
            if v > worst[0]:
                worst = (v, i, k)
    passed = worst[0] <= tol
    details = {"horizon": horizon, "tol": tol, "tail_max": worst[0]}
    witness = None if passed else {"sample": worst[1], "index": worst[2], "value": worst[0]}
    return CheckReport("c0", passed, details, witness)


def check_condition_iii(op: OperatorExpr, samples: list, horizon: int, block_len: int) -> CheckReport:
    mix = dilation_mixture(op)
    if mix is None:
        raise UnsupportedOperator("condition (iii) check needs a convex combination of dilations")
    m = max(k for _, k in mix)
    worst = None
    for i, y in enumerate(samples):
        threshold = -2 * m * bound(y) / block_len
        As = materialize(Applied(op, Applied(DiffIT(), y)), horizon + block_len)
        for start, mx in enumerate(sliding_max(As, block_len)[: horizon + 1]):
            slack = mx - threshold
            if worst is None or slack < worst[0]:
                worst = (slack, i, start, mx, threshold)
    passed = worst[0] >= 0
    details = {"horizon": horizon, "block_len": block_len, "max_dilation": m, "min_slack": worst[0]}
    witness = {"sample": worst[1], "window_start": worst[2], "window_max": worst[3], "threshold": worst[4]}
    return CheckReport("condition_iii", passed, details, None if passed else witness)
