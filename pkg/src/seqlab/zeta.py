"""The zeta-type weighted average ``Z_n(x) = log(2)/n * sum_{k>=1} x_k 2^(-k/n)``.

Sums start at ``k = 1`` (sequences are 1-based); dropping a ``k = 0`` term
changes ``Z_n`` by at most ``log(2) ||x|| / n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import forms
from .errors import InvalidArgs
from .sequences import SequenceExpr, bound, materialize, normal_form

LN2 = math.log(2.0)


@dataclass(frozen=True)
class ZetaValue:
    n: int
    value: float
    truncation_bound: float
    terms_used: int


def terms_needed(n: int, eps: float) -> int:
    return math.ceil(n * math.log2(1.0 / eps)) + n


def _geom(q_log: float, lo: int, hi: int, one_minus_q: float) -> float:
    """``sum_{k=lo}^{hi-1} q^k`` where ``q = exp(q_log)``."""
    if hi <= lo:
        return 0.0
    return math.exp(q_log * lo) * -math.expm1(q_log * (hi - lo)) / one_minus_q


def zeta_transform(seq: SequenceExpr, n: int, eps: float) -> ZetaValue:
    if n < 1 or not eps > 0:
        raise InvalidArgs(f"need n >= 1 and eps > 0, got n={n}, eps={eps}")
    K = terms_needed(n, eps)
    q_log = -LN2 / n
    one_minus_q = -math.expm1(q_log)

    nf = normal_form(seq, upto=K)
    if nf is not None:
        total = _form_sum(nf[0], K, q_log, one_minus_q)
    else:
        xs = materialize(seq, K)
        total = math.fsum(float(v) * math.exp(q_log * k) for k, v in enumerate(xs, start=1))

    trunc = float(bound(seq)) * (LN2 / n) * math.exp(q_log * K) / one_minus_q
    return ZetaValue(n, LN2 / n * total, trunc, K)


def _form_sum(form, K: int, q_log: float, one_minus_q: float) -> float:
    parts = []
    if isinstance(form, forms.StepForm):
        for lo, hi, v in form.runs:
            if lo > K:
                break
            parts.append(float(v) * _geom(q_log, lo, min(hi, K + 1), one_minus_q))
        if form.tail != 0 and form.tail_start <= K:
            parts.append(float(form.tail) * _geom(q_log, form.tail_start, K + 1, one_minus_q))
        return math.fsum(parts)

    L, P = form.L, form.P
    for k in range(1, min(L, K) + 1):
        parts.append(float(form.prefix[k - 1]) * math.exp(q_log * k))
    # residue class j of the tail: indices L+1+j, L+1+j+P, ... <= K
    step = q_log * P
    one_minus_qp = -math.expm1(step)
    for j, v in enumerate(form.period):
        first = L + 1 + j
        if v == 0 or first > K:
            continue
        count = (K - first) // P + 1
        parts.append(float(v) * math.exp(q_log * first) * -math.expm1(step * count) / one_minus_qp)
    return math.fsum(parts)
