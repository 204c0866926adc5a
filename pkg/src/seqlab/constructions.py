"""Explicit sequences and index sets.

``thm21_sequence`` is the 0/1 sequence whose Cesaro means vanish while
every convex combination of dilations keeps seeing full blocks of ones;
``thm41_sequence`` is the indicator of ``U_k [4^k, 2*4^k)``, whose Cesaro
means oscillate between 1/3 and 2/3.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidArgs
from .operators import DiffIT, Dilation
from .rational import ceil_div
from .sequences import (
    Applied,
    Constant,
    GeometricIndicator,
    IndicatorUnion,
    IntInterval,
    Periodic,
    PrefixTail,
    SequenceExpr,
    eval_at,
)

MAX_DEPTH = 6


def alternating() -> PrefixTail:
    """``(1, 0, 1, 0, ...)``."""
    return PrefixTail((), Periodic((1, 0)))


def char_multiples(j: int) -> PrefixTail:
    """Indicator of ``{j, 2j, 3j, ...}``."""
    if j < 1:
        raise InvalidArgs(f"j must be >= 1, got {j}")
    return PrefixTail((), Periodic((0,) * (j - 1) + (1,)))


def thm41_sequence() -> GeometricIndicator:
    """Indicator of ``[1, 2) U [4, 8) U [16, 32) U ...``."""
    return GeometricIndicator(Fraction(1), Fraction(2), 4, 0)


def thm41_truncated(block_count: int) -> IndicatorUnion:
    if block_count < 1:
        raise InvalidArgs(f"block_count must be >= 1, got {block_count}")
    return IndicatorUnion(tuple(IntInterval(4**k, 2 * 4**k) for k in range(block_count)))


def _check_depth(n: int, allow_deep: bool):
    if n < 1:
        raise InvalidArgs(f"level must be >= 1, got {n}")
    if n > MAX_DEPTH and not allow_deep:
        raise InvalidArgs(f"level {n} > {MAX_DEPTH}; pass allow_deep=True to go beyond 2^(2^{MAX_DEPTH})")


def J_set(n: int) -> IntInterval:
    """``[2^(2^n) - n, 2^(2^n))``."""
    if n < 1:
        raise InvalidArgs(f"n must be >= 1, got {n}")
    top = 2 ** (2**n)
    return IntInterval(top - n, top)


def J_nk(n: int, k: int) -> list:
    """Smallest set ``S`` with ``sigma_k(chi_S) = 1`` on all of ``J_n``.

    ``(sigma_k chi_S)_m = chi_S(ceil(m/k))``, so ``S`` must contain exactly
    the points ``ceil(m/k)``, ``m in J_n``.
    """
    if not 1 <= k <= n:
        raise InvalidArgs(f"need 1 <= k <= n, got n={n}, k={k}")
    J = J_set(n)
    out = sorted({ceil_div(m, k) for m in J})
    ind = IndicatorUnion.from_indices(out)
    dil = Applied(Dilation(k), ind)
    assert all(eval_at(dil, m) == 1 for m in J), "J_nk postcondition failed"
    return out


def I_set(n: int, allow_deep: bool = False) -> IndicatorUnion:
    """Union of ``J_nk(n, k)`` over ``k = 1..n``."""
    _check_depth(n, allow_deep)
    pts = set()
    for k in range(1, n + 1):
        pts.update(J_nk(n, k))
    return IndicatorUnion.from_indices(pts)


def thm21_sequence(n_max: int = 5, allow_deep: bool = False) -> IndicatorUnion:
    """Indicator of ``I_1 U ... U I_{n_max}``.

    Truncation of the infinite union; it agrees with the full sequence on
    every index up to ``2^(2^n_max)`` because level ``n+1`` lies above
    ``2^(2^n)``.
    """
    _check_depth(n_max, allow_deep)
    levels = [I_set(n, allow_deep) for n in range(1, n_max + 1)]
    for lower, upper in zip(levels, levels[1:]):
        if not lower.intervals[-1].hi <= upper.intervals[0].lo:
            raise AssertionError("levels overlap")
    return IndicatorUnion(tuple(iv for lvl in levels for iv in lvl.intervals))


def diff_shift(y: SequenceExpr) -> Applied:
    """``s = (I - T) y``."""
    return Applied(DiffIT(), y)


def ones() -> PrefixTail:
    return PrefixTail((), Constant(1))
