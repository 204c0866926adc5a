"""Operator expressions on bounded sequences and their algebraic simplification.

The operators act on 1-based sequences ``x = (x_1, x_2, ...)``:

* ``Shift(p)``      ``(T^p x)_k = x_{k-p}`` for ``k > p``, else 0
* ``DiffIT()``      ``((I - T) x)_k = x_k - x_{k-1}`` with ``x_0 = 0``
* ``Cesaro()``      ``(C x)_n = (x_1 + ... + x_n) / n``
* ``Dilation(m)``   ``(sigma_m x)_k = x_{ceil(k/m)}``
* ``ConvexCombo``   ``sum_i w_i A_i`` with positive weights summing to 1
* ``Compose(ops)``  ``ops[0] o ops[1] o ... o ops[-1]`` (rightmost applied first)

``Compose(())`` is the identity operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidArgs
from .rational import as_fraction

# Guard for the expansion of products of convex combinations of dilations.
MAX_EXPANSION = 10_000


@dataclass(frozen=True)
class Shift:
    power: int = 1

    def __post_init__(self):
        if not isinstance(self.power, int) or self.power < 0:
            raise InvalidArgs(f"shift power must be an integer >= 0, got {self.power!r}")


@dataclass(frozen=True)
class DiffIT:
    pass


@dataclass(frozen=True)
class Cesaro:
    pass


@dataclass(frozen=True)
class Dilation:
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidArgs(f"dilation factor must be an integer >= 1, got {self.m!r}")


@dataclass(frozen=True)
class ConvexCombo:
    terms: tuple

    def __post_init__(self):
        terms = tuple((as_fraction(w), op) for w, op in self.terms)
        if not terms:
            raise InvalidArgs("convex combination needs at least one term")
        for w, op in terms:
            if w <= 0:
                raise InvalidArgs(f"convex weight must be > 0, got {w}")
            if not isinstance(op, OPERATOR_TYPES):
                raise InvalidArgs(f"not an operator: {op!r}")
        total = sum(w for w, _ in terms)
        if total != 1:
            raise InvalidArgs(f"convex weights must sum to 1, got {total}")
        object.__setattr__(self, "terms", terms)


@dataclass(frozen=True)
class Compose:
    ops: tuple = ()

    def __post_init__(self):
        ops = tuple(self.ops)
        for op in ops:
            if not isinstance(op, OPERATOR_TYPES):
                raise InvalidArgs(f"not an operator: {op!r}")
        object.__setattr__(self, "ops", ops)


OperatorExpr = Union[Shift, DiffIT, Cesaro, Dilation, ConvexCombo, Compose]
OPERATOR_TYPES = (Shift, DiffIT, Cesaro, Dilation, ConvexCombo, Compose)

IDENTITY = Compose(())


def is_identity(op: OperatorExpr) -> bool:
    return (
        (isinstance(op, Compose) and not op.ops)
        or op == Shift(0)
        or op == Dilation(1)
    )


def convex(*pairs) -> ConvexCombo:
    """``convex((w1, A1), (w2, A2), ...)`` with weights given as ints/strings/Fractions."""
    return ConvexCombo(tuple((as_fraction(w), op) for w, op in pairs))


def simplify(op: OperatorExpr) -> OperatorExpr:
    """Rewrite ``op`` into an equivalent, flatter expression.

    Rules: nested compositions are flattened; adjacent dilations fuse
    (``sigma_a sigma_b = sigma_ab``) and adjacent shifts add; identity factors
    vanish; nested convex combinations flatten with multiplied weights and
    duplicate terms merge; a product made only of dilations and convex
    combinations of dilations expands into one convex combination of
    dilations.
    """
    if isinstance(op, Shift):
        return IDENTITY if op.power == 0 else op
    if isinstance(op, (DiffIT, Cesaro, Dilation)):
        return op
    if isinstance(op, ConvexCombo):
        return _simplify_convex(op)
    if isinstance(op, Compose):
        return _simplify_compose(op)
    raise InvalidArgs(f"not an operator: {op!r}")


def _merge_terms(terms) -> OperatorExpr:
    merged: dict = {}
    for w, t in terms:
        merged[t] = merged.get(t, Fraction(0)) + w
    if len(merged) == 1:
        return next(iter(merged))
    return ConvexCombo(tuple((w, t) for t, w in merged.items()))


def _simplify_convex(op: ConvexCombo) -> OperatorExpr:
    flat = []
    for w, t in op.terms:
        t = simplify(t)
        if isinstance(t, ConvexCombo):
            flat.extend((w * w2, t2) for w2, t2 in t.terms)
        else:
            flat.append((w, t))
    return _merge_terms(flat)


def _dilation_terms(op: OperatorExpr):
    """Return ``[(w, m), ...]`` if ``op`` is a (convex combination of) dilation(s)."""
    if isinstance(op, Dilation):
        return [(Fraction(1), op.m)]
    if is_identity(op):
        return [(Fraction(1), 1)]
    if isinstance(op, ConvexCombo):
        out = []
        for w, t in op.terms:
            sub = _dilation_terms(t)
            if sub is None:
                return None
            out.extend((w * w2, m) for w2, m in sub)
        return out
    return None


def _simplify_compose(op: Compose) -> OperatorExpr:
    flat = []
    for t in op.ops:
        t = simplify(t)
        if isinstance(t, Compose):
            flat.extend(t.ops)
        else:
            flat.append(t)

    fused = []
    for t in flat:
        if is_identity(t):
            continue
        prev = fused[-1] if fused else None
        if isinstance(t, Dilation) and isinstance(prev, Dilation):
            fused[-1] = Dilation(prev.m * t.m)
        elif isinstance(t, Shift) and isinstance(prev, Shift):
            fused[-1] = Shift(prev.power + t.power)
        else:
            fused.append(t)

    if not fused:
        return IDENTITY
    if len(fused) == 1:
        return fused[0]

    factors = [_dilation_terms(t) for t in fused]
    if all(f is not None for f in factors):
        size = 1
        for f in factors:
            size *= len(f)
        if size <= MAX_EXPANSION:
            acc = [(Fraction(1), 1)]
            for f in factors:
                acc = [(w1 * w2, m1 * m2) for w1, m1 in acc for w2, m2 in f]
            return _merge_terms((w, Dilation(m)) for w, m in acc)
    return Compose(tuple(fused))


def dilation_mixture(op: OperatorExpr):
    """Return ``[(weight, m), ...]`` when ``op`` simplifies to a convex combination
    of dilations (the identity counts as ``sigma_1``), else ``None``."""
    return _dilation_terms(simplify(op))
