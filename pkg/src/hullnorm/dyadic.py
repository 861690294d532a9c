"""Exact dyadic values for pseudo-norms and graded functions.

Values are :class:`fractions.Fraction` instances whose denominators are
powers of two, plus the sentinel :data:`TOP` (``math.inf``) standing for
"unbounded".  ``TOP`` compares correctly against fractions, so ``min``/``max``
and sublevel tests need no special casing.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

TOP = math.inf

Value = Union[Fraction, float]  # float only ever as TOP

ZERO = Fraction(0)
ONE = Fraction(1)


class OffGrid(ValueError):
    pass


def is_top(v) -> bool:
    return isinstance(v, float) and math.isinf(v) and v > 0


def is_dyadic(v) -> bool:
    if is_top(v):
        return True
    q = Fraction(v)
    d = q.denominator
    return d & (d - 1) == 0


def dyadic(num: int, exp: int = 0) -> Fraction:
    """``num / 2**exp``."""
    return Fraction(num, 1 << exp)


def exponent(v) -> int:
    """Smallest ``k`` with ``v * 2**k`` integral (``v`` must be dyadic)."""
    q = Fraction(v)
    if not is_dyadic(q):
        raise OffGrid(f"{v} is not a dyadic rational")
    return q.denominator.bit_length() - 1


def on_grid(v, grid_exp: int) -> bool:
    return not is_top(v) and (Fraction(v) * (1 << grid_exp)).denominator == 1


def coerce(v) -> Value:
    """Normalise user input (int, str, Fraction, ``"top"``) to a value."""
    if is_top(v):
        return TOP
    if isinstance(v, str):
        s = v.strip()
        if s.lower() in ("top", "inf"):
            return TOP
        return Fraction(s)
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def clip(v) -> Fraction:
    """``v ∧ 1``."""
    return ONE if v >= 1 else Fraction(v)


def add(a, b) -> Value:
    if is_top(a) or is_top(b):
        return TOP
    return a + b


def scale(s, v) -> Value:
    """``s * v`` with ``0 * TOP = 0``."""
    if s == 0:
        return ZERO
    if is_top(v):
        return TOP
    return Fraction(s) * v


def fmt(v) -> str:
    """Render as ``<numerator>/<2^k>``, or ``top``."""
    if is_top(v):
        return "top"
    q = Fraction(v)
    return f"{q.numerator}/{q.denominator}"
