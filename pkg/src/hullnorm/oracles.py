"""Slow, independent reference computations.

Each function here recomputes a quantity straight from its definition with
plain loops, sharing no code with the fast paths it is used to check (only
the monoid table and the hull's closure operator are taken as given).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence


def subadditive_pair(table, values: Sequence) -> Optional[tuple[int, int]]:
    n = len(values)
    for f in range(n):
        for g in range(f, n):
            if values[int(table[f][g])] > values[f] + values[g]:
                return f, g
    return None


def _members_of(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def sublevel(values: Sequence, r, strict: bool = False) -> int:
    out = 0
    for i, v in enumerate(values):
        if (v < r) if strict else (v <= r):
            out |= 1 << i
    return out


def lower_continuity_failure(close, values: Sequence):
    """First level ``r`` (over all attained values and 0) whose sublevel set is not closed."""
    for r in sorted(set(v for v in values if v != float("inf")) | {Fraction(0)}):
        s = sublevel(values, r)
        if close(s) != s:
            return r
    return None


def set_sum(table, a: int, b: int, n: int) -> int:
    out = 0
    for x in _members_of(a, n):
        for y in _members_of(b, n):
            out |= 1 << int(table[x][y])
    return out


def level_set(table, zero: int, n: int, prefix: Sequence[int], tail: int, q: Fraction,
              grid_exp: int) -> int:
    """``V_q + T`` from the binary expansion of ``q``, extended by the tail."""
    k = q * (1 << grid_exp)
    assert k.denominator == 1
    k = int(k)
    at = lambda i: prefix[i] if i < len(prefix) else tail
    acc = 1 << zero
    for _ in range(k >> grid_exp):
        acc = set_sum(table, acc, at(0), n)
    for i in range(1, grid_exp + 1):
        if k >> (grid_exp - i) & 1:
            acc = set_sum(table, acc, at(i), n)
    return set_sum(table, acc, tail, n)


def string_pseudo_norm(table, zero: int, n: int, prefix: Sequence[int], tail: int,
                       grid_exp: int) -> tuple:
    """``min{q ≤ 1 on the grid : e ∈ V_q + T}``, 0 on the tail, else 1."""
    steps = 1 << grid_exp
    levels = [level_set(table, zero, n, prefix, tail, Fraction(k, steps), grid_exp)
              for k in range(1, steps + 1)]
    out = []
    for e in range(n):
        if tail >> e & 1:
            out.append(Fraction(0))
            continue
        hit = next((Fraction(k, steps) for k, lv in enumerate(levels, start=1) if lv >> e & 1), None)
        out.append(hit if hit is not None else Fraction(1))
    return tuple(out)


def largest_grid_minorant(close, values: Sequence, grid: Sequence[Fraction]) -> tuple:
    """Pointwise max of every grid-valued lower-continuous ``g ≤ values``.

    Enumerates ``∏ |{t ∈ grid : t ≤ values[x]}|`` functions; meant for
    carriers of at most six points.
    """
    n = len(values)
    choices = [[t for t in grid if t <= values[x]] for x in range(n)]
    best = [None] * n
    for g in itertools.product(*choices):
        ok = True
        for r in set(g) | {Fraction(0)}:
            s = sublevel(g, r)
            if close(s) != s:
                ok = False
                break
        if ok:
            best = [t if b is None or t > b else b for t, b in zip(g, best)]
    return tuple(best)


def core(point_closure, a: int, n: int) -> int:
    """Points whose closure stays inside ``a``."""
    out = 0
    for x in range(n):
        if point_closure(x) & ~a == 0:
            out |= 1 << x
    return out


def upper_regularization(point_closure, values: Sequence) -> tuple:
    return tuple(max(values[y] for y in _members_of(point_closure(x), len(values)))
                 for x in range(len(values)))
