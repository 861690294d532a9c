"""Two-phase simplex over the rationals.

Solves ``min c·x  s.t.  A x = b, x ≥ 0`` with :class:`fractions.Fraction`
throughout and Bland's rule (no cycling).  Every answer carries a certificate
that can be checked without trusting the solver:

* optimal: primal ``x`` and dual ``y`` with ``Aᵀy ≤ c`` and ``c·x = b·y``;
* infeasible: a Farkas vector ``y`` with ``Aᵀy ≤ 0`` and ``b·y > 0``;
* unbounded: a feasible ``x`` and a ray ``r ≥ 0`` with ``A r = 0``, ``c·r < 0``.

Problem sizes here are a handful of rows, so a dense tableau is fine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple] = None
    y: Optional[tuple] = None
    ray: Optional[tuple] = None


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        p = row[j]
        self.rows[r] = row = [v / p for v in row]
        self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r and other[j] != 0:
                k = other[j]
                self.rows[i] = [a - k * b for a, b in zip(other, row)]
                self.rhs[i] -= k * self.rhs[r]
        self.basis[r] = j

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        cb = [cost[b] for b in self.basis]
        ncols = len(self.rows[0])
        return [cost[j] - sum((cb[i] * self.rows[i][j] for i in range(len(self.rows))), Fraction(0))
                for j in range(ncols)]

    def run(self, cost: Sequence[Fraction], allowed: int) -> Optional[int]:
        """Minimise; returns an entering column if the problem is unbounded."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in range(allowed) if red[j] < 0), None)
            if entering is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (self.rhs[i] / row[entering], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)


def solve(c: Sequence, a: Sequence[Sequence], b: Sequence) -> LPResult:
    c = [Fraction(v) for v in c]
    a = [[Fraction(v) for v in row] for row in a]
    b = [Fraction(v) for v in b]
    m, n = len(a), len(c)
    sign = [(-1 if bi < 0 else 1) for bi in b]
    rows = [[sign[i] * v for v in a[i]] + [Fraction(int(k == i)) for k in range(m)] for i in range(m)]
    rhs = [sign[i] * b[i] for i in range(m)]
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1, n + m)
    w = sum((tab.rhs[i] for i in range(m) if tab.basis[i] >= n), Fraction(0))
    if w > 0:
        y = _duals(tab, phase1, n, sign)
        return LPResult(INFEASIBLE, y=tuple(y))

    for i in range(m):
        if tab.basis[i] >= n:
            j = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if j is not None:
                tab.pivot(i, j)

    phase2 = c + [Fraction(0)] * m
    entering = tab.run(phase2, n)
    x = [Fraction(0)] * n
    for i, bv in enumerate(tab.basis):
        if bv < n:
            x[bv] = tab.rhs[i]
    if entering is not None:
        ray = [Fraction(0)] * n
        ray[entering] = Fraction(1)
        for i, bv in enumerate(tab.basis):
            if bv < n:
                ray[bv] = -tab.rows[i][entering]
        return LPResult(UNBOUNDED, x=tuple(x), ray=tuple(ray))
    y = _duals(tab, phase2, n, sign)
    return LPResult(OPTIMAL, value=_dot(c, x), x=tuple(x), y=tuple(y))


def _duals(tab: _Tableau, cost: Sequence[Fraction], n: int, sign: Sequence[int]) -> list[Fraction]:
    """``c_B B⁻¹``, read off the artificial columns, mapped back through row flips."""
    m = len(tab.rows)
    cb = [cost[bv] for bv in tab.basis]
    return [sign[k] * sum((cb[i] * tab.rows[i][n + k] for i in range(m)), Fraction(0)) for k in range(m)]


def verify(c: Sequence, a: Sequence[Sequence], b: Sequence, res: LPResult) -> bool:
    """Check the certificate in ``res`` from scratch."""
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    cols = list(zip(*a)) if a else []
    if res.status == INFEASIBLE:
        y = res.y
        return all(_dot(col, y) <= 0 for col in cols) and _dot(b, y) > 0
    x = res.x
    if any(v < 0 for v in x) or any(_dot(row, x) != bi for row, bi in zip(a, b)):
        return False
    if res.status == UNBOUNDED:
        r = res.ray
        return (all(v >= 0 for v in r) and all(_dot(row, r) == 0 for row in a)
                and _dot(c, r) < 0)
    y = res.y
    return all(_dot(col, y) <= cj for col, cj in zip(cols, c)) and _dot(c, x) == _dot(b, y) == res.value
