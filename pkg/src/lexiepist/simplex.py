"""Exact two-phase simplex over the rationals with Bland's anti-cycling rule.

Problems have the shape ``maximize c.x  subject to  A x = b, x >= 0``. The
sizes met in this package are tiny (a handful of rows and columns), so the
dense tableau is kept as plain lists of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        row = self.rows[r]
        p = row[col]
        if p != 1:
            self.rows[r] = row = [x / p for x in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = col

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        # c_j - c_B B^-1 A_j, for maximization
        red = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                red = [x - cb * a for x, a in zip(red, self.rows[r])]
        return red

    def optimize(self, cost: Sequence[Fraction], allowed: int) -> str:
        """Run simplex iterations on columns ``< allowed``."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in range(allowed) if red[j] > 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)

    def solution(self, n: int) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * n
        for r, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[r]
        return tuple(x)


def maximize(
    c: Sequence[Fraction],
    A_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_eq x = b_eq`` and ``x >= 0``, exactly."""
    n = len(c)
    m = len(A_eq)
    if len(b_eq) != m or any(len(row) != n for row in A_eq):
        raise ValueError("inconsistent LP dimensions")
    cost = [Fraction(x) for x in c]
    rows, rhs = [], []
    for row, b in zip(A_eq, b_eq):
        row = [Fraction(x) for x in row]
        b = Fraction(b)
        if b < 0:
            row, b = [-x for x in row], -b
        rows.append(row)
        rhs.append(b)

    # phase 1: one artificial per row, maximize -(sum of artificials)
    full = [row + [Fraction(int(i == r)) for i in range(m)] for r, row in enumerate(rows)]
    tab = _Tableau(full, rhs, [n + r for r in range(m)])
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    tab.optimize(phase1, n + m)
    infeasibility = sum((tab.rhs[r] for r, b in enumerate(tab.basis) if b >= n), Fraction(0))
    if infeasibility > 0:
        return LPResult(INFEASIBLE)

    # drive remaining (zero-valued) artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    tab.rows = [row[:n] for row in tab.rows]

    status = tab.optimize(cost, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = tab.solution(n)
    return LPResult(OPTIMAL, x, sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0)))
