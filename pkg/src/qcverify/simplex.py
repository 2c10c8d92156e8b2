"""A small exact-rational simplex solver (dense tableau, Bland's rule).

Solves min c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0 with
Fraction arithmetic throughout; Bland's pivoting rule guarantees
termination.  Sized for the tiny hull-projection programs used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ParameterError

Row = list[Fraction]


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction]
    solution: Optional[tuple[Fraction, ...]]


def _pivot(tableau: list[Row], basis: list[int], row: int, col: int) -> None:
    factor = tableau[row][col]
    tableau[row] = [v / factor for v in tableau[row]]
    for r, line in enumerate(tableau):
        if r != row and line[col] != 0:
            coeff = line[col]
            tableau[r] = [a - coeff * b for a, b in zip(line, tableau[row])]
    basis[row] = col


def _simplex_phase(tableau: list[Row], basis: list[int], cost: Row) -> str:
    """Run simplex on rows: [A | b], minimizing cost (reduced in place)."""
    n_cols = len(tableau[0]) - 1
    while True:
        entering = next((j for j in range(n_cols) if cost[j] < 0), None)
        if entering is None:
            return "optimal"
        best: Optional[Fraction] = None
        leaving = None
        for r, line in enumerate(tableau):
            if line[entering] > 0:
                ratio = line[-1] / line[entering]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leaving]):
                    best, leaving = ratio, r
        if leaving is None:
            return "unbounded"
        _pivot(tableau, basis, leaving, entering)
        factor = cost[entering]
        for j in range(n_cols + 1):
            cost[j] -= factor * tableau[leaving][j]


def solve_lp(
    c: Sequence[Fraction],
    a_ub: Sequence[Sequence[Fraction]],
    b_ub: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
) -> LpResult:
    n = len(c)
    rows: list[Row] = []
    rhs: list[Fraction] = []
    slack_count = len(a_ub)
    for i, row in enumerate(a_ub):
        if len(row) != n:
            raise ParameterError("inequality row has wrong length")
        slack = [Fraction(0)] * slack_count
        slack[i] = Fraction(1)
        rows.append([Fraction(v) for v in row] + slack)
        rhs.append(Fraction(b_ub[i]))
    for i, row in enumerate(a_eq):
        if len(row) != n:
            raise ParameterError("equality row has wrong length")
        rows.append([Fraction(v) for v in row] + [Fraction(0)] * slack_count)
        rhs.append(Fraction(b_eq[i]))
    for r in range(len(rows)):
        if rhs[r] < 0:
            rows[r] = [-v for v in rows[r]]
            rhs[r] = -rhs[r]

    if not rows:
        if all(Fraction(v) >= 0 for v in c):
            zeros = tuple(Fraction(0) for _ in range(n))
            return LpResult("optimal", Fraction(0), zeros)
        return LpResult("unbounded", None, None)

    n_base = n + slack_count
    n_rows = len(rows)
    # Phase 1: artificial variables form the initial basis.
    tableau = [
        rows[r] + [Fraction(1) if a == r else Fraction(0) for a in range(n_rows)] + [rhs[r]]
        for r in range(n_rows)
    ]
    basis = [n_base + r for r in range(n_rows)]
    cost1 = [Fraction(0)] * (n_base + n_rows + 1)
    for a in range(n_rows):
        cost1[n_base + a] = Fraction(1)
    for r in range(n_rows):
        for j in range(n_base + n_rows + 1):
            cost1[j] -= tableau[r][j]
    status = _simplex_phase(tableau, basis, cost1)
    if status != "optimal" or -cost1[-1] != 0:
        return LpResult("infeasible", None, None)
    # Drive leftover artificials out of the basis, then drop their columns.
    for r in range(n_rows):
        if basis[r] >= n_base:
            col = next((j for j in range(n_base) if tableau[r][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, r, col)
    keep = [r for r in range(n_rows) if basis[r] < n_base]
    tableau = [tableau[r][: n_base] + [tableau[r][-1]] for r in keep]
    basis = [basis[r] for r in keep]

    cost2: Row = [Fraction(v) for v in c] + [Fraction(0)] * (slack_count + 1)
    for r, b in enumerate(basis):
        if cost2[b] != 0:
            factor = cost2[b]
            for j in range(n_base + 1):
                cost2[j] -= factor * tableau[r][j]
    status = _simplex_phase(tableau, basis, cost2)
    if status != "optimal":
        return LpResult(status, None, None)
    solution = [Fraction(0)] * n
    for r, b in enumerate(basis):
        if b < n:
            solution[b] = tableau[r][-1]
    return LpResult("optimal", -cost2[-1], tuple(solution))
