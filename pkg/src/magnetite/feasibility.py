"""Exact rational feasibility for systems ``A x = b, x >= 0``.

Phase I of the simplex method over :class:`fractions.Fraction` with
Bland's anti-cycling rule.  Problems here have a handful of rows and
columns, so a dense tableau is fine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def nonnegative_solution(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Return a basic solution of ``A x = b, x >= 0`` or None if infeasible."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return []
    T: list[list[Fraction]] = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * a) for a in A[i]]
        row += [Fraction(int(k == i)) for k in range(m)]
        row.append(Fraction(sign * b[i]))
        T.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of the auxiliary objective sum(artificials)
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    red = [cost[j] - sum(T[i][j] for i in range(m)) for j in range(width)]

    while True:
        enter = next((j for j in range(width) if red[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # phase I objective is bounded below by zero
            raise AssertionError("unbounded auxiliary problem")
        piv = T[leave][enter]
        T[leave] = [a / piv for a in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        f = red[enter]
        red = [r - f * c for r, c in zip(red, T[leave][:width])]
        basis[leave] = enter

    if any(T[i][-1] for i, var in enumerate(basis) if var >= n):
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = T[i][-1]
    return x


def solve_with_lower_bounds(A, b, lower: Sequence[int]) -> list[Fraction] | None:
    """Solve ``A x = b`` with ``x_j >= lower_j`` by shifting the variables."""
    shifted = [bi - sum(a * l for a, l in zip(row, lower)) for row, bi in zip(A, b)]
    y = nonnegative_solution(A, shifted)
    if y is None:
        return None
    return [yi + li for yi, li in zip(y, lower)]
