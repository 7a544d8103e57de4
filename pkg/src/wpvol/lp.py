"""Exact rational linear programming (all-integer primal simplex).

Solves   maximize c.x   subject to   A x <= b,  x >= 0
exactly, for the small feasibility systems that decide chamber realizability.
The callers arrange b >= 0, so the all-slack basis is feasible and no phase-1
is needed.

Rows are cleared to integers up front and pivoting uses the fraction-free
update M'[i] = (piv*M[i] - M[i][c]*M[r]) / d, where d is the previous pivot.
The divisions are exact (Bareiss: every entry stays a minor of the original
integer matrix) and the running tableau is d times the usual rational one,
with d > 0, so sign tests and cross-multiplied ratio tests are unchanged.
Bland's smallest-index rule guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _int_rows(c, A, b):
    n = len(c)
    scale_obj = lcm(*(Fraction(x).denominator for x in c)) if n else 1
    obj = [-int(Fraction(x) * scale_obj) for x in c]
    rows = []
    rhs = []
    for ai, bi in zip(A, b):
        scale = lcm(*(Fraction(x).denominator for x in list(ai) + [bi]))
        rows.append([int(Fraction(x) * scale) for x in ai])
        rhs.append(int(Fraction(bi) * scale))
    return obj, scale_obj, rows, rhs


def simplex_max(
    c: Sequence[Fraction],
    A: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
) -> tuple[Fraction, list[Fraction]]:
    """Return (optimal value, an optimal x) for max c.x, A x <= b, x >= 0.

    Requires b >= 0 and a bounded objective; raises ValueError otherwise.
    """
    if any(Fraction(bi) < 0 for bi in b):
        raise ValueError("simplex_max requires b >= 0")
    obj_core, scale_obj, A_int, b_int = _int_rows(c, A, b)
    m = len(A_int)
    n = len(obj_core)
    ncols = n + m

    # M[i] = [vars | slacks | rhs]; the slack of a scaled row is a scaled
    # slack variable, which leaves the x-solution set unchanged.
    M: list[list[int]] = []
    for i in range(m):
        row = A_int[i] + [0] * m + [b_int[i]]
        row[n + i] = 1
        M.append(row)
    obj = obj_core + [0] * m + [0]
    basis = list(range(n, n + m))
    d = 1  # common positive scale of the tableau

    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        bn = bd = 0  # best ratio bn/bd, bd > 0
        for i in range(m):
            a = M[i][enter]
            if a > 0:
                ri, rd = M[i][-1], a
                if leave < 0 or ri * bd < bn * rd or (
                    ri * bd == bn * rd and basis[i] < basis[leave]
                ):
                    bn, bd = ri, rd
                    leave = i
        if leave < 0:
            raise ValueError("objective is unbounded")
        piv = M[leave][enter]
        pivrow = M[leave]
        for i in range(m):
            if i != leave:
                row = M[i]
                f = row[enter]
                if f:
                    M[i] = [(piv * x - f * y) // d for x, y in zip(row, pivrow)]
                else:
                    M[i] = [(piv * x) // d for x in row]
        f = obj[enter]
        if f:
            obj = [(piv * x - f * y) // d for x, y in zip(obj, pivrow)]
        else:
            obj = [(piv * x) // d for x in obj]
        basis[leave] = enter
        d = piv

    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = Fraction(M[i][-1], d)
    return Fraction(obj[-1], d * scale_obj), x
