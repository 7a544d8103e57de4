"""Exact simplex: cross-validated against brute-force vertex enumeration."""

import itertools
import random
from fractions import Fraction as F

import pytest

from wpvol.lp import simplex_max


def brute_force_max(c, A, b):
    """Enumerate all basic feasible points of {Ax <= b, x >= 0} exactly."""
    n = len(c)
    rows = [list(r) for r in A] + [[-F(i == j) for j in range(n)] for i in range(n)]
    rhs = list(b) + [F(0)] * n
    best = None
    for combo in itertools.combinations(range(len(rows)), n):
        m = [[F(rows[i][j]) for j in range(n)] + [F(rhs[i])] for i in combo]
        ok = True
        for col in range(n):
            p = next((r for r in range(col, n) if m[r][col] != 0), None)
            if p is None:
                ok = False
                break
            m[col], m[p] = m[p], m[col]
            m[col] = [v / m[col][col] for v in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [a - f * bb for a, bb in zip(m[r], m[col])]
        if not ok:
            continue
        x = [m[i][n] for i in range(n)]
        if all(xj >= 0 for xj in x) and all(
            sum(rows[i][j] * x[j] for j in range(n)) <= rhs[i] for i in range(len(rows))
        ):
            v = sum(c[j] * x[j] for j in range(n))
            best = v if best is None else max(best, v)
    return best


def test_simple_cases():
    value, x = simplex_max([F(1)], [[F(1)]], [F(2)])
    assert value == 2 and x == [F(2)]
    value, x = simplex_max([F(1), F(1)], [[F(1), F(0)], [F(0), F(1)]], [F(1), F(3)])
    assert value == 4
    value, _ = simplex_max([F(0)], [[F(1)]], [F(5)])
    assert value == 0


def test_unbounded_detected():
    with pytest.raises(ValueError):
        simplex_max([F(1)], [[F(-1)]], [F(0)])


def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        simplex_max([F(1)], [[F(1)]], [F(-1)])


def test_degenerate_does_not_cycle():
    # A classic degenerate instance; Bland's rule must terminate.
    c = [F(3, 4), F(-150), F(1, 50), F(-6)]
    A = [
        [F(1, 4), F(-60), F(-1, 25), F(9)],
        [F(1, 2), F(-90), F(-1, 50), F(3)],
        [F(0), F(0), F(1), F(0)],
    ]
    b = [F(0), F(0), F(1)]
    value, _ = simplex_max(c, A, b)
    assert value == F(1, 20)


def test_random_against_brute_force():
    rng = random.Random(20260808)
    for _ in range(150):
        n = rng.randint(1, 3)
        m = rng.randint(1, 4)
        c = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)]
        A = [[F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
        b = [F(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(m)]
        try:
            got, x = simplex_max(c, A, b)
        except ValueError as exc:
            assert "unbounded" in str(exc)
            continue
        want = brute_force_max(c, A, b)
        assert want is not None and got == want
        # returned point must be feasible and achieve the value
        assert all(xj >= 0 for xj in x)
        assert all(sum(ai * xi for ai, xi in zip(row, x)) <= bi for row, bi in zip(A, b))
        assert sum(ci * xi for ci, xi in zip(c, x)) == got
