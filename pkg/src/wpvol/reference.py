"""Reference polynomials used as fixtures by the verification suite.

These are hand-checked closed forms for small (g, n): the five chamber
volumes of D_{0,4}, their wall crossings, the two chambers of D_{1,2}, the
genus-0 five-point crossing cases, and low-genus main-chamber polynomials.
The verify suite and the acceptance tests compare engine output against them
by exact polynomial equality.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, angle_ring


def _ring(n):
    r = angle_ring(n)
    return r, r.pi(), r.two_pi(), {i: r.var(i) for i in range(1, n + 1)}


def v_main_03() -> Poly:
    return angle_ring(3).one()


def v_main_04() -> Poly:
    r, pi, _, t = _ring(4)
    return 2 * pi**2 - sum((t[j] ** 2 for j in t), r.zero()) / 2


def v_main_11() -> Poly:
    r, pi, _, t = _ring(1)
    return (4 * pi**2 - t[1] ** 2) / 48


def v_main_12() -> Poly:
    r, pi, _, t = _ring(2)
    s = t[1] ** 2 + t[2] ** 2
    return (4 * pi**2 - s) * (12 * pi**2 - s) / 192


def v_main_21() -> Poly:
    """Genus-2 one-point polynomial, cross-checked coefficientwise against
    the anchored intersection numbers <tau_4>_2 = 1/1152 etc."""
    r, pi, _, t = _ring(1)
    th = t[1]
    return (
        (4 * pi**2 - th**2)
        * (12 * pi**2 - th**2)
        * (6960 * pi**4 - 384 * pi**2 * th**2 + 5 * th**4)
        / 2211840
    )


def chamber_volumes_04() -> dict[str, Poly]:
    """The five chamber volumes B_0..B_4 of D_{0,4} in the standard labels."""
    r, pi, twopi, t = _ring(4)
    return {
        "B0": v_main_04(),
        "B1": -t[1] ** 2 / 2 - t[2] ** 2 / 2 + (twopi - t[3]) * (twopi - t[4]),
        "B2": -t[1] ** 2 / 2
        + t[4] ** 2 / 2
        + (twopi - t[4]) * (2 * twopi - t[2] - t[3])
        - 2 * pi**2,
        "B3": (twopi - t[4]) * (2 * twopi - t[1] - t[2] - t[3] - t[4]),
        "B4": (2 * twopi - t[1] - t[2] - t[3] - t[4])
        * (2 * twopi - t[2] - t[3] - t[4] + t[1])
        / 2,
    }


def wall_crossings_04() -> dict[tuple[str, tuple[int, int]], Poly]:
    r, pi, twopi, t = _ring(4)

    def half_sq(i, j):
        return (t[i] + t[j] - twopi) ** 2 / 2

    return {
        ("B0", (3, 4)): half_sq(3, 4),
        ("B1", (2, 4)): half_sq(2, 4),
        ("B2", (1, 4)): half_sq(1, 4),
        ("B2", (2, 3)): half_sq(2, 3),
    }


def wall_crossing_12() -> Poly:
    r, pi, twopi, t = _ring(2)
    phi = t[1] + t[2] - twopi
    return phi**2 * (8 * pi**2 - phi**2) / 192


def v_light_12() -> Poly:
    r, pi, twopi, t = _ring(2)
    u1, u2 = twopi - t[1], twopi - t[2]
    return u1 * u2 * (8 * pi**2 - t[1] ** 2 - t[2] ** 2 - u1 * u2) / 48


def wall_crossing_05_s3() -> Poly:
    """The size-3 crossing of D_{0,5} at S = {3,4,5}: (sum - 4 pi)^4 / 8."""
    r, pi, twopi, t = _ring(5)
    return (t[3] + t[4] + t[5] - 2 * twopi) ** 4 / 8


def wall_crossing_05_cases() -> dict[int, Poly]:
    """The four S = {4,5} crossing polynomials of D_{0,5}, by quotient case.

    Case 4 carries a squared bracket: the displayed cube is inconsistent with
    the degree bound 2(3g-3+n) = 4 and with direct kernel integration.
    """
    r, pi, twopi, t = _ring(5)
    phi = t[4] + t[5] - twopi
    sq123 = t[1] ** 2 + t[2] ** 2 + t[3] ** 2
    return {
        1: phi**2 * (4 * pi**2 - 2 * sq123 + 2 * twopi * (t[4] + t[5]) - (t[4] + t[5]) ** 2) / 8,
        2: phi**2
        * (
            12 * pi**2
            - 2 * t[1] ** 2
            + 4 * t[2] * t[3]
            - (t[4] + t[5]) ** 2
            - 2 * twopi * (2 * t[2] + 2 * t[3] - t[4] - t[5])
        )
        / 8,
        3: phi**2
        * (
            20 * pi**2
            + 2 * t[3] * (2 * t[1] + 2 * t[2] + t[3])
            - (t[4] + t[5]) ** 2
            - 2 * twopi * (2 * t[1] + 2 * t[2] + 4 * t[3] - t[4] - t[5])
        )
        / 8,
        4: phi**2 * (2 * (2 * twopi - t[1] - t[2] - t[3]) ** 2 - phi**2) / 8,
    }


def case_weights_05() -> dict[int, tuple[Fraction, ...]]:
    """Interior weights of chambers above W_{4,5} realizing the four cases."""
    F = Fraction
    return {
        1: (F(3, 5),) * 5,
        2: (F(1), F(49, 100), F(49, 100), F(9, 10), F(1, 5)),
        3: (F(9, 10), F(9, 10), F(2, 25), F(9, 10), F(3, 20)),
        4: (F(49, 100), F(49, 100), F(49, 100), F(19, 20), F(1, 10)),
    }


INTERSECTION_ANCHORS: list[tuple[int, int, tuple[int, ...], Fraction]] = [
    # (g, m, d, value): anchors for the intersection backend
    (0, 0, (0, 0, 0), Fraction(1)),
    (1, 0, (1,), Fraction(1, 24)),
    (1, 1, (0,), Fraction(1, 24)),
    (0, 1, (0, 0, 0, 0), Fraction(1)),
    (1, 2, (0, 0), Fraction(1, 8)),
    (0, 2, (0, 0, 0, 0, 0), Fraction(5)),
    (2, 0, (4,), Fraction(1, 1152)),
    (2, 0, (3, 2), Fraction(29, 5760)),
    (2, 0, (2, 2, 2), Fraction(7, 240)),
]
