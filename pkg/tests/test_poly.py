"""Exact polynomial algebra: arithmetic, calculus, serialization."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpvol.errors import RingMismatchError, VariableRangeError
from wpvol.numeric import evaluate_pi_poly, pi_decimal
from wpvol.poly import (
    PI_RING,
    PolyRing,
    angle_ring,
    phi_form,
    poly_from_json_dict,
    poly_from_text,
)

R2 = angle_ring(2)
R4 = angle_ring(4)


def test_ring_validation():
    with pytest.raises(ValueError):
        PolyRing(("t1", "pi"))
    with pytest.raises(ValueError):
        PolyRing(("pi", "t1", "t1"))


def test_difference_of_squares():
    t1, t2 = R2.var(1), R2.var(2)
    assert (t1 + t2) * (t1 - t2) == t1**2 - t2**2


def test_expand_two_pi_product():
    r = R4
    t3, t4 = r.var(3), r.var(4)
    twopi = r.two_pi()
    expanded = (twopi - t3) * (twopi - t4)
    assert expanded == 4 * r.pi() ** 2 - twopi * t3 - twopi * t4 + t3 * t4


def test_subtraction_normalizes_to_empty():
    p = 3 * R2.var(1) ** 2 - R2.var(2) + R2.const(F(5, 7))
    assert (p - p).terms == {}
    assert (p - p).is_zero()


def test_ring_mismatch_raises():
    with pytest.raises(RingMismatchError):
        R2.var(1) + R4.var(1)


def test_pow_and_scalar_ops():
    t = R2.var(1)
    assert t**0 == R2.one()
    assert (2 * t) ** 3 == 8 * t**3
    assert (t / 2) * 2 == t
    with pytest.raises(ValueError):
        t ** (-1)


def test_differentiate_basic():
    t1, t2 = R2.var(1), R2.var(2)
    assert (t1 * t2**2).diff(2) == 2 * t1 * t2
    assert R2.const(7).diff(1).is_zero()
    with pytest.raises(VariableRangeError):
        t1.diff(0)  # pi is not differentiable here


def test_differentiate_c1vol_in_theta4():
    r = R4
    t1, t2, t3, t4 = (r.var(i) for i in range(1, 5))
    twopi = r.two_pi()
    c1vol = -t1**2 / 2 - t2**2 / 2 + (twopi - t3) * (twopi - t4)
    assert c1vol.diff(4) == -(twopi - t3)


def test_substitute_examples():
    r = R4
    t3, t4 = r.var(3), r.var(4)
    twopi = r.two_pi()
    assert ((twopi - t3) * (twopi - t4)).subs(4, twopi).is_zero()
    # t -> theta3 + theta4 - 2 pi in t^2/2
    ext = angle_ring(4, extra="t")
    t = ext.var(5)
    target = ext.var(3) + ext.var(4) - ext.two_pi()
    assert (t * t / 2).subs(5, target) == target**2 / 2
    # theta -> 0 in (4 pi^2 - theta^2)/48
    r1 = angle_ring(1)
    v11 = (4 * r1.pi() ** 2 - r1.var(1) ** 2) / 48
    assert v11.subs(1, 0) == r1.pi() ** 2 / 12


def test_substitute_identity_is_noop():
    p = 2 * R2.pi() ** 2 - R2.var(1) ** 2 / 2 + R2.var(1) * R2.var(2)
    assert p.subs(1, R2.var(1)) == p


def test_integrate_upper_examples():
    ext = angle_ring(1, extra="t")
    t, phi = ext.var(2), ext.var(1)
    assert t.integrate_upper(2, phi) == phi**2 / 2
    integrand = (4 * ext.pi() ** 2 * t - t**3) / 48
    assert integrand.integrate_upper(2, phi) == phi**2 * (8 * ext.pi() ** 2 - phi**2) / 192
    assert ((phi**2 - t**2) * t).integrate_upper(2, phi) == phi**4 / 4


def test_integrate_upper_symbolic_bound_is_antiderivative():
    ext = angle_ring(1, extra="t")
    t = ext.var(2)
    p = 3 * t**2 + ext.var(1) * t
    assert p.integrate_upper(2, t).diff(2) == p


def test_integrate_upper_rejects_bound_involving_t():
    ext = angle_ring(1, extra="t")
    t = ext.var(2)
    with pytest.raises(VariableRangeError):
        t.integrate_upper(2, t + 1)


def test_evaluate_c0vol_at_zero():
    r = R4
    c0 = 2 * r.pi() ** 2 - sum((r.var(j) ** 2 for j in range(1, 5)), r.zero()) / 2
    value = c0.evaluate_angles([F(0)] * 4)
    assert value == 2 * PI_RING.pi() ** 2
    with pytest.raises(VariableRangeError):
        c0.evaluate_angles([F(0)] * 3)  # wrong arity


def test_evaluate_v11_at_two_pi_vanishes():
    r1 = angle_ring(1)
    v11 = (4 * r1.pi() ** 2 - r1.var(1) ** 2) / 48
    assert v11.subs(1, r1.two_pi()).is_zero()
    assert v11.evaluate_angles([r1.two_pi()]).is_zero()


def test_phi_form():
    r = R4
    phi = phi_form(r, {3, 4})
    assert phi == r.var(3) + r.var(4) - r.two_pi()
    assert phi_form(r, {1, 2, 3}) == r.var(1) + r.var(2) + r.var(3) - 2 * r.two_pi()


def test_compose_keeps_pi_formal():
    src = angle_ring(1)
    dst = angle_ring(2)
    p = src.pi() * src.var(1)
    q = p.compose(dst, [dst.pi(), dst.var(2) ** 2])
    assert q == dst.pi() * dst.var(2) ** 2
    with pytest.raises(ValueError):
        p.compose(dst, [dst.var(1), dst.var(2)])


def test_json_round_trip_bit_exact():
    p = 2 * R2.pi() ** 2 - R2.var(1) ** 2 / 2 + F(3, 7) * R2.var(1) * R2.var(2)
    data = p.to_json_dict()
    assert data["vars"] == ["pi", "t1", "t2"]
    exps = [tuple(item["e"]) for item in data["terms"]]
    assert exps == sorted(exps)
    assert all("/" in item["c"] for item in data["terms"])
    assert poly_from_json_dict(data) == p
    assert poly_from_json_dict(p.to_json_dict()).to_json_dict() == data


def test_text_round_trip():
    candidates = [
        R2.zero(),
        R2.one(),
        -R2.one() / 3,
        2 * R2.pi() ** 2 - R2.var(1) ** 2 / 2,
        (R2.var(1) + R2.var(2) - R2.two_pi()) ** 3,
        -R2.var(1) * R2.var(2),
    ]
    for p in candidates:
        assert poly_from_text(R2, str(p)) == p


def test_latex_printer():
    r = angle_ring(1)
    v11 = (4 * r.pi() ** 2 - r.var(1) ** 2) / 48
    tex = v11.to_latex()
    assert "\\pi" in tex and "\\theta_{1}" in tex and "\\frac{1}{12}" in tex


def test_total_degree_counts_pi():
    assert (2 * R2.pi() ** 2).total_degree() == 2
    assert (R2.var(1) * R2.pi()).total_degree() == 2
    assert R2.zero().total_degree() == -1


def test_pi_decimal_50_digits():
    value = str(pi_decimal(50))
    assert value.startswith("3.141592653589793238462643383279502884197169399375")


def test_numeric_evaluation():
    p = 2 * PI_RING.pi() ** 2
    v = evaluate_pi_poly(p, 30)
    assert str(v).startswith("19.7392088")


# -- property tests --------------------------------------------------------------


def small_polys(nvars=3, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp) for _ in range(nvars)])
    coeffs = st.fractions(
        min_value=-4, max_value=4, max_denominator=6
    )
    ring = PolyRing(("pi", "t1", "t2"))
    return st.lists(st.tuples(exps, coeffs), max_size=5).map(
        lambda items: sum((ring.monomial(c, e) for e, c in items), ring.zero())
    )


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_substitution_commutes_with_arithmetic(p, q, c):
    ring = p.ring
    assert (p + q).subs(1, c) == p.subs(1, c) + q.subs(1, c)
    assert (p * q).subs(1, c) == p.subs(1, c) * q.subs(1, c)
    value = ring.const(c) * ring.pi()  # rational multiple of pi
    assert (p * q).subs(2, value) == p.subs(2, value) * q.subs(2, value)


@settings(max_examples=40, deadline=None)
@given(small_polys())
def test_serialization_round_trip_property(p):
    assert poly_from_json_dict(p.to_json_dict()) == p
    assert poly_from_text(p.ring, str(p)) == p
