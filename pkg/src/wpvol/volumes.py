"""The volume engine.

Main-chamber polynomials come from exact intersection numbers:

    V_{g,n}(i theta) = sum_{m + |alpha| = d}  (2 pi^2)^m / m!
                       * prod_j (-theta_j^2/2)^{alpha_j} / alpha_j!
                       * <kappa_1^m psi^alpha>_{g,n},          d = 3g-3+n,

using 2 pi^2 (1-a_j)^2 = theta_j^2 / 2.  Every other chamber volume is the
main-chamber polynomial plus the wall-crossing polynomials along a path of
simple crossings; a wall-crossing across W_S is the exact integral

    wc_{C,S} = 1/((s-2)! 2^(s-2)) * int_0^{phi_S}
               V_{g,C/S}(i theta_{S^c}, i t) (phi_S^2 - t^2)^(s-2) t dt,

with s = |S| and phi_S = sum_{j in S} theta_j - 2 pi (s-1).  The quotient
volume is computed recursively by the same engine (the merged point is
labelled last and bound to the integration variable), so the recursion
strictly reduces n and bottoms out at one-chamber spaces.

Also here: closed-form chamber volumes (genus-0 minimal chamber, Losev-Manin,
(CP^1)^n), the 2 pi limit (light coordinates), and the dilaton-type derivative
identities.  Identity checks return both sides as exact polynomials so a
failure is diagnosable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Sequence

from .chambers import (
    Chamber,
    CrossingPath,
    StabilitySpace,
    WeightVector,
    classify,
    crossing_path,
    main_chamber,
)
from .errors import BoundExceededError, NotRealizableError, UnstableError, WpvolError
from .intersection import kappa_psi_intersection
from .poly import Poly, PolyRing, angle_ring, phi_form

DEFAULT_MAX_GENUS = 3

PROV_MAIN = "main-chamber-intersection"
PROV_PATH = "wall-crossing-path"


@dataclass(frozen=True)
class VolumeResult:
    """A chamber volume polynomial in the variables (pi, t1..tn)."""

    chamber: Chamber
    poly: Poly
    provenance: str
    path: Optional[CrossingPath] = None

    def to_json_dict(self) -> dict:
        return {
            "chamber": self.chamber.to_json_dict(),
            "poly": self.poly.to_json_dict(),
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class WallCrossingPoly:
    """wc_{C,S}: the jump of the volume when crossing W_S downward from C."""

    chamber_above: Chamber
    wall: frozenset[int]
    poly: Poly
    phi: Poly

    def to_json_dict(self) -> dict:
        return {
            "chamber": self.chamber_above.to_json_dict(),
            "wall": sorted(self.wall),
            "poly": self.poly.to_json_dict(),
            "phi": self.phi.to_json_dict(),
        }


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def mirzakhani_volume(g: int, n: int, max_genus: int = DEFAULT_MAX_GENUS) -> VolumeResult:
    """The main-chamber (Mirzakhani) volume polynomial V_{g,n}(i theta)."""
    space = StabilitySpace(g, n)  # validates stability
    if g > max_genus:
        raise BoundExceededError(f"genus {g} exceeds the backend bound {max_genus}")
    ring = angle_ring(n)
    d = 3 * g - 3 + n
    total = ring.zero()
    for m in range(d + 1):
        pref = Fraction(2**m, factorial(m))
        for alpha in _compositions(d - m, n):
            num = kappa_psi_intersection(g, m, alpha)
            if num == 0:
                continue
            coeff = pref * num
            exps = [2 * m] + [2 * a for a in alpha]
            for a in alpha:
                coeff *= Fraction((-1) ** a, 2**a * factorial(a))
            total = total + ring.monomial(coeff, exps)
    return VolumeResult(main_chamber(space), total, PROV_MAIN)


# -- wall crossing -----------------------------------------------------------------


def _wc_integral(
    quotient_poly: Poly, S: Sequence[int], s_comp: Sequence[int], ring: PolyRing
) -> Poly:
    """Kernel integral producing a wall-crossing polynomial in ``ring``.

    ``quotient_poly`` is the volume of the quotient chamber (merged point
    last) on 1 + len(s_comp) + 1 variables; ``S`` is the wall set, ``s_comp``
    the labels carrying the other angles, both sorted.
    """
    s = len(S)
    n = ring.nvars - 1
    ext = angle_ring(n, extra="t")
    ti = ext.nvars - 1
    images = [ext.pi()] + [ext.var(j) for j in s_comp] + [ext.var(ti)]
    vq = quotient_poly.compose(ext, images)
    phi = phi_form(ext, S)
    t = ext.var(ti)
    kernel = (phi * phi - t * t) ** (s - 2) * t / Fraction(factorial(s - 2) * 2 ** (s - 2))
    wc = (vq * kernel).integrate_upper(ti, phi)
    return wc.drop_last_var()


def wall_crossing_poly(c: Chamber, S: Iterable[int], max_genus: int = DEFAULT_MAX_GENUS) -> WallCrossingPoly:
    """wc_{C,S} for a chamber incident to and above W_S."""
    S = frozenset(S)
    c.cross(S)  # validates incidence and realizability below
    quotient = c.quotient(S)
    vq = chamber_volume(quotient, max_genus=max_genus).poly
    ring = angle_ring(c.space.n)
    s_sorted = sorted(S)
    comp = sorted(set(c.space.labels) - S)
    poly = _wc_integral(vq, s_sorted, comp, ring)
    return WallCrossingPoly(c, S, poly, phi_form(ring, S))


_volume_cache: dict[tuple[Chamber, int], VolumeResult] = {}


def chamber_volume(c: Chamber, max_genus: int = DEFAULT_MAX_GENUS) -> VolumeResult:
    """V_{g,C}: main-chamber intersection theory plus crossings along a path.

    Results are memoized per chamber; by path independence the polynomial does
    not depend on the particular path the search returns (covered by tests).
    """
    key = (c, max_genus)
    got = _volume_cache.get(key)
    if got is not None:
        return got
    if not c.is_realizable():
        raise NotRealizableError(f"{c} is not realizable")
    if not c.light_max:
        result = mirzakhani_volume(c.space.g, c.space.n, max_genus=max_genus)
    else:
        path = crossing_path(main_chamber(c.space), c)
        poly = mirzakhani_volume(c.space.g, c.space.n, max_genus=max_genus).poly
        for above, wall in path.steps:
            poly = poly + wall_crossing_poly(above, wall, max_genus=max_genus).poly
        result = VolumeResult(c, poly, PROV_PATH, path)
    _volume_cache[key] = result
    return result


def volume_along_order(
    c: Chamber, order: Sequence[Iterable[int]], max_genus: int = DEFAULT_MAX_GENUS
) -> Poly:
    """V_{g,C} summed along an explicit crossing order from the main chamber.

    Used to check path independence; raises if the order is not a valid
    sequence of simple crossings ending at ``c``.
    """
    cur = main_chamber(c.space)
    poly = mirzakhani_volume(c.space.g, c.space.n, max_genus=max_genus).poly
    for wall in order:
        poly = poly + wall_crossing_poly(cur, wall, max_genus=max_genus).poly
        cur = cur.cross(wall)
    if cur != c:
        raise WpvolError("crossing order does not end at the requested chamber")
    return poly


def piecewise_volume(
    w: WeightVector,
    numeric: bool = False,
    digits: int = 50,
    max_genus: int = DEFAULT_MAX_GENUS,
):
    """Classify, compute the chamber volume, and evaluate at theta(w).

    Returns (chamber, VolumeResult, value) where value is a univariate-in-pi
    Poly, or a Decimal in numeric mode.
    """
    c = classify(w)
    vr = chamber_volume(c, max_genus=max_genus)
    values = w.theta_values(vr.poly.ring)
    formal = vr.poly.evaluate_angles(values)
    if not numeric:
        return c, vr, formal
    from .numeric import evaluate_pi_poly

    return c, vr, evaluate_pi_poly(formal, digits)


# -- closed forms ------------------------------------------------------------------


def minimal_chamber_volume_closed(n: int, j: int = 1) -> VolumeResult:
    """Genus-0 minimal chamber volume, theta form of the closed formula.

    V_{0,C_j} = (2 pi^2)^{n-3}/(n-3)! (-2+sum a)^{n-3} (-a_j+sum_{k!=j} a_k)^{n-3}
    with a = 1 - theta/(2 pi); both factors carry the same exponent n-3.
    """
    if n < 3:
        raise UnstableError("need n >= 3")
    from .chambers import minimal_chamber_0

    space = StabilitySpace(0, n)
    ring = angle_ring(n)
    two_pi = ring.two_pi()
    sum_all = ring.zero()
    for k in range(1, n + 1):
        sum_all = sum_all + ring.var(k)
    f1 = (n - 2) * two_pi - sum_all
    f2 = (n - 2) * two_pi + 2 * ring.var(j) - sum_all
    poly = f1 ** (n - 3) * f2 ** (n - 3) / Fraction(2 ** (n - 3) * factorial(n - 3))
    return VolumeResult(
        minimal_chamber_0(space, j), poly, f"closed-form(minimal-chamber j={j})"
    )


def losev_manin_chamber(n: int) -> Chamber:
    """L_n in D_{0,n+2}: light iff the set avoids the two weight-1 points."""
    if n < 1:
        raise UnstableError("need n >= 1")
    space = StabilitySpace(0, n + 2)
    light = [tuple(range(1, n + 1))] if n >= 2 else []
    return Chamber(space, tuple(light))


def losev_manin_volume(n: int) -> Poly:
    """V_{0,L_n}(i theta, 0, 0) in weight variables: ring (pi, e1..en).

    Closed form (2 pi)^{2(n-1)} prod e_j (sum e_k)^{n-2}; the engine value is
    recovered by substituting theta_j -> 2 pi (1 - e_j) and theta at the two
    heavy points -> 0.
    """
    if n < 2:
        raise UnstableError("the closed form needs n >= 2")
    ring = PolyRing(("pi",) + tuple(f"e{i}" for i in range(1, n + 1)))
    poly = ring.const(Fraction(4) ** (n - 1)) * ring.pi() ** (2 * (n - 1))
    total = ring.zero()
    for k in range(1, n + 1):
        poly = poly * ring.var(k)
        total = total + ring.var(k)
    return poly * total ** (n - 2)


def cp1n_chamber(n: int) -> Chamber:
    """A_n in D_{0,n+3}: light iff the set meets at most one heavy point."""
    if n < 1:
        raise UnstableError("need n >= 1")
    space = StabilitySpace(0, n + 3)
    light = [tuple(range(1, n + 1)) + (h,) for h in (n + 1, n + 2, n + 3)]
    return Chamber(space, tuple(light))


def cp1n_volume(n: int) -> Poly:
    """V_{0,A_n}(i theta) in weight variables: ring (pi, e1..en, b1..b3).

    Closed form (2 pi)^{2n} prod e_j (-2 + sum e_j + sum b_k)^n.
    """
    if n < 1:
        raise UnstableError("need n >= 1")
    names = ("pi",) + tuple(f"e{i}" for i in range(1, n + 1)) + ("b1", "b2", "b3")
    ring = PolyRing(names)
    poly = ring.const(Fraction(4) ** n) * ring.pi() ** (2 * n)
    bracket = ring.const(-2)
    for k in range(1, n + 1):
        poly = poly * ring.var(k)
        bracket = bracket + ring.var(k)
    for k in range(n + 1, n + 4):
        bracket = bracket + ring.var(k)
    return poly * bracket**n


def weights_to_theta_images(src: PolyRing, dst: PolyRing, assignment: Sequence[Poly | int]) -> list[Poly]:
    """Images sending theta_j of ``src`` to 2 pi (1 - w) for weight polys w.

    ``assignment`` holds, per angle variable of src, either a weight-variable
    Poly of dst or the literal 0 meaning theta = 0 (weight 1).
    """
    images: list[Poly] = [dst.pi()]
    for w in assignment:
        if isinstance(w, int) and w == 0:
            images.append(dst.zero())
        else:
            images.append(dst.two_pi() - 2 * dst.pi() * w)
    return images


def weight_form(poly: Poly) -> Poly:
    """Output-layer conversion to weight variables: theta_j -> 2 pi (1 - a_j).

    Returns the polynomial over the ring (pi, a1..an); exact, invertible.
    """
    n = poly.ring.nvars - 1
    dst = PolyRing(("pi",) + tuple(f"a{i}" for i in range(1, n + 1)))
    images = [dst.pi()] + [dst.two_pi() - 2 * dst.pi() * dst.var(j) for j in range(1, n + 1)]
    return poly.compose(dst, images)


def boundary_length_latex(poly: Poly) -> str:
    """Output-layer L-form printer: V(i theta) rewritten in L_j = i theta_j.

    Only defined when every angle appears with even powers (main-chamber
    volumes); theta_j^(2k) becomes (-1)^k L_j^(2k).
    """
    n = poly.ring.nvars - 1
    dst = PolyRing(("pi",) + tuple(f"L{i}" for i in range(1, n + 1)))
    terms = {}
    for e, c in poly.terms.items():
        odd = [k for k in e[1:] if k % 2]
        if odd:
            raise WpvolError("L-form needs even powers of every angle variable")
        sign = (-1) ** (sum(e[1:]) // 2)
        terms[e] = c * sign
    return Poly(dst, terms).to_latex()


# -- limits and derivative identities ------------------------------------------------


def eval_at_2pi(vr: VolumeResult, i: int) -> Poly:
    """Substitute theta_i = 2 pi; the zero polynomial iff light in i (Lemma)."""
    ring = vr.poly.ring
    if not 1 <= i <= vr.chamber.space.n:
        raise ValueError(f"coordinate {i} out of range")
    return vr.poly.subs(i, ring.two_pi())


def _restricted_volume_in(ring: PolyRing, c: Chamber, keep: Sequence[int], max_genus: int) -> Poly:
    """Volume of c.restrict(keep), re-expressed in the big ring's variables."""
    sub = chamber_volume(c.restrict(keep), max_genus=max_genus).poly
    images = [ring.pi()] + [ring.var(j) for j in sorted(keep)]
    return sub.compose(ring, images)


def dilaton_rhs(c: Chamber, i: int, max_genus: int = DEFAULT_MAX_GENUS) -> Poly:
    """-2 pi (2g-2+|q|+sum_{j not in q} a(theta_j)) V_{g,C|} as one polynomial.

    Expanding a(theta) = 1 - theta/(2 pi) gives the polynomial coefficient
    -2 pi (2g-2+n') + sum_{j not in q} theta_j over the n' remaining points.
    """
    space = c.space
    ring = angle_ring(space.n)
    keep = [j for j in space.labels if j != i]
    q = c.q_set(i)
    coeff = ring.const(-(2 * space.g - 2 + len(keep))) * ring.two_pi()
    for j in keep:
        if j not in q:
            coeff = coeff + ring.var(j)
    return coeff * _restricted_volume_in(ring, c, keep, max_genus)


def dilaton_check(c: Chamber, i: int, max_genus: int = DEFAULT_MAX_GENUS) -> tuple[Poly, Poly]:
    """Both sides of the derivative identity at a flat coordinate.

    lhs = d V_{g,C} / d theta_i at theta_i = 2 pi;
    rhs = -2 pi (2g-2+|q(C)|+sum_{j not in q} a(theta_j)) V_{g,C restricted}.
    """
    if not c.is_flat(i):
        raise WpvolError(f"chamber is not flat in coordinate {i}")
    v = chamber_volume(c, max_genus=max_genus).poly
    lhs = v.diff(i).subs(i, v.ring.two_pi())
    return lhs, dilaton_rhs(c, i, max_genus=max_genus)


def wc_derivative_check(
    c: Chamber, S: Iterable[int], j: int, max_genus: int = DEFAULT_MAX_GENUS
) -> tuple[Poly, Poly]:
    """Both sides of the wall-crossing derivative identity for j in S.

    lhs = d wc_{C,S} / d theta_j at theta_j = 2 pi.  For |S| = 2 the rhs is
    theta_k V_{g,C/S} with the merged angle bound to theta_k (k the other
    element); for |S| > 2 it is phi_{S-j} times the wall-crossing polynomial
    of the restricted chamber across W_{S-j}, whose quotient equals C/S.
    """
    S = frozenset(S)
    if j not in S:
        raise ValueError(f"{j} is not in the wall set {sorted(S)}")
    wcp = wall_crossing_poly(c, S, max_genus=max_genus)
    ring = wcp.poly.ring
    lhs = wcp.poly.diff(j).subs(j, ring.two_pi())
    quotient = c.quotient(S)
    vq = chamber_volume(quotient, max_genus=max_genus).poly
    comp = sorted(set(c.space.labels) - S)
    if len(S) == 2:
        (k,) = sorted(S - {j})
        images = [ring.pi()] + [ring.var(x) for x in comp] + [ring.var(k)]
        rhs = ring.var(k) * vq.compose(ring, images)
    else:
        s_rest = sorted(S - {j})
        rhs = phi_form(ring, s_rest) * _wc_integral(vq, s_rest, comp, ring)
    return lhs, rhs


# -- hulls and generalized dilaton -----------------------------------------------------


def flat_hull(c: Chamber, i: int) -> Chamber:
    """The chamber below c reached by crossing only walls S+{i}, |S| >= 2,
    that is flat in i.  Exists iff no light S >= 2 meets q(C)."""
    q = c.q_set(i)
    light = list(c.light_max)
    for S in c.space.subsets():
        if i in S or c.value(S) == 1:
            continue
        if c.value(S | {i}) == 1:
            if q & S:
                raise WpvolError(
                    f"no flat hull in coordinate {i}: light set {sorted(S)} meets q(C)"
                )
            light.append(tuple(sorted(S | {i})))
    hull = Chamber(c.space, tuple(light))
    if not hull.is_realizable():
        raise NotRealizableError(f"flat hull of {c} in coordinate {i} is not realizable")
    return hull


def light_hull(c: Chamber, i: int) -> Chamber:
    """The chamber light in i below c, crossing only walls containing i."""
    light = list(c.light_max)
    for S in c.space.subsets(min_size=1):
        if i in S:
            continue
        if c.value(S) == 0 and c.value(S | {i}) == 1:
            light.append(tuple(sorted(S | {i})))
    hull = Chamber(c.space, tuple(light))
    if not hull.is_realizable():
        raise NotRealizableError(f"light hull of {c} in coordinate {i} is not realizable")
    return hull


def incident_zero_check(
    c: Chamber, i: int, max_genus: int = DEFAULT_MAX_GENUS
) -> tuple[Poly, Poly, CrossingPath]:
    """V_{g,C}(.., theta_i=2 pi) against minus the wall-crossing sum.

    Crossing from C down to the chamber light in i (walls all contain i) and
    evaluating the vanishing identity of the light chamber gives
    lhs = V_C at theta_i = 2 pi, rhs = - sum_j wc_j at theta_i = 2 pi.
    """
    hull = light_hull(c, i)
    path = crossing_path(c, hull)
    ring = angle_ring(c.space.n)
    two_pi = ring.two_pi()
    rhs = ring.zero()
    for above, wall in path.steps:
        rhs = rhs - wall_crossing_poly(above, wall, max_genus=max_genus).poly.subs(i, two_pi)
    lhs = eval_at_2pi(chamber_volume(c, max_genus=max_genus), i)
    return lhs, rhs, path


def general_dilaton_check(
    c: Chamber,
    i: int,
    up_walls: Optional[Sequence[Iterable[int]]] = None,
    max_genus: int = DEFAULT_MAX_GENUS,
) -> tuple[Poly, Poly]:
    """Derivative identity for chambers that need not be flat in i.

    Default mode descends from c to its flat hull across walls containing i
    (sizes >= 3), so  lhs = d V_C/d theta_i|_{2 pi}  is compared with
    TheoremRHS(hull) - sum d wc/d theta_i|_{2 pi} over the path.

    With ``up_walls`` the identity is assembled in the other direction: the
    walls are uncrossed from c (in the given order, last crossed first) to
    reach a chamber F that must be flat in i, and the rhs becomes
    TheoremRHS(F) + sum d wc/d theta_i|_{2 pi}.
    """
    ring = angle_ring(c.space.n)
    two_pi = ring.two_pi()
    v = chamber_volume(c, max_genus=max_genus).poly
    lhs = v.diff(i).subs(i, two_pi)

    if up_walls is None:
        hull = flat_hull(c, i)
        path = crossing_path(c, hull)
        rhs = dilaton_rhs(hull, i, max_genus=max_genus)
        for above, wall in path.steps:
            dwc = wall_crossing_poly(above, wall, max_genus=max_genus).poly.diff(i)
            rhs = rhs - dwc.subs(i, two_pi)
        return lhs, rhs

    chain = [c]
    cur = c
    for wall in reversed([frozenset(w) for w in up_walls]):
        if cur.value(wall) != 0:
            raise WpvolError(f"cannot uncross {sorted(wall)}: not light")
        fam = [tuple(sorted(T)) for T in cur.light_sets() if T != wall]
        up = Chamber(cur.space, tuple(fam))
        if up.value(wall) != 1:
            raise WpvolError(
                f"cannot uncross {sorted(wall)}: a light superset keeps it light"
            )
        up.cross(wall)  # validates incidence and realizability
        chain.append(up)
        cur = up
    flat_top = chain[-1]
    if not flat_top.is_flat(i):
        raise WpvolError("the chamber above the given walls is not flat in i")
    rhs = dilaton_rhs(flat_top, i, max_genus=max_genus)
    walls_down = [frozenset(w) for w in up_walls]
    above_chain = list(reversed(chain))[:-1]  # chambers crossed downward, in order
    for above, wall in zip(above_chain, walls_down):
        dwc = wall_crossing_poly(above, wall, max_genus=max_genus).poly.diff(i)
        rhs = rhs + dwc.subs(i, two_pi)
    return lhs, rhs


def clear_volume_cache() -> None:
    _volume_cache.clear()
