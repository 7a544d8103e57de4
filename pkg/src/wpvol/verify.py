"""Named verification checks: paper fixtures and structural invariants.

Each check compares engine output against an independently stated expected
value (closed forms, hand-integrated fixtures, combinatorial oracles) and
reports a machine-readable record.  The CLI ``verify`` command runs these and
exits nonzero if anything fails; the pytest acceptance suite runs the same
identities with per-criterion runtime budgets.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable

from . import reference as ref
from .chambers import (
    Chamber,
    StabilitySpace,
    WeightVector,
    classify,
    enumerate_chambers,
    light_chamber,
    main_chamber,
    minimal_chamber_0,
    realize,
)
from .errors import WpvolError
from .intersection import psi_intersection
from .numeric import evaluate_pi_poly
from .poly import PolyRing, angle_ring
from .volumes import (
    chamber_volume,
    cp1n_chamber,
    cp1n_volume,
    dilaton_check,
    eval_at_2pi,
    general_dilaton_check,
    losev_manin_chamber,
    losev_manin_volume,
    minimal_chamber_volume_closed,
    mirzakhani_volume,
    volume_along_order,
    wall_crossing_poly,
)


@dataclass
class CheckResult:
    id: str
    description: str
    passed: bool
    expected: str
    computed: str

    def to_json_dict(self) -> dict:
        return asdict(self)


class Reporter:
    def __init__(self):
        self.results: list[CheckResult] = []

    def record(self, id: str, description: str, expected, computed) -> None:
        self.results.append(
            CheckResult(id, description, expected == computed, str(expected), str(computed))
        )

    def record_bool(self, id: str, description: str, ok: bool, detail: str = "") -> None:
        self.results.append(
            CheckResult(id, description, bool(ok), "pass", "pass" if ok else f"FAIL {detail}")
        )


# -- paper-fixture suite -------------------------------------------------------------


def _chambers_04() -> dict[str, Chamber]:
    s04 = StabilitySpace(0, 4)
    b0 = main_chamber(s04)
    b1 = b0.cross({3, 4})
    b2 = b1.cross({2, 4})
    return {"B0": b0, "B1": b1, "B2": b2, "B3": b2.cross({1, 4}), "B4": b2.cross({2, 3})}


def check_main_volumes(rep: Reporter) -> None:
    rep.record("P01a", "V_{0,3} = 1", ref.v_main_03(), mirzakhani_volume(0, 3).poly)
    rep.record("P01b", "V_{0,4} main chamber", ref.v_main_04(), mirzakhani_volume(0, 4).poly)
    rep.record("P01c", "V_{1,1} = (4pi^2-t^2)/48", ref.v_main_11(), mirzakhani_volume(1, 1).poly)
    rep.record("P01d", "V_{1,2} product formula", ref.v_main_12(), mirzakhani_volume(1, 2).poly)


def check_chambers_04(rep: Reporter) -> None:
    expected = ref.chamber_volumes_04()
    for name, c in _chambers_04().items():
        rep.record(
            f"P02{name}", f"(0,4) chamber volume {name}", expected[name], chamber_volume(c).poly
        )


def check_wall_crossings_04(rep: Reporter) -> None:
    cs = _chambers_04()
    for (name, wall), expected in ref.wall_crossings_04().items():
        got = wall_crossing_poly(cs[name], set(wall)).poly
        rep.record(f"P03.{name}.{wall}", f"(0,4) wc from {name} across {wall}", expected, got)


def check_12(rep: Reporter) -> None:
    s12 = StabilitySpace(1, 2)
    rep.record(
        "P04a",
        "(1,2) wall-crossing polynomial",
        ref.wall_crossing_12(),
        wall_crossing_poly(main_chamber(s12), {1, 2}).poly,
    )
    rep.record(
        "P04b",
        "(1,2) light-chamber volume",
        ref.v_light_12(),
        chamber_volume(light_chamber(s12)).poly,
    )


def check_05_s3(rep: Reporter) -> None:
    s05 = StabilitySpace(0, 5)
    expected = ref.wall_crossing_05_s3()
    bad = 0
    count = 0
    for c in enumerate_chambers(s05):
        try:
            got = wall_crossing_poly(c, {3, 4, 5}).poly
        except WpvolError:
            continue
        count += 1
        if got != expected:
            bad += 1
    rep.record_bool(
        "P05",
        f"(0,5) |S|=3 crossing equals closed form from all {count} chambers above",
        bad == 0 and count > 0,
        f"{bad} mismatches",
    )


def check_05_s2_cases(rep: Reporter) -> None:
    s05 = StabilitySpace(0, 5)
    expected = ref.wall_crossing_05_cases()
    for case, weights in ref.case_weights_05().items():
        c = classify(WeightVector(s05, weights))
        got = wall_crossing_poly(c, {4, 5}).poly
        rep.record(f"P06.case{case}", f"(0,5) |S|=2 case {case}", expected[case], got)


def _psi0_by_string(d: tuple[int, ...]) -> Fraction:
    """Genus-0 correlator via the string equation only (independent oracle)."""
    d = tuple(sorted(d))
    if d == (0, 0, 0):
        return Fraction(1)
    assert d[0] == 0, "dimension-matched genus-0 indices always carry a zero"
    rest = d[1:]
    total = Fraction(0)
    for j, dj in enumerate(rest):
        if dj >= 1:
            total += _psi0_by_string(rest[:j] + (dj - 1,) + rest[j + 1 :])
    return total


def check_intersections(rep: Reporter) -> None:
    from .intersection import kappa_psi_intersection

    for g, m, d, want in ref.INTERSECTION_ANCHORS:
        got = (
            psi_intersection(g, d) if m == 0 else kappa_psi_intersection(g, m, d)
        )
        rep.record(f"P07.anchor.g{g}m{m}d{''.join(map(str, d))}", "intersection anchor", want, got)
    bad = 0
    total = 0
    for n in range(3, 9):
        for d in _partitions_of(n - 3, n):
            total += 1
            closed = Fraction(factorial(n - 3))
            for x in d:
                closed /= factorial(x)
            if psi_intersection(0, d) != closed or _psi0_by_string(d) != closed:
                bad += 1
    rep.record_bool(
        "P07.genus0",
        f"genus-0 closed form vs string-only derivation on {total} indices (n<=8)",
        bad == 0,
        f"{bad} mismatches",
    )


def _partitions_of(total: int, parts: int):
    """Sorted exponent tuples d (len=parts) with sum(d)=total."""
    def gen(remaining, slots, minimum):
        if slots == 1:
            if remaining >= minimum:
                yield (remaining,)
            return
        for first in range(minimum, remaining + 1):
            for rest in gen(remaining - first, slots - 1, first):
                yield (first,) + rest

    # descending would double count; generate ascending multisets
    yield from gen(total, parts, 0)


def check_closed_forms(rep: Reporter, max_minimal_n: int = 6) -> None:
    for n in range(4, max_minimal_n + 1):
        closed = minimal_chamber_volume_closed(n, 1).poly
        eng = chamber_volume(minimal_chamber_0(StabilitySpace(0, n), 1)).poly
        rep.record(f"P08.n{n}", f"minimal-chamber closed form n={n}", closed, eng)
    for n in range(2, 5):
        closed = losev_manin_volume(n)
        eng = chamber_volume(losev_manin_chamber(n)).poly
        dst = closed.ring
        images = (
            [dst.pi()]
            + [dst.two_pi() - 2 * dst.pi() * dst.var(j) for j in range(1, n + 1)]
            + [dst.zero(), dst.zero()]
        )
        rep.record(f"P09.n{n}", f"Losev-Manin closed form n={n}", closed, eng.compose(dst, images))
    for n in range(1, 4):
        closed = cp1n_volume(n)
        eng = chamber_volume(cp1n_chamber(n)).poly
        dst = closed.ring
        images = [dst.pi()] + [
            dst.two_pi() - 2 * dst.pi() * dst.var(j) for j in range(1, n + 4)
        ]
        rep.record(f"P10.n{n}", f"(CP^1)^n closed form n={n}", closed, eng.compose(dst, images))


def check_cayley(rep: Reporter, max_n: int = 6) -> None:
    ring = PolyRing(("pi", "e"))

    def v(k: int):
        if k == 1:
            return ring.one()
        return losev_manin_volume(k).compose(ring, [ring.pi()] + [ring.var(1)] * k)

    for n in range(3, max_n + 1):
        lhs = v(n)
        rhs = ring.zero()
        for i in range(1, n):
            rhs = rhs + Fraction(i * (n - i), n - 1) * comb(n, i) * v(i) * v(n - i)
        rhs = rhs * (2 * ring.pi() * ring.var(1)) ** 2 / 2
        rep.record(f"P11.n{n}", f"Cayley tree recursion for equal-weight LM volumes n={n}", lhs, rhs)


def check_limits(rep: Reporter, spaces: Iterable[StabilitySpace]) -> None:
    for space in spaces:
        bad = 0
        total = 0
        for c in enumerate_chambers(space):
            vr = chamber_volume(c)
            for i in space.labels:
                if c.is_light(i):
                    total += 1
                    if not eval_at_2pi(vr, i).is_zero():
                        bad += 1
        rep.record_bool(
            f"P12.light.{space.g}.{space.n}",
            f"2pi limit vanishes at all {total} light coordinates of D_({space.g},{space.n})",
            bad == 0,
            f"{bad} nonzero",
        )
    # limitdil1 for the main chamber of (1,2)
    r2 = angle_ring(2)
    lhs = eval_at_2pi(mirzakhani_volume(1, 2), 2)
    ext = angle_ring(1, extra="t")
    v11 = mirzakhani_volume(1, 1).poly.compose(ext, [ext.pi(), ext.var(2)])
    rhs = -(
        (v11 * ext.var(2))
        .integrate_upper(2, ext.var(1))
        .drop_last_var()
        .compose(r2, [r2.pi(), r2.var(1)])
    )
    rep.record("P12.limitdil1", "V_{1,2}(i t1, 2 pi i) = -int_0^{t1} t V_{1,1}(it) dt", rhs, lhs)
    # corollary (g,2) for g=1: derivative limits of both polynomials
    s12 = StabilitySpace(1, 2)
    vm = mirzakhani_volume(1, 2).poly
    got = vm.diff(2).subs(2, r2.two_pi())
    v11_in2 = mirzakhani_volume(1, 1).poly.compose(r2, [r2.pi(), r2.var(1)])
    rep.record(
        "P12.dilmirz12",
        "d V^Mirz_{1,2}/d t2 at 2pi = 2pi(1-2g) V_{1,1}",
        -r2.two_pi() * v11_in2,
        got,
    )
    vl = chamber_volume(light_chamber(s12)).poly
    got = vl.diff(2).subs(2, r2.two_pi())
    rep.record(
        "P12.dillight12",
        "d V_{1,CL}/d t2 at 2pi = (2pi(1-2g)+t1) V_{1,1}",
        (-r2.two_pi() + r2.var(1)) * v11_in2,
        got,
    )


def check_dilaton(rep: Reporter, spaces: Iterable[StabilitySpace]) -> None:
    for space in spaces:
        bad = 0
        total = 0
        for c in enumerate_chambers(space):
            for i in space.labels:
                if c.is_flat(i):
                    total += 1
                    lhs, rhs = dilaton_check(c, i)
                    if lhs != rhs:
                        bad += 1
        rep.record_bool(
            f"P13.{space.g}.{space.n}",
            f"dilaton identity at all {total} flat coordinates of D_({space.g},{space.n})",
            bad == 0,
            f"{bad} mismatches",
        )


def check_general_dilaton(rep: Reporter, space: StabilitySpace) -> None:
    bad = 0
    total = 0
    for c in enumerate_chambers(space):
        for i in space.labels:
            if c.is_flat(i):
                continue
            try:
                lhs, rhs = general_dilaton_check(c, i)
            except WpvolError:
                continue
            total += 1
            if lhs != rhs:
                bad += 1
    rep.record_bool(
        "P14",
        f"general dilaton identity on {total} non-flat coordinates of D_({space.g},{space.n})",
        bad == 0 and total > 0,
        f"{bad} mismatches",
    )


# -- invariants suite ------------------------------------------------------------------


def _incident_walls(c: Chamber):
    for S in c.space.subsets():
        try:
            c.cross(S)
        except WpvolError:
            continue
        yield S


def check_continuity(rep: Reporter, spaces: Iterable[StabilitySpace]) -> None:
    for space in spaces:
        ring = angle_ring(space.n)
        bad = 0
        total = 0
        for c in enumerate_chambers(space):
            for S in _incident_walls(c):
                wcp = wall_crossing_poly(c, S)
                k = min(S)
                # wall relation: theta_k = 2 pi (|S|-1) - sum_{j in S, j != k}
                rel = (len(S) - 1) * ring.two_pi()
                for j in S:
                    if j != k:
                        rel = rel - ring.var(j)
                total += 1
                if not wcp.poly.subs(k, rel).is_zero():
                    bad += 1
                for j in space.labels:
                    if not wcp.poly.diff(j).subs(k, rel).is_zero():
                        bad += 1
        rep.record_bool(
            f"I01.{space.g}.{space.n}",
            f"wc and all partials vanish on their wall ({total} walls of D_({space.g},{space.n}))",
            bad == 0,
            f"{bad} nonvanishing",
        )


def two_crossing_orders(c: Chamber):
    """A geometric crossing order plus a distinct valid reordering, if any.

    The segment path's order is a linear extension of the light family by
    inclusion (a wall is crossed only after all its subwalls); swapping two
    adjacent incomparable walls gives another linear extension, which is kept
    if every intermediate chamber stays realizable.
    """
    from .chambers import crossing_path, main_chamber as _main

    order1 = crossing_path(_main(c.space), c).walls()
    if len(order1) < 2:
        return [order1]
    for i in range(len(order1) - 1):
        a, b = order1[i], order1[i + 1]
        if a < b or b < a:
            continue
        order2 = order1[:i] + [b, a] + order1[i + 2 :]
        cur = _main(c.space)
        try:
            for wall in order2:
                cur = cur.cross(wall)
        except WpvolError:
            continue
        if cur == c:
            return [order1, order2]
    return [order1]


def check_path_independence(rep: Reporter, spaces: Iterable[StabilitySpace]) -> None:
    for space in spaces:
        bad = 0
        total = 0
        for c in enumerate_chambers(space):
            orders = two_crossing_orders(c)
            if len(orders) < 2:
                continue
            p1 = volume_along_order(c, orders[0])
            p2 = volume_along_order(c, orders[1])
            total += 1
            if p1 != p2 or p1 != chamber_volume(c).poly:
                bad += 1
        rep.record_bool(
            f"I02.{space.g}.{space.n}",
            f"path independence along two orders on {total} chambers of D_({space.g},{space.n})",
            bad == 0,
            f"{bad} mismatches",
        )


def check_quotient_crossing_equality(rep: Reporter, space: StabilitySpace) -> None:
    """Chambers with equal quotients C/S have identical wc_{.,S} (corollary)."""
    groups: dict[tuple, list] = {}
    for c in enumerate_chambers(space):
        for S in _incident_walls(c):
            wcp = wall_crossing_poly(c, S)
            key = (tuple(sorted(S)), c.quotient(S))
            groups.setdefault(key, []).append(wcp.poly)
    bad = sum(
        1 for polys in groups.values() if any(p != polys[0] for p in polys[1:])
    )
    nontrivial = sum(1 for polys in groups.values() if len(polys) > 1)
    rep.record_bool(
        "I06",
        f"equal quotients give equal crossings: {len(groups)} (wall, quotient) classes, "
        f"{nontrivial} with several chambers above, on D_({space.g},{space.n})",
        bad == 0 and nontrivial > 0,
        f"{bad} classes disagree",
    )


def check_quotient_equivalence(rep: Reporter, space: StabilitySpace) -> None:
    """Prop: for chambers separated by W_T, (T meets S) iff equal quotients by S."""
    bad = 0
    total = 0
    quotient_sets = [S for S in space.subsets() if space.n - len(S) + 1 >= 3]
    for c1 in enumerate_chambers(space):
        for T in _incident_walls(c1):
            c2 = c1.cross(T)
            for S in quotient_sets:
                total += 1
                lhs = bool(T & S)
                rhs = c1.quotient(S) == c2.quotient(S)
                if lhs != rhs:
                    bad += 1
    rep.record_bool(
        "I03",
        f"quotient-equivalence criterion on {total} (pair, S) cases of D_({space.g},{space.n})",
        bad == 0,
        f"{bad} failures",
    )


def check_evenness(rep: Reporter, spaces: Iterable[StabilitySpace]) -> None:
    """wc is an even polynomial of degree >= 2 in phi_S with theta_{S^c} coefficients."""
    bad = 0
    total = 0
    for space in spaces:
        n = space.n
        for c in enumerate_chambers(space):
            for S in _incident_walls(c):
                wcp = wall_crossing_poly(c, S)
                ext = angle_ring(n, extra="u")
                u = ext.nvars - 1
                k = min(S)
                # substitute theta_k = u + 2 pi(|S|-1) - sum_{j in S-k} theta_j,
                # turning phi_S into the variable u
                rel = ext.var(u) + (len(S) - 1) * ext.two_pi()
                for j in S:
                    if j != k:
                        rel = rel - ext.var(j)
                lifted = wcp.poly.compose(
                    ext,
                    [ext.pi()]
                    + [rel if j == k else ext.var(j) for j in range(1, n + 1)],
                )
                total += 1
                degs = {e[u] for e in lifted.terms}
                if any(d % 2 or d < 2 for d in degs):
                    bad += 1
                if any(e[k] for e in lifted.terms):
                    bad += 1
                if any(e[j] for e in lifted.terms for j in S if j != k):
                    bad += 1
    rep.record_bool(
        "I04",
        f"wall-crossings are even polynomials in phi of degree >= 2 ({total} walls)",
        bad == 0,
        f"{bad} failures",
    )


def check_positivity(
    rep: Reporter, spaces: Iterable[StabilitySpace], points_per_chamber: int = 20, digits: int = 50
) -> None:
    rng = random.Random(20260808)
    for space in spaces:
        bad = 0
        total = 0
        for c in enumerate_chambers(space):
            point, slack = realize(c)
            vr = chamber_volume(c)
            n = space.n
            for _ in range(points_per_chamber):
                delta = [
                    Fraction(rng.randint(0, 999), 1000) * slack / (2 * n) for _ in range(n)
                ]
                w = WeightVector(space, tuple(a - d for a, d in zip(point, delta)))
                if classify(w) != c:
                    bad += 1
                    continue
                value = evaluate_pi_poly(
                    vr.poly.evaluate_angles(w.theta_values(vr.poly.ring)), digits
                )
                total += 1
                if not value > 0:
                    bad += 1
        rep.record_bool(
            f"I05.{space.g}.{space.n}",
            f"positivity at {total} random interior points of D_({space.g},{space.n})",
            bad == 0,
            f"{bad} failures",
        )


# -- suite runners ------------------------------------------------------------------------


def run_paper_suite(rep: Reporter) -> None:
    check_main_volumes(rep)
    check_chambers_04(rep)
    check_wall_crossings_04(rep)
    check_12(rep)
    check_05_s3(rep)
    check_05_s2_cases(rep)
    check_intersections(rep)
    check_closed_forms(rep)
    check_cayley(rep)
    spaces = [StabilitySpace(0, 4), StabilitySpace(0, 5), StabilitySpace(1, 2)]
    check_limits(rep, spaces)
    check_dilaton(rep, [StabilitySpace(0, 5), StabilitySpace(1, 2)])
    check_general_dilaton(rep, StabilitySpace(0, 5))


def run_invariants_suite(rep: Reporter) -> None:
    small = [StabilitySpace(0, 4), StabilitySpace(1, 2)]
    big = small + [StabilitySpace(0, 5)]
    check_continuity(rep, big)
    check_path_independence(rep, big)
    check_quotient_equivalence(rep, StabilitySpace(0, 5))
    check_quotient_crossing_equality(rep, StabilitySpace(0, 5))
    check_evenness(rep, small)
    check_positivity(rep, [StabilitySpace(0, 5), StabilitySpace(1, 2)])


SUITES: dict[str, Callable[[Reporter], None]] = {
    "paper": run_paper_suite,
    "invariants": run_invariants_suite,
}


def run(suite: str = "all") -> list[CheckResult]:
    rep = Reporter()
    if suite == "all":
        for fn in SUITES.values():
            fn(rep)
    elif suite in SUITES:
        SUITES[suite](rep)
    else:
        raise ValueError(f"unknown suite {suite!r} (choose paper, invariants, all)")
    rep.results.sort(key=lambda r: r.id)
    return rep.results
