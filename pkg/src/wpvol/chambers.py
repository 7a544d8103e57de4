"""Hassett stability space combinatorics: walls, chambers, paths.

A chamber of D_{g,n} = {a in (0,1]^n : sum a_j > 2-2g} is encoded as the
order-preserving function C : P({1..n}) -> {0,1}, stored canonically as the
antichain of maximal light sets (the maximal J with |J| >= 2 and C(J) = 0).
C(J) = 1 means the points of J cannot collide, i.e. sum_{j in J} a_j > 1 on
the chamber.

Realizability is decided by exact rational LP with slack maximization: the
open system {0 < a_j <= 1, sum_J a < 1 on light walls, sum_J a > 1 on heavy
walls, sum a > 2-2g} is feasible iff the maximized common margin is positive.
No floating point is involved anywhere.

All types are immutable values; module-level memo tables are idempotent, so
sharing between threads is safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    BoundExceededError,
    DegenerateSegmentError,
    NotComparableError,
    NotIncidentError,
    NotRealizableError,
    OnWallError,
    UnstableError,
)
from .lp import simplex_max
from .poly import Poly, PolyRing

ENUMERATION_BOUND = 6


@dataclass(frozen=True)
class StabilitySpace:
    """The space D_{g,n} of stability conditions."""

    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 1:
            raise UnstableError(f"bad (g,n)=({self.g},{self.n})")
        if 2 * self.g - 2 + self.n <= 0:
            raise UnstableError(f"unstable moduli problem (g,n)=({self.g},{self.n})")

    @property
    def labels(self) -> range:
        return range(1, self.n + 1)

    def subsets(self, min_size: int = 2) -> list[frozenset[int]]:
        out = []
        for r in range(min_size, self.n + 1):
            out.extend(frozenset(c) for c in itertools.combinations(self.labels, r))
        return out


@dataclass(frozen=True)
class WeightVector:
    """a in (0,1]^n with sum a_j > 2-2g; dual angles theta_j = 2 pi (1 - a_j)."""

    space: StabilitySpace
    a: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        if len(self.a) != self.space.n:
            raise ValueError("weight count does not match n")
        for x in self.a:
            if not 0 < x <= 1:
                raise ValueError(f"weight {x} outside (0,1]")
        if sum(self.a) <= 2 - 2 * self.space.g:
            raise ValueError("total weight violates sum a_j > 2-2g")

    def theta_values(self, ring: PolyRing) -> list[Poly]:
        """Angles theta_j = (2-2a_j)*pi as polynomials of ``ring``."""
        return [(2 - 2 * aj) * ring.pi() for aj in self.a]

    def permuted(self, perm: Mapping[int, int]) -> "WeightVector":
        """Relabel points: new weight at position perm[j] is a_j."""
        b = [Fraction(0)] * self.space.n
        for j, aj in enumerate(self.a, start=1):
            b[perm[j] - 1] = aj
        return WeightVector(self.space, tuple(b))


@dataclass(frozen=True)
class Wall:
    """W_J = {a : sum_{j in J} a_j = 1} for |J| >= 2."""

    space: StabilitySpace
    J: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(self.J))
        if len(self.J) < 2 or not self.J <= set(self.space.labels):
            raise ValueError(f"invalid wall set {sorted(self.J)}")


def _canonical_antichain(sets: Iterable[frozenset[int]]) -> tuple[tuple[int, ...], ...]:
    family = [frozenset(s) for s in sets]
    maximal = [s for s in family if not any(s < t for t in family)]
    return tuple(sorted(set(tuple(sorted(s)) for s in maximal)))


@dataclass(frozen=True)
class Chamber:
    """A chamber, stored as the antichain of maximal light sets."""

    space: StabilitySpace
    light_max: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        labels = set(self.space.labels)
        family = [frozenset(s) for s in self.light_max]
        for s in family:
            if len(s) < 2 or not s <= labels:
                raise ValueError(f"invalid light set {sorted(s)}")
        object.__setattr__(self, "light_max", _canonical_antichain(family))

    # -- the order-preserving function ----------------------------------------

    def value(self, J: Iterable[int]) -> int:
        """C(J): 0 if the points of J may collide, 1 otherwise."""
        J = frozenset(J)
        if len(J) <= 1:
            return 0
        return 0 if any(J <= frozenset(s) for s in self.light_max) else 1

    def light_sets(self) -> list[frozenset[int]]:
        """All light J with |J| >= 2, smallest first."""
        out = set()
        for s in self.light_max:
            for r in range(2, len(s) + 1):
                out.update(frozenset(c) for c in itertools.combinations(s, r))
        return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))

    def heavy_min(self) -> list[frozenset[int]]:
        """Minimal heavy sets: heavy J whose proper subsets are all light."""
        out = []
        for J in self.space.subsets():
            if self.value(J) == 1 and all(
                self.value(J - {j}) == 0 for j in J
            ):
                out.append(J)
        return out

    # -- constructions ---------------------------------------------------------

    def cross(self, S: Iterable[int]) -> "Chamber":
        """Simple wall-crossing from above W_S to the chamber below."""
        S = frozenset(S)
        if len(S) < 2 or not S <= set(self.space.labels):
            raise NotIncidentError(f"invalid wall set {sorted(S)}")
        if self.value(S) != 1:
            raise NotIncidentError(f"chamber is not above W_{sorted(S)}")
        for r in range(2, len(S)):
            for T in itertools.combinations(S, r):
                if self.value(T) == 1:
                    raise NotIncidentError(
                        f"chamber is not incident to W_{sorted(S)}: "
                        f"heavy proper subset {sorted(T)}"
                    )
        below = Chamber(self.space, self.light_max + (tuple(sorted(S)),))
        if not below.is_realizable():
            raise NotRealizableError(
                f"no weight vector below W_{sorted(S)} from {self}"
            )
        return below

    def quotient(self, S: Iterable[int]) -> "Chamber":
        """Merge the points of S into one point, placed last."""
        S = frozenset(S)
        if len(S) < 2 or not S <= set(self.space.labels):
            raise ValueError(f"invalid quotient set {sorted(S)}")
        n2 = self.space.n - len(S) + 1
        if 2 * self.space.g - 2 + n2 <= 0:
            raise UnstableError(f"quotient space D_({self.space.g},{n2}) unstable")
        comp = sorted(set(self.space.labels) - S)
        merged = n2
        space2 = StabilitySpace(self.space.g, n2)
        light = []
        for J in space2.subsets():
            if merged in J:
                continue  # (C/S)(J) = 1 whenever J meets S without J subset S
            pre = frozenset(comp[i - 1] for i in J)
            if self.value(pre) == 0:
                light.append(J)
        return Chamber(space2, tuple(tuple(sorted(s)) for s in light))

    def restrict(self, T: Iterable[int]) -> "Chamber":
        """Forget the points outside T; result lives in D_{g,|T|}."""
        T = sorted(set(T))
        if not set(T) <= set(self.space.labels):
            raise ValueError(f"invalid restriction set {T}")
        if 2 * self.space.g - 2 + len(T) <= 0:
            raise UnstableError(f"restricted space D_({self.space.g},{len(T)}) unstable")
        space2 = StabilitySpace(self.space.g, len(T))
        relabel = {j: i for i, j in enumerate(T, start=1)}
        light = []
        for s in self.light_max:
            inter = [relabel[j] for j in s if j in relabel]
            if len(inter) >= 2:
                light.append(tuple(sorted(inter)))
        return Chamber(space2, tuple(light))

    def permuted(self, perm: Mapping[int, int]) -> "Chamber":
        light = [tuple(sorted(perm[j] for j in s)) for s in self.light_max]
        return Chamber(self.space, tuple(light))

    # -- flat / light coordinates ----------------------------------------------

    def q_set(self, i: int) -> frozenset[int]:
        """q(C) = {j != i : C({j,i}) = 1}, the pair walls crossed as theta_i -> 2pi."""
        return frozenset(
            j for j in self.space.labels if j != i and self.value({j, i}) == 1
        )

    def is_light(self, i: int) -> bool:
        """Empty contraction set: C(S)=0 implies C(S+{i})=0 for every S (any size)."""
        if self.q_set(i):
            return False
        return self.is_flat(i)

    def is_flat(self, i: int) -> bool:
        """Contraction sets of order <= 2 only: C(S)=0 => C(S+{i})=0 for |S| >= 2."""
        for S in self.space.subsets():
            if i not in S and self.value(S) == 0 and self.value(S | {i}) == 1:
                return False
        return True

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "g": self.space.g,
            "n": self.space.n,
            "light_max": [list(s) for s in self.light_max],
        }

    def __str__(self) -> str:
        sets = ",".join("{" + ",".join(map(str, s)) + "}" for s in self.light_max)
        return f"Chamber(g={self.space.g},n={self.space.n},light_max=[{sets}])"

    # -- realizability -------------------------------------------------------------

    def is_realizable(self) -> bool:
        return realize(self) is not None


def chamber_from_json_dict(data: Mapping, g: Optional[int] = None, n: Optional[int] = None) -> Chamber:
    g = data.get("g", g)
    n = data.get("n", n)
    if g is None or n is None:
        raise ValueError("chamber JSON needs g and n (inline or from flags)")
    return Chamber(StabilitySpace(int(g), int(n)), tuple(tuple(s) for s in data["light_max"]))


def main_chamber(space: StabilitySpace) -> Chamber:
    """C^M: every set heavy; its volume polynomial is Mirzakhani's."""
    return Chamber(space, ())


def light_chamber(space: StabilitySpace) -> Chamber:
    """C^L (g >= 1 only): every set light."""
    if space.g == 0:
        raise UnstableError("the all-light chamber is empty when g = 0")
    if space.n < 2:
        return Chamber(space, ())
    return Chamber(space, (tuple(space.labels),))


def minimal_chamber_0(space: StabilitySpace, j: int) -> Chamber:
    """The genus-0 minimal chamber C_j: C_j(J)=1 iff {j} strictly inside J or J={j}^c."""
    if space.g != 0:
        raise ValueError("minimal_chamber_0 is a genus-0 construction")
    if j not in space.labels:
        raise ValueError(f"label {j} out of range")
    others = [x for x in space.labels if x != j]
    light = [
        tuple(sorted(c))
        for c in itertools.combinations(others, space.n - 2)
    ]
    if space.n == 3:
        light = []
    return Chamber(space, tuple(light))


# -- realizability LP -------------------------------------------------------------

_realize_cache: dict[Chamber, Optional[tuple[tuple[Fraction, ...], Fraction]]] = {}


def realize(c: Chamber) -> Optional[tuple[tuple[Fraction, ...], Fraction]]:
    """Interior witness of maximal margin, or None.

    Maximizes s subject to s <= a_j, a_j <= 1, sum_J a <= 1-s on maximal light
    sets, sum_J a >= 1+s on minimal heavy sets and sum a >= 2-2g+s, using the
    shifted variable sigma = s+3 >= 0 so the all-slack simplex basis is
    feasible.  The chamber is realizable iff the optimum has s > 0.
    """
    got = _realize_cache.get(c, "miss")
    if got != "miss":
        return got
    n = c.space.n
    g = c.space.g
    zero = Fraction(0)
    one = Fraction(1)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def row(avec: Sequence[Fraction], sigma: Fraction, b) -> None:
        rows.append(list(avec) + [sigma])
        rhs.append(Fraction(b))

    for j in range(n):
        e = [zero] * n
        e[j] = one
        row(e, zero, 1)  # a_j <= 1
        e = [zero] * n
        e[j] = -one
        row(e, one, 3)  # a_j >= s
    for J in c.light_max:
        e = [one if j + 1 in J else zero for j in range(n)]
        row(e, one, 4)  # sum_J a <= 1 - s
    for J in c.heavy_min():
        e = [-one if j + 1 in J else zero for j in range(n)]
        row(e, one, 2)  # sum_J a >= 1 + s
    row([-one] * n, one, 1 + 2 * g)  # sum a >= 2 - 2g + s
    objective = [zero] * n + [one]
    value, x = simplex_max(objective, rows, rhs)
    slack = value - 3
    result = (tuple(x[:n]), slack) if slack > 0 else None
    _realize_cache[c] = result
    return result


def witness(c: Chamber) -> WeightVector:
    got = realize(c)
    if got is None:
        raise NotRealizableError(f"{c} is not realizable")
    return WeightVector(c.space, got[0])


# -- classification ---------------------------------------------------------------


def classify(w: WeightVector) -> Chamber:
    """The chamber containing w; exact, raises OnWallError on any wall."""
    light = []
    for J in w.space.subsets():
        total = sum(w.a[j - 1] for j in J)
        if total == 1:
            raise OnWallError(J)
        if total < 1:
            light.append(tuple(sorted(J)))
    return Chamber(w.space, tuple(light))


# -- crossing paths ----------------------------------------------------------------


@dataclass(frozen=True)
class CrossingPath:
    """Ordered simple wall-crossings, each from ``chamber`` down across ``wall``."""

    steps: tuple[tuple[Chamber, frozenset[int]], ...]
    end: Chamber

    def replay(self) -> Chamber:
        cur = self.steps[0][0] if self.steps else self.end
        for chamber, wall in self.steps:
            if chamber != cur:
                raise ValueError("inconsistent path")
            cur = chamber.cross(wall)
        return cur

    def walls(self) -> list[frozenset[int]]:
        return [w for _, w in self.steps]


def crossing_path(src: Chamber, dst: Chamber, max_retries: int = 120) -> CrossingPath:
    """Segment-method path of simple crossings from ``src`` down to ``dst``.

    Interior witnesses of both chambers are joined by a straight segment; each
    wall where the chambers differ is linear in the segment parameter, so it is
    crossed exactly once and downward.  The destination witness is perturbed by
    exact rational offsets until all crossing times are distinct.
    """
    if src.space != dst.space:
        raise NotComparableError("chambers live in different spaces")
    if src == dst:
        return CrossingPath((), dst)
    diff = []
    for J in src.space.subsets():
        lo, hi = dst.value(J), src.value(J)
        if lo > hi:
            raise NotComparableError(
                f"{sorted(J)} is light above but heavy below; chambers incomparable"
            )
        if hi > lo:
            diff.append(J)
    p0, _ = realize(src) or (None, None)
    got = realize(dst)
    if p0 is None or got is None:
        raise NotRealizableError("both endpoints must be realizable")
    p1, s1 = got
    n = src.space.n
    for attempt in range(2, max_retries + 2):
        eps = [s1 / (2 * Fraction(attempt) ** j) for j in range(1, n + 1)]
        q1 = [p1[j] - eps[j] for j in range(n)]
        times = {}
        for J in diff:
            a0 = sum(p0[j - 1] for j in J)
            a1 = sum(q1[j - 1] for j in J)
            times[J] = (1 - a0) / (a1 - a0)
        if len(set(times.values())) == len(diff):
            order = sorted(diff, key=lambda J: times[J])
            steps = []
            cur = src
            for J in order:
                steps.append((cur, J))
                cur = cur.cross(J)
            if cur != dst:
                raise DegenerateSegmentError("path replay did not reach destination")
            return CrossingPath(tuple(steps), dst)
    raise DegenerateSegmentError(
        f"could not separate crossing times after {max_retries} perturbations"
    )


# -- enumeration ---------------------------------------------------------------------

_enum_cache: dict[StabilitySpace, tuple[Chamber, ...]] = {}


def enumerate_chambers(
    space: StabilitySpace, up_to_symmetry: bool = False, bound: int = ENUMERATION_BOUND
) -> list[Chamber]:
    """All realizable chambers of D_{g,n}, in deterministic order.

    Every chamber lies below the main chamber and is reached from it by a
    downward segment path, so breadth-first search over simple wall-crossings
    starting at C^M enumerates the chamber decomposition exactly.
    """
    if space.n > bound:
        raise BoundExceededError(f"n={space.n} exceeds enumeration bound {bound}")
    all_chambers = _enum_cache.get(space)
    if all_chambers is None:
        start = main_chamber(space)
        seen = {start}
        frontier = [start]
        while frontier:
            new_frontier = []
            for c in frontier:
                for S in space.subsets():
                    if c.value(S) != 1:
                        continue
                    try:
                        below = c.cross(S)
                    except (NotIncidentError, NotRealizableError):
                        continue
                    if below not in seen:
                        seen.add(below)
                        new_frontier.append(below)
            frontier = new_frontier
        all_chambers = tuple(sorted(seen, key=lambda c: (len(c.light_max), c.light_max)))
        _enum_cache[space] = all_chambers
    if not up_to_symmetry:
        return list(all_chambers)
    reps = {}
    for c in all_chambers:
        key = min(
            tuple(sorted(tuple(sorted(p[j - 1] for j in s)) for s in c.light_max))
            for p in itertools.permutations(space.labels)
        )
        reps.setdefault(key, c)
    return [reps[k] for k in sorted(reps)]
