"""Sparse multivariate polynomials over exact rationals with a formal pi.

A :class:`PolyRing` fixes an ordered variable list ``(pi, t1, ..., tn)`` and
optionally one trailing integration variable.  The symbol pi is always index 0
and is never treated numerically here; numeric evaluation lives in
:mod:`wpvol.numeric`.

A :class:`Poly` is a map from exponent vectors to nonzero Fraction
coefficients.  Polys are immutable values: every operation returns a new Poly
in canonical form (no stored zeros), so equality is plain term-map equality
and instances can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import RingMismatchError, VariableRangeError
from .rationals import format_rat, rat

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class PolyRing:
    """Ordered variable list; index 0 is always the formal symbol pi."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names or self.names[0] != "pi":
            raise ValueError("a PolyRing must start with the variable 'pi'")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def const(self, c: Scalar) -> "Poly":
        c = rat(c)
        if c == 0:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def one(self) -> "Poly":
        return self.const(1)

    def var(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise VariableRangeError(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def pi(self) -> "Poly":
        return self.var(0)

    def two_pi(self) -> "Poly":
        return self.const(2) * self.var(0)

    def monomial(self, c: Scalar, exps: Sequence[int]) -> "Poly":
        if len(exps) != self.nvars:
            raise VariableRangeError("exponent vector has wrong length")
        c = rat(c)
        if c == 0:
            return self.zero()
        return Poly(self, {tuple(int(e) for e in exps): c})


def angle_ring(n: int, extra: str | None = None) -> PolyRing:
    """Ring (pi, t1, ..., tn) with an optional trailing variable."""
    names = ("pi",) + tuple(f"t{i}" for i in range(1, n + 1))
    if extra is not None:
        names = names + (extra,)
    return PolyRing(names)


PI_RING = PolyRing(("pi",))


class Poly:
    """Immutable sparse polynomial over Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], Fraction]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", {e: c for e, c in terms.items() if c != 0})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.ring, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"ring mismatch: {self.ring.names} vs {other.ring.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            q = rat(other)
            if q == 0:
                return self.ring.zero()
            return Poly(self.ring, {e: c * q for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and other != 0:
            return self * (Fraction(1) / rat(other))
        raise TypeError("Poly division is only defined by nonzero scalars")

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus ------------------------------------------------------------

    def diff(self, v: int) -> "Poly":
        """Formal partial derivative with respect to variable v (not pi)."""
        if not 1 <= v < self.ring.nvars:
            raise VariableRangeError(f"cannot differentiate in variable index {v}")
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            k = e[v]
            if k == 0:
                continue
            e2 = list(e)
            e2[v] = k - 1
            t = tuple(e2)
            s = out.get(t, 0) + c * k
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return Poly(self.ring, out)

    def subs(self, v: int, value: Union["Poly", Scalar]) -> "Poly":
        """Substitute variable v by a Poly or rational; exact composition."""
        if not 0 <= v < self.ring.nvars:
            raise VariableRangeError(f"variable index {v} out of range")
        if not isinstance(value, Poly):
            value = self.ring.const(value)
        if value.ring != self.ring:
            raise RingMismatchError("substitution value lives in a different ring")
        powers: list[Poly] = [self.ring.one()]
        result = self.ring.zero()
        for e, c in sorted(self.terms.items()):
            k = e[v]
            while len(powers) <= k:
                powers.append(powers[-1] * value)
            e2 = list(e)
            e2[v] = 0
            result = result + powers[k] * Poly(self.ring, {tuple(e2): c})
        return result

    def integrate_upper(self, t: int, upper: Union["Poly", Scalar]) -> "Poly":
        """Exact integral from 0 to ``upper`` in variable t.

        Computed as the formal antiderivative in t followed by substitution of
        the upper bound.  The bound must not involve t, except for the bound
        being exactly the variable t itself (symbolic upper limit).
        """
        if not 1 <= t < self.ring.nvars:
            raise VariableRangeError(f"cannot integrate in variable index {t}")
        if not isinstance(upper, Poly):
            upper = self.ring.const(upper)
        if upper.ring != self.ring:
            raise RingMismatchError("upper bound lives in a different ring")
        anti: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[t] = e[t] + 1
            anti[tuple(e2)] = c / (e[t] + 1)
        antiderivative = Poly(self.ring, anti)
        if upper == self.ring.var(t):
            return antiderivative
        if any(e[t] for e in upper.terms):
            raise VariableRangeError("upper bound involves the integration variable")
        return antiderivative.subs(t, upper)

    # -- structure queries ----------------------------------------------------

    def total_degree(self) -> int:
        """Total degree counting pi as a degree-1 variable; zero poly has -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, v: int) -> int:
        if not self.terms:
            return -1
        return max(e[v] for e in self.terms)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def coefficient_of(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    # -- ring moves -------------------------------------------------------------

    def compose(self, target: PolyRing, images: Sequence["Poly"]) -> "Poly":
        """Map this poly into ``target`` sending variable i to images[i].

        images[0] must be the target pi; this keeps pi formal through every
        change of variables.
        """
        if len(images) != self.ring.nvars:
            raise VariableRangeError("need one image per source variable")
        for im in images:
            if im.ring != target:
                raise RingMismatchError("image polynomial in wrong ring")
        if images[0] != target.pi():
            raise ValueError("pi must map to pi")
        result = target.zero()
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            if k == 0:
                return target.one()
            got = cache.get((i, k))
            if got is None:
                got = power(i, k - 1) * images[i]
                cache[(i, k)] = got
            return got

        for e, c in sorted(self.terms.items()):
            m = target.const(c)
            for i, k in enumerate(e):
                if k:
                    m = m * power(i, k)
            result = result + m
        return result

    def drop_last_var(self) -> "Poly":
        """Project into the ring without the trailing variable (must be unused)."""
        if self.degree_in(self.ring.nvars - 1) > 0:
            raise VariableRangeError("polynomial still involves the last variable")
        ring = PolyRing(self.ring.names[:-1])
        return Poly(ring, {e[:-1]: c for e, c in self.terms.items()})

    def evaluate_angles(self, values: Sequence[Union["Poly", Scalar]]) -> "Poly":
        """Substitute every angle variable; result is univariate in pi.

        ``values`` holds one entry per angle variable (indices 1..n); each may
        be a Fraction or a Poly of this ring (typically a rational multiple of
        pi).  This is the formal evaluation mode.
        """
        if len(values) != self.ring.nvars - 1:
            raise VariableRangeError(
                f"need {self.ring.nvars - 1} values, got {len(values)}"
            )
        p = self
        for i, val in enumerate(values, start=1):
            p = p.subs(i, val)
        return Poly(PI_RING, {(e[0],): c for e, c in p.terms.items()})

    # -- printing ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms sorted lexicographically by exponent vector (canonical order)."""
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            coeff = str(c) if c.denominator != 1 else str(c.numerator)
            if factors:
                body = "*".join(factors)
                if c == 1:
                    chunk = body
                elif c == -1:
                    chunk = f"-{body}"
                else:
                    chunk = f"{coeff}*{body}"
            else:
                chunk = coeff
            chunks.append(chunk)
        out = chunks[0]
        for chunk in chunks[1:]:
            out += f" - {chunk[1:]}" if chunk.startswith("-") else f" + {chunk}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"

    def to_latex(self) -> str:
        """LaTeX with explicit powers of pi, in the display style of the fixtures."""
        if not self.terms:
            return "0"
        def texname(name: str) -> str:
            if name == "pi":
                return "\\pi"
            if name.startswith("t") and name[1:].isdigit():
                return f"\\theta_{{{name[1:]}}}"
            head = name.rstrip("0123456789")
            tail = name[len(head):]
            return f"{head}_{{{tail}}}" if head and tail else name
        chunks = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(texname(name))
                elif k > 1:
                    factors.append(f"{texname(name)}^{{{k}}}")
            mag = abs(c)
            if mag.denominator == 1:
                coeff = str(mag.numerator)
            else:
                coeff = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            body = "".join(factors)
            if body and mag == 1:
                term = body
            elif body:
                term = coeff + body
            else:
                term = coeff
            chunks.append(("-" if c < 0 else "+", term))
        sign, term = chunks[0]
        out = ("-" if sign == "-" else "") + term
        for sign, term in chunks[1:]:
            out += f" {sign} {term}"
        return out

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        """Canonical JSON form: terms sorted lexicographically by exponents."""
        return {
            "vars": list(self.ring.names),
            "terms": [
                {"c": format_rat(c), "e": list(e)} for e, c in self.sorted_terms()
            ],
        }


def poly_from_text(ring: PolyRing, text: str) -> Poly:
    """Parse the canonical text form produced by str(poly)."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    total = ring.zero()
    for chunk in text.replace(" - ", " + -").split(" + "):
        chunk = chunk.strip()
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:]
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        for piece in chunk.split("*"):
            piece = piece.strip()
            if "^" in piece:
                name, _, k = piece.partition("^")
                exps[ring.index(name)] += int(k)
            elif piece in ring.names:
                exps[ring.index(piece)] += 1
            else:
                coeff *= Fraction(piece)
        total = total + ring.monomial(coeff, exps)
    return total


def poly_from_json_dict(data: Mapping) -> Poly:
    ring = PolyRing(tuple(data["vars"]))
    terms: dict[tuple[int, ...], Fraction] = {}
    for item in data["terms"]:
        e = tuple(int(x) for x in item["e"])
        if len(e) != ring.nvars:
            raise ValueError("exponent vector length does not match vars")
        terms[e] = rat(item["c"])
    return Poly(ring, terms)


def phi_form(ring: PolyRing, wall: Iterable[int]) -> Poly:
    """The linear form phi_S = sum_{j in S} theta_j - 2*pi*(|S|-1)."""
    wall = sorted(wall)
    p = ring.zero()
    for j in wall:
        p = p + ring.var(j)
    return p - (len(wall) - 1) * ring.two_pi()
