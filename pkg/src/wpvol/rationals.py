"""Exact rational scalars.

The scalar type of the whole package is ``fractions.Fraction``: arbitrary
precision, always reduced to lowest terms, positive denominator.  This module
only adds the string forms used by the CLI and the serialization layer, where
rationals are written "p/q" and never as floats.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


def format_rat(q: Fraction) -> str:
    """Canonical "num/den" form, denominator always shown and positive."""
    return f"{q.numerator}/{q.denominator}"


def parse_weights(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated weight list such as "1/2,1/2,3/4"."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty weight list")
    return tuple(rat(p) for p in parts)
