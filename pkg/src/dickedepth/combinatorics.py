"""Exact integer and rational helpers.

Python integers are arbitrary precision and :class:`fractions.Fraction` is
always kept in lowest terms with a positive denominator, so both serve
directly as the big-natural and rational types of the toolkit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Fraction",
    "binomial",
    "rational_cmp",
    "format_rational",
    "parse_rational",
    "to_float",
]


def binomial(n: int, k: int) -> int:
    """Return n-choose-k, and 0 whenever ``k < 0`` or ``k > n``."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def rational_cmp(a: Rational, b: Rational) -> int:
    """Three-way comparison: -1 if a < b, 0 if equal, 1 if a > b.

    Both operands are compared by cross-multiplication; no float conversion.
    """
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def format_rational(value: Rational) -> str:
    """Serialize as ``"p/q"`` in lowest terms (integers keep ``/1``)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts bare integers."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def to_float(value: Rational) -> float:
    """Nearest float, correctly rounded even for huge numerators."""
    value = Fraction(value)
    return value.numerator / value.denominator
