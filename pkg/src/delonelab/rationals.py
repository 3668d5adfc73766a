"""Exact rational scalar helpers shared across the package.

Every geometric predicate in this library compares squared distances and
volumes in exact rational arithmetic. Coordinates are plain ``int`` when
integral and ``fractions.Fraction`` otherwise; both mix freely in Python
arithmetic, and the int fast path matters for the larger constructions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def as_rational(x) -> Rational:
    """Normalize ints, Fractions and "p/q" strings to int-or-Fraction."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Rational:
    """Parse 'p' or 'p/q' into an exact rational."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return as_rational(Fraction(int(num), int(den)))
    return int(s)


def rational_to_pair(x: Rational) -> list:
    """Serialize to the reduced [numerator, denominator] JSON form."""
    f = Fraction(x)
    return [f.numerator, f.denominator]


def pair_to_rational(pair) -> Rational:
    """Read a [num, den] pair, insisting on the reduced, den>0 form."""
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise ValueError(f"rational must be a [num, den] pair, got {pair!r}")
    num, den = pair
    if not (isinstance(num, int) and isinstance(den, int)) or isinstance(num, bool) or isinstance(den, bool):
        raise ValueError(f"rational pair must hold integers, got {pair!r}")
    if den <= 0:
        raise ValueError(f"rational denominator must be positive, got {pair!r}")
    if math.gcd(num, den) != 1:
        raise ValueError(f"rational pair must be reduced, got {pair!r}")
    return num if den == 1 else Fraction(num, den)


def ceil_sqrt(x: Rational) -> int:
    """Smallest integer n with n*n >= x, for x >= 0, exactly."""
    f = Fraction(x)
    if f < 0:
        raise ValueError("ceil_sqrt of a negative value")
    a, b = f.numerator, f.denominator
    n = math.isqrt(a // b)
    while n * n * b < a:
        n += 1
    return n


def floor_sqrt(x: Rational) -> int:
    """Largest integer n with n*n <= x, for x >= 0, exactly."""
    f = Fraction(x)
    if f < 0:
        raise ValueError("floor_sqrt of a negative value")
    a, b = f.numerator, f.denominator
    n = math.isqrt(a // b) + 1
    while n * n * b > a:
        n -= 1
    return n


def ceil_mul_sqrt(mult: Rational, squared: Rational) -> int:
    """ceil(mult * sqrt(squared)) without leaving rational arithmetic.

    mult must be nonnegative. Uses the equivalence n >= m*sqrt(s)
    <=> n^2 >= m^2*s for nonnegative n.
    """
    m = Fraction(mult)
    if m < 0:
        raise ValueError("multiplier must be nonnegative")
    return ceil_sqrt(m * m * Fraction(squared))


def is_perfect_square(x: Rational) -> bool:
    f = Fraction(x)
    if f < 0:
        return False
    rn = math.isqrt(f.numerator)
    rd = math.isqrt(f.denominator)
    return rn * rn == f.numerator and rd * rd == f.denominator


def approx_str(x: Rational, digits: int = 6) -> str:
    """Decimal approximation for human-facing summaries only."""
    return f"{float(Fraction(x)):.{digits}g}"


def approx_sqrt_str(squared: Rational, digits: int = 6) -> str:
    """Decimal approximation of sqrt(squared), for summaries only."""
    return f"{math.sqrt(float(Fraction(squared))):.{digits}g}"
