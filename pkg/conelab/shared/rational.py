"""
Shared utilities for exact rationals and quadratic irrationals
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Union[int, Fraction]


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """
    Convert an integer, Fraction or "p/q" string to a Fraction.

    Floats are refused: every quantity in the toolkit is exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Refusing inexact value {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("Empty rational")
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"Rational must be written as p/q, got {value!r}")
        return Fraction(text)
    return Fraction(value)


def format_fraction(value: Rational) -> str:
    """Format a rational as "n" or "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def sign(value: Rational) -> int:
    return (value > 0) - (value < 0)


def _compare_sqrt(q: Fraction, d: Fraction, x: Fraction) -> int:
    """Sign of q*sqrt(d) - x, decided by sign analysis and squaring."""
    if d == 0 or q == 0:
        return sign(-x)
    if q > 0:
        if x <= 0:
            return 1
        return sign(q * q * d - x * x)
    if x >= 0:
        return -1
    return -sign(q * q * d - x * x)


@dataclass(frozen=True)
class QuadraticRoot:
    """
    The real number (p + q*sqrt(d)) / den, kept symbolic.

    Attributes:
        p: Rational offset
        q: Rational coefficient of the square root
        d: Nonnegative radicand
        den: Positive denominator
    """
    p: Fraction
    q: Fraction
    d: Fraction
    den: Fraction

    def __post_init__(self):
        for name in ("p", "q", "d", "den"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.d < 0:
            raise ValueError(f"Negative radicand {self.d}")
        if self.den <= 0:
            raise ValueError(f"Denominator must be positive, got {self.den}")

    def compare(self, r: Rational) -> int:
        """
        Compare this root with a rational.

        Returns:
            -1, 0 or 1 as the root is less than, equal to or greater than r
        """
        return _compare_sqrt(self.q, self.d, Fraction(r) * self.den - self.p)

    def __gt__(self, other: Rational) -> bool:
        return self.compare(other) > 0

    def lower_bound(self, bits: int) -> Fraction:
        """
        A rational not exceeding the root, within roughly 2**-bits of it.
        """
        scale = 1 << bits
        # floor(sqrt(d) * scale) / scale, computed on integers
        num, den = self.d.numerator, self.d.denominator
        root_floor = Fraction(isqrt(num * den * scale * scale), den * scale)
        if self.q >= 0:
            approx = self.p + self.q * root_floor
        else:
            root_ceil = root_floor + Fraction(1, den * scale)
            approx = self.p + self.q * root_ceil
        return approx / self.den

    def __str__(self) -> str:
        head = format_fraction(self.p)
        body = f"{head} + {format_fraction(self.q)}*sqrt({format_fraction(self.d)})"
        if self.den == 1:
            return f"({body})"
        return f"({body})/{format_fraction(self.den)}"
