"""Directed-rounding helpers for rational powers, using integers only."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def iroot_floor(x: int, k: int) -> int:
    """Largest y >= 0 with y**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    if k == 2:
        return isqrt(x)
    y = 1 << -(-x.bit_length() // k)  # y**k >= x
    while True:
        z = ((k - 1) * y + x // y ** (k - 1)) // k
        if z >= y:
            break
        y = z
    while y**k > x:
        y -= 1
    while (y + 1) ** k <= x:
        y += 1
    return y


def iroot_ceil(x: int, k: int) -> int:
    y = iroot_floor(x, k)
    return y if y**k == x else y + 1


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def power_ceil(base, exponent) -> int:
    """Smallest integer >= base**exponent, for base > 0 rational and exponent rational."""
    b, e = _as_fraction(base), _as_fraction(exponent)
    if b <= 0:
        raise ValueError("base must be positive")
    if e < 0:
        b, e = 1 / b, -e
    num, den = b.numerator ** e.numerator, b.denominator ** e.numerator
    # want ceil((num/den)^(1/k)), k = e.denominator: least y with y^k * den >= num
    k = e.denominator
    y = iroot_ceil(-(-num // den), k)
    while y > 0 and (y - 1) ** k * den >= num:
        y -= 1
    while y**k * den < num:
        y += 1
    return y


def power_floor(base, exponent) -> int:
    """Largest integer <= base**exponent."""
    b, e = _as_fraction(base), _as_fraction(exponent)
    if b <= 0:
        raise ValueError("base must be positive")
    if e < 0:
        b, e = 1 / b, -e
    num, den = b.numerator ** e.numerator, b.denominator ** e.numerator
    k = e.denominator
    y = iroot_floor(num // den, k)
    while (y + 1) ** k * den <= num:
        y += 1
    return y


def fraction_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def fraction_floor(x: Fraction) -> int:
    return x.numerator // x.denominator


class Bound:
    """Product of a rational coefficient and rational powers, rounded in one direction.

    ``terms`` is a list of ``(base, exponent)`` pairs.  ``upper`` returns an
    integer at least the true value; ``lower`` one at most it.
    """

    def __init__(self, coeff=1, terms=()):
        self.coeff = _as_fraction(coeff)
        self.terms = list(terms)

    def _factor(self, b, e, up: bool):
        b, e = _as_fraction(b), _as_fraction(e)
        if e.denominator == 1:
            return b ** int(e)
        return power_ceil(b, e) if up else power_floor(b, e)

    def upper(self) -> int:
        val = self.coeff
        for b, e in self.terms:
            val *= self._factor(b, e, True)
        return fraction_ceil(val)

    def lower(self) -> int:
        val = self.coeff
        for b, e in self.terms:
            val *= self._factor(b, e, False)
        return fraction_floor(val)
