"""Harmonic numbers, exact where affordable."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

import mpmath

EXACT_LIMIT = 10_000


def harmonic_fractions(jmax: int):
    """Yield ``(j, numerator, denominator)`` of H_j for j = 1..jmax.

    The denominator is lcm(1..j), unreduced, which keeps each step to a
    couple of big-integer multiplications.
    """
    num, den = 0, 1
    for j in range(1, jmax + 1):
        g = gcd(den, j)
        scale = j // g
        num = num * scale + den // g
        den *= scale
        yield j, num, den


@lru_cache(maxsize=64)
def harmonic_exact(j: int) -> Fraction:
    if j < 1:
        raise ValueError("harmonic numbers start at j = 1")
    for _, num, den in harmonic_fractions(j):
        pass
    return Fraction(num, den)


def harmonic(j: int) -> Union[Fraction, mpmath.mpf]:
    """H_j: an exact fraction up to ``EXACT_LIMIT``, a 40-digit float beyond."""
    if j < 1:
        raise ValueError("harmonic numbers start at j = 1")
    if j <= EXACT_LIMIT:
        return harmonic_exact(j)
    with mpmath.workdps(40):
        return +mpmath.harmonic(j)
