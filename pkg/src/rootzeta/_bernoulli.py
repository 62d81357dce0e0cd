"""Exact Bernoulli numbers and polynomials (convention B_1 = -1/2)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be non-negative")
    return _bernoulli_table(n)[n]


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k<=m} C(m+1, k) B_k = 0 for m >= 1
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum((comb(m + 1, k) * table[k] for k in range(m)), Fraction(0))
        table.append(-acc / (m + 1))
    return tuple(table)


@lru_cache(maxsize=None)
def bernoulli_poly_coeffs(n: int) -> tuple[Fraction, ...]:
    """Coefficients of B_n(x) in increasing powers of x."""
    table = _bernoulli_table(n)
    return tuple(comb(n, j) * table[n - j] for j in range(n + 1))


def bernoulli_poly_exact(n: int, x) -> Fraction:
    """B_n(x) for rational ``x`` (anything accepted by :class:`Fraction`)."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(bernoulli_poly_coeffs(n)):
        acc = acc * x + c
    return acc
