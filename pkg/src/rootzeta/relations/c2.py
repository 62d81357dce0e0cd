"""Partial-fraction machinery for the C_2 zeta-function.

``zeta_2(a, s, b, c; C_2) = sum_{m,n} m^-a n^-s (m+n)^-b (m+2n)^-c``.  Two
partial-fraction steps and a parity split of ``m + 2n`` turn it into
Riemann zeta, alternating zeta and signed double zeta values; the right-hand
side is generated here as a :class:`~rootzeta.relations.terms.TermSum`.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from ..errors import DomainError
from .terms import N, S, TermSum, const, ez2, phi_, pow2s, zeta

__all__ = [
    "pfd_terms",
    "pfd_evaluate",
    "c2_prop_terms",
    "c2_111_terms",
    "c2_121_terms",
    "c2_333_variant_terms",
    "c2_333_terms",
]


def pfd_terms(p: int, q: int, variant: str = "full") -> list[tuple[int, int, int, int]]:
    """Decompose ``1 / (X^p (X+Y)^q)``.

    Returns ``(coefficient, x, y, z)`` tuples standing for
    ``coefficient / (X^x Y^y (X+Y)^z)``.  The ``incomplete`` variant keeps the
    single term ``1 / (X Y^(p+q-2) (X+Y))`` instead of splitting it.
    """
    if p < 1 or q < 1:
        raise DomainError("pfd needs p, q >= 1")
    if variant not in ("full", "incomplete"):
        raise DomainError(f"unknown variant {variant!r}")
    out = []
    top_x = p if variant == "full" else p - 1
    top_z = q if variant == "full" else q - 1
    for i in range(top_x):
        out.append(((-1) ** i * comb(q - 1 + i, i), p - i, q + i, 0))
    if variant == "incomplete":
        out.append(((-1) ** (p - 1) * comb(p + q - 2, p - 1), 1, p + q - 2, 1))
    for i in range(top_z):
        out.append(((-1) ** p * comb(p - 1 + i, i), 0, p + i, q - i))
    return out


def pfd_evaluate(terms, X, Y) -> Fraction:
    """Evaluate a term list at rational ``X, Y``."""
    X, Y = Fraction(X), Fraction(Y)
    return sum((Fraction(c) / (X**x * Y**y * (X + Y) ** z) for c, x, y, z in terms), Fraction(0))


def c2_prop_terms(a: int, b: int, c: int) -> TermSum:
    """Right-hand side of the three-block decomposition of ``zeta_2(a, s, b, c; C_2)``."""
    if min(a, b, c) < 1:
        raise DomainError("a, b, c must be positive integers")
    out = TermSum()
    w = a + b + c
    # block 1: sum over l < b
    for l in range(b):
        wt = const((-1) ** l * comb(c - 1 + l, l))
        _fill(out, a, b - l, a + c + l, b + c, w, wt, signed=False)
    # blocks 2 and 3: sum over l < c with 2^(s+b+l-1)
    for l in range(c):
        wt = pow2s((-1) ** b * comb(b - 1 + l, l), b + l - 1)
        _fill(out, a, c - l, a + b + l, b + c, w, wt, signed=False)
        _fill(out, a, c - l, a + b + l, b + c, w, wt, signed=True)
    return out


def _fill(out: TermSum, a: int, q: int, ez_shift: int, zz_shift: int, w: int, wt, signed: bool) -> None:
    """Add ``wt * {...}`` where ``q`` is the remaining (X+Y)-exponent."""
    sa = (-1) ** a
    ez_signs = (-1, 1) if signed else (1, 1)
    alt = phi_ if signed else zeta
    for j in range(q - 1):
        out.add(wt.scale(sa * comb(a - 1 + j, j)), [ez2(S(ez_shift + j), N(q - j), *ez_signs)])
    for j in range(a - 1):
        out.add(wt.scale((-1) ** j * comb(q - 1 + j, j)), [alt(S(zz_shift + j)), zeta(N(a - j))])
    mid = wt.scale(-sa * comb(a + q - 2, q - 1))
    out.add(mid, [_ez_mid(w, signed)])
    out.add(mid, [alt(S(w))])


def _ez_mid(w: int, signed: bool):
    # sum_{m <= n} m^-1 n^-(s+w-1) minus the diagonal, with the sign on n
    return ez2(N(1), S(w - 1), 1, -1 if signed else 1)


def c2_111_terms() -> TermSum:
    """Four-term specialization at ``(a, b, c) = (1, 1, 1)``."""
    out = TermSum()
    one_minus = const(1) + pow2s(-1)
    out.add(one_minus, [ez2(N(1), S(2))])
    out.add(one_minus, [zeta(S(3))])
    out.add(pow2s(-1), [ez2(N(1), S(2), 1, -1)])
    out.add(pow2s(-1), [phi_(S(3))])
    return out


def c2_121_terms() -> TermSum:
    """Specialization at ``(a, b, c) = (1, 2, 1)``."""
    out = TermSum()
    out.add(pow2s(1, 1), [ez2(N(1), S(3))])
    out.add(pow2s(1, 1), [zeta(S(4))])
    out.add(pow2s(1, 1), [ez2(N(1), S(3), 1, -1)])
    out.add(pow2s(1, 1), [phi_(S(4))])
    out.add(const(-1), [ez2(S(2), N(2))])
    return out


def c2_333_variant_terms() -> TermSum:
    """A hand-simplified ``(3, 3, 3)`` term list whose coefficients differ from
    :func:`c2_333_terms`; it does not match the C2 sum numerically.
    """
    out = TermSum()
    out.add(pow2s(19, 2) + const(8), [ez2(S(7), N(2))])
    out.add(pow2s(1, 2) + const(-1), [ez2(S(6), N(3))])
    out.add(const(3) + pow2s(-3, 6), [ez2(N(1), S(8))])
    out.add(const(3) + pow2s(-3, 6), [zeta(S(9))])
    out.add(pow2s(39, 2) + const(3), [zeta(N(2)), zeta(S(7))])
    out.add(const(4) + pow2s(-31, 2), [zeta(N(3)), zeta(S(6))])
    out.add(const(-192), [ez2(N(1), S(8), 1, -1)])
    out.add(const(-192), [phi_(S(9))])
    out.add(const(156), [zeta(N(2)), phi_(S(7))])
    out.add(const(-124), [zeta(N(3)), phi_(S(6))])
    out.add(pow2s(19, 2), [ez2(S(7), N(2), -1, 1)])
    out.add(pow2s(1, 2), [ez2(S(6), N(3), -1, 1)])
    return out


def c2_333_terms() -> TermSum:
    """Specialization at ``(a, b, c) = (3, 3, 3)``, coefficients from the three-block formula."""
    out = TermSum()
    out.add(pow2s(-192), [ez2(N(1), S(8), 1, -1)])
    out.add(const(3) + pow2s(-192), [ez2(N(1), S(8))])
    out.add(pow2s(4), [ez2(S(6), N(3), -1, 1)])
    out.add(const(-1) + pow2s(4), [ez2(S(6), N(3))])
    out.add(pow2s(36), [ez2(S(7), N(2), -1, 1)])
    out.add(pow2s(36), [ez2(S(7), N(2))])
    out.add(pow2s(-124), [zeta(N(3)), phi_(S(6))])
    out.add(pow2s(156), [zeta(N(2)), phi_(S(7))])
    out.add(pow2s(-192), [phi_(S(9))])
    out.add(const(-3) + pow2s(156), [zeta(N(2)), zeta(S(7))])
    out.add(const(4) + pow2s(-124), [zeta(N(3)), zeta(S(6))])
    out.add(const(3) + pow2s(-192), [zeta(S(9))])
    return out
