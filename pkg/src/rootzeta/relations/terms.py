"""Symbolic sums of products of zeta-type values with ``2^s``-linear coefficients.

A :class:`TermSum` maps a product of atoms to a coefficient ``c0 + c1 * 2^s``
with rational ``c0, c1``. Atoms are

* ``("zeta", arg)`` - Riemann zeta,
* ``("phi", arg)`` - alternating zeta,
* ``("ez2", arg1, arg2, sigma1, sigma2)`` - signed double zeta,

where each ``arg`` is a pair ``(uses_s, offset)`` meaning ``s + offset`` or
the integer ``offset``.  Even zeta values at integers stay symbolic here;
the sum is only ever compared structurally or evaluated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import mpmath

from ..series import PrecisionConfig, SeriesResult, euler_zagier2, phi, riemann_zeta

Arg = tuple[bool, int]
Atom = tuple


def S(offset: int = 0) -> Arg:
    """The argument ``s + offset``."""
    return (True, int(offset))


def N(value: int) -> Arg:
    """The integer argument ``value``."""
    return (False, int(value))


def zeta(arg: Arg) -> Atom:
    return ("zeta", arg)


def phi_(arg: Arg) -> Atom:
    return ("phi", arg)


def ez2(a: Arg, b: Arg, s1: int = 1, s2: int = 1) -> Atom:
    return ("ez2", a, b, int(s1), int(s2))


@dataclass(frozen=True)
class Coeff:
    """``c0 + c1 * 2^s`` with rational parts."""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)

    def __add__(self, other: "Coeff") -> "Coeff":
        return Coeff(self.c0 + other.c0, self.c1 + other.c1)

    def scale(self, q) -> "Coeff":
        q = Fraction(q)
        return Coeff(self.c0 * q, self.c1 * q)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def value(self, s):
        return self.c0 + self.c1 * mpmath.power(2, s)


def const(q) -> Coeff:
    return Coeff(Fraction(q), Fraction(0))


def pow2s(q, shift: int = 0) -> Coeff:
    """``q * 2^(s + shift)``."""
    return Coeff(Fraction(0), Fraction(q) * Fraction(2) ** shift)


@dataclass
class TermSum:
    terms: dict = field(default_factory=dict)

    def add(self, coeff: Coeff, factors: Iterable[Atom]) -> None:
        key = tuple(sorted(factors, key=repr))
        new = self.terms.get(key, Coeff()) + coeff
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __eq__(self, other) -> bool:
        return isinstance(other, TermSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def render(self) -> str:
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            coef = []
            if c.c0:
                coef.append(str(c.c0))
            if c.c1:
                coef.append(f"{c.c1}*2^s")
            parts.append(f"({' + '.join(coef)}) * " + " * ".join(_atom_str(a) for a in key))
        return "\n".join(parts)

    def evaluate(self, s, cfg: PrecisionConfig | None = None) -> SeriesResult:
        """Numerical value at ``s`` with propagated error estimates."""
        cfg = cfg or PrecisionConfig()
        total = mpmath.mpc(0)
        err = 0.0
        with mpmath.workprec(cfg.working_precision + 16):
            for key, c in self.terms.items():
                val = mpmath.mpc(1)
                rel = 0.0
                for atom in key:
                    r = _atom_value(atom, s, cfg)
                    val *= r.value
                    rel += r.abs_error_estimate / max(float(abs(r.value)), 1e-300)
                cv = c.value(s)
                total += cv * val
                err += float(abs(cv * val)) * rel + float(abs(cv * val)) * 2.0 ** -cfg.working_precision
        return SeriesResult(value=total, abs_error_estimate=err)


def _arg_value(arg: Arg, s):
    uses_s, off = arg
    return (s + off) if uses_s else off


def _atom_value(atom: Atom, s, cfg: PrecisionConfig) -> SeriesResult:
    kind = atom[0]
    if kind == "zeta":
        return riemann_zeta(_arg_value(atom[1], s), cfg)
    if kind == "phi":
        return phi(_arg_value(atom[1], s), cfg)
    return euler_zagier2(_arg_value(atom[1], s), _arg_value(atom[2], s), atom[3], atom[4], cfg)


def _arg_str(arg: Arg) -> str:
    uses_s, off = arg
    if not uses_s:
        return str(off)
    return "s" if off == 0 else f"s{off:+d}"


def _atom_str(atom: Atom) -> str:
    if atom[0] in ("zeta", "phi"):
        return f"{atom[0]}({_arg_str(atom[1])})"
    sig = "" if atom[3:] == (1, 1) else f";{atom[3]},{atom[4]}"
    return f"ez2({_arg_str(atom[1])},{_arg_str(atom[2])}{sig})"
