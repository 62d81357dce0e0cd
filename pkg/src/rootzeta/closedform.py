"""Exact arithmetic in Q[pi, zeta(3), zeta(5), ..., zeta(15), log 2, Li_4(1/2)].

Elements are sparse maps from exponent vectors over :data:`SYMBOLS` to
rationals.  Even zeta values are rewritten as rational multiples of powers of
pi when they are built, so equal constants have equal normal forms as long as
the symbols are algebraically independent (assumed, not known).

Textual form: ``c · π^a · ζ(3)^b · ...`` joined by `` + ``, e.g.
``9/320 · π^4 · ζ(7) + -1429/384 · π^2 · ζ(9)``.  :func:`parse` also accepts
ASCII (``*``, ``pi``, ``zeta(3)``, ``log(2)``, ``Li4(1/2)``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from ._bernoulli import bernoulli_number
from .errors import DomainError, ParseError
from .series import PrecisionConfig, SeriesResult, mp_log2, mp_pi, polylog, riemann_zeta

SYMBOLS = ("π", "ζ(3)", "ζ(5)", "ζ(7)", "ζ(9)", "ζ(11)", "ζ(13)", "ζ(15)", "log2", "Li4(1/2)")
_NSYM = len(SYMBOLS)
_ASCII = {"pi": "π", "zeta": "ζ", "log(2)": "log2", "log2": "log2", "li4(1/2)": "Li4(1/2)", "Li4(1/2)": "Li4(1/2)"}

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class ClosedForm:
    terms: tuple[tuple[Monomial, Fraction], ...] = ()

    @staticmethod
    def _from(d: dict) -> "ClosedForm":
        return ClosedForm(tuple(sorted((m, Fraction(c)) for m, c in d.items() if c != 0)))

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    # constructors ---------------------------------------------------------
    @staticmethod
    def const(q: Scalar) -> "ClosedForm":
        return ClosedForm._from({(0,) * _NSYM: Fraction(q)})

    @staticmethod
    def symbol(i: int, power: int = 1) -> "ClosedForm":
        if power < 0:
            raise DomainError("negative powers are not in the ring")
        m = [0] * _NSYM
        m[i] = power
        return ClosedForm._from({tuple(m): Fraction(1)})

    @staticmethod
    def pi(power: int = 1) -> "ClosedForm":
        return ClosedForm.symbol(0, power)

    @staticmethod
    def zeta(n: int) -> "ClosedForm":
        """``zeta(n)``: even ``n`` becomes a rational multiple of ``pi^n``."""
        if n < 2:
            raise DomainError("zeta(n) needs n >= 2")
        if n % 2 == 0:
            q = (-1) ** (n // 2 + 1) * bernoulli_number(n) * 2 ** (n - 1) / math.factorial(n)
            return ClosedForm.pi(n) * q
        if n > 15:
            raise DomainError("odd zeta values above zeta(15) are outside the symbol basis")
        return ClosedForm.symbol((n - 1) // 2)

    @staticmethod
    def log2() -> "ClosedForm":
        return ClosedForm.symbol(8)

    @staticmethod
    def li4_half() -> "ClosedForm":
        return ClosedForm.symbol(9)

    # ring operations ------------------------------------------------------
    def __add__(self, other) -> "ClosedForm":
        other = _lift(other)
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) + c
        return ClosedForm._from(d)

    __radd__ = __add__

    def __neg__(self) -> "ClosedForm":
        return ClosedForm(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other) -> "ClosedForm":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "ClosedForm":
        return _lift(other) - self

    def __mul__(self, other) -> "ClosedForm":
        if isinstance(other, (int, Fraction)):
            return ClosedForm._from({m: c * other for m, c in self.terms})
        other = _lift(other)
        d: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return ClosedForm._from(d)

    __rmul__ = __mul__

    def __truediv__(self, q: Scalar) -> "ClosedForm":
        return self * (Fraction(1) / Fraction(q))

    def __pow__(self, n: int) -> "ClosedForm":
        if n < 0:
            raise DomainError("negative powers are not in the ring")
        out = ClosedForm.const(1)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return render(self)


def _lift(x) -> ClosedForm:
    if isinstance(x, ClosedForm):
        return x
    if isinstance(x, (int, Fraction)):
        return ClosedForm.const(x)
    raise DomainError(f"cannot convert {type(x).__name__} to a closed form")


def cf_add(a: ClosedForm, b) -> ClosedForm:
    return a + b


def cf_mul(a: ClosedForm, b) -> ClosedForm:
    return a * b


def cf_scale(a: ClosedForm, q: Scalar) -> ClosedForm:
    return a * Fraction(q)


def cf_equal(a: ClosedForm, b: ClosedForm) -> bool:
    """Structural equality of normal forms (assumes the symbols are algebraically independent)."""
    return (a - b).is_zero()


def _symbol_values(cfg: PrecisionConfig) -> list[SeriesResult]:
    exact = lambda v: SeriesResult(value=v, abs_error_estimate=float(abs(v)) * cfg.scalar_eps)  # noqa: E731
    vals = [exact(mp_pi(cfg))]
    for n in range(3, 16, 2):
        vals.append(riemann_zeta(n, cfg))
    vals.append(exact(mp_log2(cfg)))
    vals.append(polylog(4, mpmath.mpf(1) / 2, cfg))
    return vals


def cf_eval(a: ClosedForm, cfg: PrecisionConfig | None = None) -> SeriesResult:
    """Numerical value with an error bound propagated from the symbol values."""
    cfg = cfg or PrecisionConfig()
    with mpmath.workprec(cfg.working_precision + 16):
        vals = _symbol_values(cfg)
        total = mpmath.mpf(0)
        err = 0.0
        for m, c in a.terms:
            term = mpmath.mpf(c.numerator) / c.denominator
            rel = 0.0
            for e, v in zip(m, vals):
                if e:
                    term *= v.value.real**e
                    rel += e * v.abs_error_estimate / float(abs(v.value))
            total += term
            err += float(abs(term)) * (rel + cfg.scalar_eps)
        return SeriesResult(value=total, abs_error_estimate=err)


# text form ---------------------------------------------------------------
def render(a: ClosedForm) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for m, c in sorted(a.terms, key=lambda mc: (-sum(mc[0]), tuple(-x for x in mc[0]))):
        fac = [str(c)]
        for e, name in zip(m, SYMBOLS):
            if e == 1:
                fac.append(name)
            elif e > 1:
                fac.append(f"{name}^{e}")
        parts.append(" · ".join(fac))
    return " + ".join(parts)


_FACTOR = re.compile(r"^(π|ζ\(\d+\)|log2|Li4\(1/2\))(?:\^(\d+))?$")


def _normalize(text: str) -> str:
    t = text.replace("*", "·").replace("pi", "π").replace("zeta", "ζ").replace("log(2)", "log2")
    t = re.sub(r"(?i)li4\(1/2\)", "Li4(1/2)", t)
    return t


def parse(text: str) -> ClosedForm:
    """Inverse of :func:`render` (also accepts ASCII spellings)."""
    t = _normalize(text.strip())
    if not t:
        raise ParseError("empty closed form")
    if t == "0":
        return ClosedForm()
    out = ClosedForm()
    for term in re.split(r"\s\+\s", t):
        factors = [f.strip() for f in term.split("·")]
        value = ClosedForm.const(1)
        for f in factors:
            if not f:
                raise ParseError(f"empty factor in {term!r}")
            mt = _FACTOR.match(f)
            if mt:
                name, power = mt.group(1), int(mt.group(2) or 1)
                if name.startswith("ζ("):
                    n = int(name[2:-1])
                    try:
                        value = value * ClosedForm.zeta(n) ** power
                    except DomainError as exc:
                        raise ParseError(str(exc)) from None
                else:
                    value = value * ClosedForm.symbol(SYMBOLS.index(name), power)
                continue
            try:
                value = value * Fraction(f.replace(" ", ""))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"cannot read factor {f!r}") from None
        out = out + value
    return out
