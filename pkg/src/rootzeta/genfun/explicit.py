"""Closed-form generating functions evaluated directly (no series).

Variable orders follow :func:`rootzeta.rootsys.star_roots`:

* ``Br``: ``t1, t-2, ..., t-r, t+2, ..., t+r`` with ``lam = (m_2, ..., m_r)``;
* ``Dr``: ``t-2, ..., t-r, t+2, ..., t+r`` with ``lam = (m_2, ..., m_r)``;
* ``A3``: ``t13, t23, t24, t14`` with ``lam = (m_1, m_3)``;
* ``B3``: ``t1, t-2, t-3, t+2, t+3`` with ``lam = (m_2, m_3)`` and ``y = 0``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

from .._bernoulli import bernoulli_poly_exact
from ..errors import DomainError, EvaluationInstabilityError

W = 2j * math.pi
POLE_TOL = 1e-12

KINDS = ("Br", "Dr", "A3", "B3")


def _fac(num: complex, den: complex) -> complex:
    if abs(den) <= POLE_TOL * max(1.0, abs(num)):
        raise EvaluationInstabilityError(f"denominator {den:.3g} too close to a pole")
    return num / den


def _bern_gen(t: complex, x: float) -> complex:
    """``t e^{tx} / (e^t - 1)``, with the removable point ``t = 0`` handled by its series."""
    if abs(t) < 1e-4:
        return sum(float(bernoulli_poly_exact(n, Fraction(x)) / math.factorial(n)) * t**n for n in range(8))
    den = cmath.exp(t) - 1
    if abs(den) <= POLE_TOL:
        raise EvaluationInstabilityError("e^t - 1 vanishes")
    return t * cmath.exp(t * x) / den


def _frac(x: float) -> float:
    return x - math.floor(x)


def _e(x) -> complex:
    return cmath.exp(W * float(x))


def F_explicit(kind: str, r: int | None, t: Sequence[complex], y: Sequence | None, lam: Sequence[int]) -> complex:
    """Direct evaluation of an explicit generating function.

    Raises:
        EvaluationInstabilityError: if ``t`` is too close to a pole.
    """
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}")
    t = [complex(v) for v in t]
    lam = [int(v) for v in lam]
    if any(v < 1 for v in lam):
        raise DomainError("lambda entries must be positive integers")
    if kind == "A3":
        return _A3(t, _y(y, 3), lam)
    if kind == "B3":
        yy = _y(y, 3)
        if any(Fraction(v).denominator != 1 for v in yy):
            raise DomainError("the B3 formula needs y = 0 (mod 1)")
        return _B3(t, lam)
    if r is None:
        raise DomainError("rank required for Br and Dr")
    if kind == "Br":
        return _Br(r, t, _y(y, r), lam)
    return _Dr(r, t, _y(y, r), lam)


def _y(y, n: int) -> list[Fraction]:
    if y is None:
        return [Fraction(0)] * n
    y = [Fraction(v) for v in y]
    if len(y) != n:
        raise DomainError(f"y needs {n} coordinates")
    return y


def _msum(m: dict, j: int, k: int) -> int:
    return sum(m[i] for i in range(j, k + 1)) if j <= k else 0


def _Br(r: int, t, y, lam) -> complex:
    if len(t) != 2 * r - 1 or len(lam) != r - 1:
        raise DomainError(f"Br needs {2 * r - 1} t-values and {r - 1} weights")
    m = {i: lam[i - 2] for i in range(2, r + 1)}
    t1 = t[0]
    tm = {i: t[i - 1] for i in range(2, r + 1)}
    tp = {i: t[r + i - 2] for i in range(2, r + 1)}
    M = lambda j, k: _msum(m, j, k)  # noqa: E731
    y1 = y[0]
    yy = {i: y[i - 1] for i in range(1, r + 1)}
    total = 0j
    for j in range(2, r + 1):
        v = 1 + 0j
        for i in range(2, j):
            v *= _fac(tm[i], tm[i] - tm[j] + W * M(i, j - 1))
        for i in range(j + 1, r + 1):
            v *= _fac(tm[i], tm[i] - tm[j] - W * M(j, i - 1))
        for i in range(2, j + 1):
            v *= _fac(tp[i], tp[i] - tm[j] - W * (M(i, j - 1) + 2 * M(j, r - 1) + m[r]))
        for i in range(j + 1, r + 1):
            v *= _fac(tp[i], tp[i] - tm[j] - W * (M(j, i - 1) + 2 * M(i, r - 1) + m[r]))
        v *= _fac(t1, t1 - 2 * tm[j] - W * (2 * M(j, r - 1) + m[r]))
        ph = sum(m[i] * (yy[i] - y1) for i in range(2, j)) + sum(m[i] * yy[i] for i in range(j, r + 1))
        total += v * _e(ph) * _bern_gen(tm[j], _frac(y1))
    for j in range(2, r + 1):
        v = 1 + 0j
        for i in range(2, j + 1):
            v *= _fac(tm[i], tm[i] - tp[j] + W * (M(i, j - 1) + 2 * M(j, r - 1) + m[r]))
        for i in range(j + 1, r + 1):
            v *= _fac(tm[i], tm[i] - tp[j] + W * (M(j, i - 1) + 2 * M(i, r - 1) + m[r]))
        for i in range(2, j):
            v *= _fac(tp[i], tp[i] - tp[j] - W * M(i, j - 1))
        for i in range(j + 1, r + 1):
            v *= _fac(tp[i], tp[i] - tp[j] + W * M(j, i - 1))
        v *= _fac(t1, t1 - 2 * tp[j] + W * (2 * M(j, r - 1) + m[r]))
        ph = (
            sum(m[i] * (yy[i] - y1) for i in range(2, j))
            + sum(m[i] * (yy[i] - 2 * y1) for i in range(j, r))
            + m[r] * (yy[r] - y1)
        )
        total += v * _e(ph) * _bern_gen(tp[j], _frac(y1))
    v = 1 + 0j
    for i in range(2, r + 1):
        v *= _fac(tm[i], tm[i] - t1 / 2 + W / 2 * (2 * M(i, r - 1) + m[r]))
    for i in range(2, r + 1):
        v *= _fac(tp[i], tp[i] - t1 / 2 - W / 2 * (2 * M(i, r - 1) + m[r]))
    base = sum(m[i] * (yy[i] - y1) for i in range(2, r))
    half = (
        _e(base + m[r] * (yy[r] - y1 / 2)) * _bern_gen(t1, _frac(y1 / 2))
        + _e(base + m[r] * (yy[r] - (y1 + 1) / 2)) * _bern_gen(t1, _frac((y1 + 1) / 2))
    ) / 2
    return total + v * half


def _Dr(r: int, t, y, lam) -> complex:
    if r < 3 or len(t) != 2 * r - 2 or len(lam) != r - 1:
        raise DomainError(f"Dr needs r >= 3, {2 * r - 2} t-values and {r - 1} weights")
    m = {i: lam[i - 2] for i in range(2, r + 1)}
    tm = {i: t[i - 2] for i in range(2, r + 1)}
    tp = {i: t[r + i - 3] for i in range(2, r + 1)}
    M = lambda j, k: _msum(m, j, k)  # noqa: E731
    y1 = y[0]
    yy = {i: y[i - 1] for i in range(1, r + 1)}
    x1 = _frac(y1)
    total = 0j
    for j in range(2, r):
        v = 1 + 0j
        for i in range(2, j):
            v *= _fac(tm[i], tm[i] - tm[j] + W * M(i, j - 1))
        for i in range(j + 1, r + 1):
            v *= _fac(tm[i], tm[i] - tm[j] - W * M(j, i - 1))
        for i in range(2, j + 1):
            v *= _fac(tp[i], tp[i] - tm[j] - W * (M(i, j - 1) + 2 * M(j, r - 2) + M(r - 1, r)))
        for i in range(j + 1, r):
            v *= _fac(tp[i], tp[i] - tm[j] - W * (M(j, i - 1) + 2 * M(i, r - 2) + M(r - 1, r)))
        v *= _fac(tp[r], tp[r] - tm[j] - W * (M(j, r - 2) + m[r]))
        ph = sum(m[i] * (yy[i] - y1) for i in range(2, j)) + sum(m[i] * yy[i] for i in range(j, r + 1))
        total += v * _e(ph) * _bern_gen(tm[j], x1)
    v = 1 + 0j
    for i in range(2, r):
        v *= _fac(tm[i], tm[i] - tm[r] + W * M(i, r - 1))
    for i in range(2, r):
        v *= _fac(tp[i], tp[i] - tm[r] - W * (M(i, r - 2) + m[r]))
    v *= _fac(tp[r], tp[r] - tm[r] - W * (m[r] - m[r - 1]))
    ph = sum(m[i] * (yy[i] - y1) for i in range(2, r)) + m[r] * yy[r]
    total += v * _e(ph) * _bern_gen(tm[r], x1)
    for j in range(2, r):
        v = 1 + 0j
        for i in range(2, j + 1):
            v *= _fac(tm[i], tm[i] - tp[j] + W * (M(i, j - 1) + 2 * M(j, r - 2) + M(r - 1, r)))
        for i in range(j + 1, r):
            v *= _fac(tm[i], tm[i] - tp[j] + W * (M(j, i - 1) + 2 * M(i, r - 2) + M(r - 1, r)))
        v *= _fac(tm[r], tm[r] - tp[j] + W * (M(j, r - 2) + m[r]))
        for i in range(2, j):
            v *= _fac(tp[i], tp[i] - tp[j] - W * M(i, j - 1))
        for i in range(j + 1, r + 1):
            v *= _fac(tp[i], tp[i] - tp[j] + W * M(j, i - 1))
        ph = (
            sum(m[i] * (yy[i] - y1) for i in range(2, j))
            + sum(m[i] * (yy[i] - 2 * y1) for i in range(j, r - 1))
            + m[r - 1] * (yy[r - 1] - y1)
            + m[r] * (yy[r] - y1)
        )
        total += v * _e(ph) * _bern_gen(tp[j], x1)
    v = 1 + 0j
    for i in range(2, r):
        v *= _fac(tm[i], tm[i] - tp[r] + W * (M(i, r - 2) + m[r]))
    v *= _fac(tm[r], tm[r] - tp[r] - W * (m[r - 1] - m[r]))
    for i in range(2, r):
        v *= _fac(tp[i], tp[i] - tp[r] - W * M(i, r - 1))
    ph = sum(m[i] * (yy[i] - y1) for i in range(2, r - 1)) + m[r - 1] * yy[r - 1] + m[r] * (yy[r] - y1)
    total += v * _e(ph) * _bern_gen(tp[r], x1)
    return total


def _A3(t, y, lam) -> complex:
    if len(t) != 4 or len(lam) != 2:
        raise DomainError("A3 needs 4 t-values and 2 weights")
    t13, t23, t24, t14 = t
    m1, m3 = lam
    y1, y2, y3 = y
    x2 = _frac(y2)
    total = (
        _fac(t23, t23 - t13 + W * m1)
        * _fac(t14, t14 - t13 - W * m3)
        * _fac(t24, t24 - t13 - W * (m3 - m1))
        * _e(m1 * (y1 - y2) + m3 * y3)
        * _bern_gen(t13, x2)
    )
    total += (
        _fac(t13, t13 - t23 - W * m1)
        * _fac(t14, t14 - t23 - W * (m1 + m3))
        * _fac(t24, t24 - t23 - W * m3)
        * _e(m1 * y1 + m3 * y3)
        * _bern_gen(t23, x2)
    )
    total += (
        _fac(t13, t13 - t24 - W * (m1 - m3))
        * _fac(t14, t14 - t24 - W * m1)
        * _fac(t23, t23 - t24 + W * m3)
        * _e(m1 * y1 + m3 * (y3 - y2))
        * _bern_gen(t24, x2)
    )
    total += (
        _fac(t13, t13 - t14 + W * m3)
        * _fac(t23, t23 - t14 + W * (m1 + m3))
        * _fac(t24, t24 - t14 + W * m1)
        * _e(m1 * (y1 - y2) + m3 * (y3 - y2))
        * _bern_gen(t14, x2)
    )
    return total


def _B3(t, lam) -> complex:
    if len(t) != 5 or len(lam) != 2:
        raise DomainError("B3 needs 5 t-values and 2 weights")
    t1, tm2, tm3, tp2, tp3 = t
    m2, m3 = lam
    total = (
        _fac(tm3, tm3 - tm2 - W * m2)
        * _fac(tp2, tp2 - tm2 - W * (2 * m2 + m3))
        * _fac(tp3, tp3 - tm2 - W * (m2 + m3))
        * _fac(t1, t1 - 2 * tm2 - W * (2 * m2 + m3))
        * _bern_gen(tm2, 0.0)
    )
    total += (
        _fac(tm2, tm2 - tm3 + W * m2)
        * _fac(tp2, tp2 - tm3 - W * (m2 + m3))
        * _fac(tp3, tp3 - tm3 - W * m3)
        * _fac(t1, t1 - 2 * tm3 - W * m3)
        * _bern_gen(tm3, 0.0)
    )
    total += (
        _fac(tm2, tm2 - tp2 + W * (2 * m2 + m3))
        * _fac(tm3, tm3 - tp2 + W * (m2 + m3))
        * _fac(tp3, tp3 - tp2 + W * m2)
        * _fac(t1, t1 - 2 * tp2 + W * (2 * m2 + m3))
        * _bern_gen(tp2, 0.0)
    )
    total += (
        _fac(tm2, tm2 - tp3 + W * (m2 + m3))
        * _fac(tm3, tm3 - tp3 + W * m3)
        * _fac(tp2, tp2 - tp3 - W * m2)
        * _fac(t1, t1 - 2 * tp3 + W * m3)
        * _bern_gen(tp3, 0.0)
    )
    total += (
        _fac(tm2, tm2 - t1 / 2 + W / 2 * (2 * m2 + m3))
        * _fac(tm3, tm3 - t1 / 2 + W / 2 * m3)
        * _fac(tp2, tp2 - t1 / 2 - W / 2 * (2 * m2 + m3))
        * _fac(tp3, tp3 - t1 / 2 - W / 2 * m3)
        * (_bern_gen(t1, 0.0) + (-1) ** m3 * _bern_gen(t1, 0.5))
        / 2
    )
    return total
