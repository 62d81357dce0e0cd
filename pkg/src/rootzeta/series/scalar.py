"""Scalar special functions at working precision.

Everything here runs in :mod:`mpmath` at ``cfg.working_precision`` bits
(plus guard bits):

* Hurwitz zeta ``zeta(s, a)`` by Euler-Maclaurin summation, which also gives
  the continuation needed for ``zeta(0) = -1/2``;
* ``phi(s) = (2^(1-s) - 1) zeta(s)``;
* ``Li_n(z)`` for ``|z| <= 1`` by direct summation with explicit tail bounds;
* signed double zeta values ``sum_{m<n} s1^m s2^n / (m^a n^b)``.  The finite
  part is summed exactly; the tail is expanded asymptotically after
  splitting the outer index by parity, which turns it into a finite
  combination of Hurwitz zeta values.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .._bernoulli import bernoulli_number, bernoulli_poly_exact
from ..errors import AccuracyNotReachedError, DivergenceError, DomainError, PoleError
from .config import PrecisionConfig, SeriesResult

GUARD_BITS = 24

__all__ = [
    "hurwitz_zeta",
    "riemann_zeta",
    "phi",
    "polylog",
    "euler_zagier2",
    "mp_pi",
    "mp_log2",
]


def _cfg(cfg: PrecisionConfig | None) -> PrecisionConfig:
    return cfg if cfg is not None else PrecisionConfig()


def _is_nonpos_int(s) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == int(s.real)


def _mpf_frac(q) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def _rising(s, n: int):
    out = mpmath.mpf(1)
    for i in range(n):
        out *= s + i
    return out


def _hurwitz_em(s, a, p: int, tol):
    """Euler-Maclaurin evaluation of ``zeta(s, a)`` (current mp context).

    Returns ``(value, error_bound)``.
    """
    sig = s.real
    exact = _is_nonpos_int(s)
    if not exact and sig + 2 * p + 1 <= 0:
        raise DomainError(f"Re s = {sig} too negative for {p} correction terms")
    b_next = abs(_mpf_frac(bernoulli_number(2 * p + 2)) / mpmath.factorial(2 * p + 2))
    if exact:
        n_direct = 0
    else:
        c = b_next * abs(_rising(s, 2 * p + 1)) * abs(s + 2 * p + 1) / (sig + 2 * p + 1)
        x_min = (c / tol) ** (1 / (sig + 2 * p + 1))
        n_direct = max(0, int(mpmath.ceil(x_min - a)))
    x = a + n_direct
    total = mpmath.mpf(0)
    abs_total = mpmath.mpf(0)
    for n in range(n_direct):
        term = mpmath.power(a + n, -s)
        total += term
        abs_total += abs(term)
    tail = mpmath.power(x, 1 - s) / (s - 1) + mpmath.power(x, -s) / 2
    poch = s  # rising factorial (s)_{2j-1}
    for j in range(1, p + 1):
        if poch == 0:
            break
        b2j = _mpf_frac(bernoulli_number(2 * j)) / mpmath.factorial(2 * j)
        tail += b2j * poch * mpmath.power(x, -s - 2 * j + 1)
        poch *= (s + 2 * j - 1) * (s + 2 * j)
    if exact:
        bound = mpmath.mpf(0)
    else:
        bound = (
            b_next * abs(_rising(s, 2 * p + 1)) * abs(s + 2 * p + 1) / (sig + 2 * p + 1)
            * mpmath.power(x, -(sig + 2 * p + 1))
        )
    value = total + tail
    rounding = mpmath.eps * (abs_total + abs(tail) + 1) * (n_direct + p + 4)
    return value, bound + rounding


@lru_cache(maxsize=4096)
def _hurwitz_cached(s, a, prec: int, p: int):
    with mpmath.workprec(prec + GUARD_BITS):
        tol = mpmath.ldexp(1, -prec - 4)
        val, err = _hurwitz_em(mpmath.mpc(s), mpmath.mpf(a), p, tol)
        return +val, err


def hurwitz_zeta(s, a, cfg: PrecisionConfig | None = None, terms: int | None = None) -> SeriesResult:
    """Hurwitz zeta ``sum_{n>=0} (n + a)^(-s)`` for real ``a > 0`` and ``s != 1``.

    Values with ``Re s <= 1`` are the Euler-Maclaurin continuation.
    """
    cfg = _cfg(cfg)
    with mpmath.workprec(cfg.working_precision + GUARD_BITS):
        s = mpmath.mpc(s)
        a = mpmath.mpf(a)
    if s == 1:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    if not a > 0:
        raise DomainError("Hurwitz parameter must be positive")
    p = cfg.em_terms if terms is None else terms
    val, err = _hurwitz_cached(s, a, cfg.working_precision, p)
    return _finish(val, err, cfg)


def _finish(val, err, cfg: PrecisionConfig, **kw) -> SeriesResult:
    err = float(err)
    target = cfg.target_for(max(cfg.scalar_eps, 1e-300))
    with mpmath.workprec(cfg.working_precision + GUARD_BITS):
        res = SeriesResult(value=mpmath.mpc(val), abs_error_estimate=err, **kw)
    if cfg.strict and err > max(target, 16 * cfg.scalar_eps * max(1.0, float(abs(val)))):
        raise AccuracyNotReachedError(f"error estimate {err:.3g} above target {target:.3g}", best=res)
    return res


def riemann_zeta(s, cfg: PrecisionConfig | None = None) -> SeriesResult:
    """Riemann zeta function via Euler-Maclaurin summation.

    Raises:
        PoleError: at ``s = 1``.
    """
    return hurwitz_zeta(s, 1, cfg)


def phi(s, cfg: PrecisionConfig | None = None) -> SeriesResult:
    """Alternating zeta ``sum_{m>=1} (-1)^m m^(-s) = (2^(1-s) - 1) zeta(s)``.

    ``s = 1`` is rejected (use ``polylog(1, -1)`` for ``-log 2``).
    """
    cfg = _cfg(cfg)
    z = riemann_zeta(s, cfg)
    with mpmath.workprec(cfg.working_precision + GUARD_BITS):
        factor = mpmath.power(2, 1 - mpmath.mpc(s)) - 1
        return SeriesResult(
            value=factor * z.value,
            abs_error_estimate=float(abs(factor)) * z.abs_error_estimate,
            cutoff_used=z.cutoff_used,
        )


def mp_pi(cfg: PrecisionConfig | None = None):
    cfg = _cfg(cfg)
    with mpmath.workprec(cfg.working_precision + GUARD_BITS):
        return +mpmath.pi


def mp_log2(cfg: PrecisionConfig | None = None):
    cfg = _cfg(cfg)
    with mpmath.workprec(cfg.working_precision + GUARD_BITS):
        return +mpmath.ln2


def polylog(n: int, z, cfg: PrecisionConfig | None = None) -> SeriesResult:
    """``Li_n(z) = sum_{m>=1} z^m / m^n`` for ``n >= 1`` and ``|z| <= 1``.

    On the unit circle only ``n = 1`` and roots of unity of order <= 64 are
    supported (closed forms).  Points within 2^-44 of such a root are taken
    to be the root itself.

    Raises:
        DivergenceError: for ``n = 1, z = 1``.
        DomainError: for ``|z| > 1`` or other points of the unit circle.
        AccuracyNotReachedError: when a boundary point needs more than
            ``cfg.max_cutoff`` terms.
    """
    cfg = _cfg(cfg)
    if int(n) != n or n < 1:
        raise DomainError("polylog order must be a positive integer")
    n = int(n)
    with mpmath.workprec(cfg.working_precision + GUARD_BITS):
        z = mpmath.mpc(z)
        r = abs(z)
        # inputs given in double precision land on the circle only to ~1e-16
        on_circle = abs(r - 1) <= mpmath.ldexp(1, -48)
        if r > 1 and not on_circle:
            raise DomainError("polylog needs |z| <= 1")
        if z == 1:
            if n == 1:
                raise DivergenceError("Li_1(1) diverges")
            return riemann_zeta(n, cfg)
        if z == -1 and n >= 2:
            return phi(n, cfg)
        if n == 1:
            val = -mpmath.log(1 - z)
            return _finish(val, mpmath.eps * (abs(val) + 1), cfg)
        if on_circle:
            root = _root_of_unity(z)
            if root is None:
                raise DomainError("on |z| = 1, Li_n (n >= 2) is supported only at roots of unity of order <= 64")
            else:
                q, z = root
                # Li_n(w) = q^-n sum_j w^j zeta(n, j/q) for w^q = 1
                total = mpmath.mpc(0)
                err = mpmath.mpf(0)
                for j in range(1, q + 1):
                    h = hurwitz_zeta(n, mpmath.mpf(j) / q, cfg)
                    total += z**j * h.value
                    err += h.abs_error_estimate
                return _finish(total / mpmath.mpf(q) ** n, err / q**n + mpmath.eps * abs(total), cfg)
        tol = mpmath.ldexp(1, -cfg.working_precision - 4)
        total = mpmath.mpc(0)
        zm = mpmath.mpc(1)
        m = 0
        bound = mpmath.inf
        while m < cfg.max_cutoff:
            m += 1
            zm *= z
            total += zm / mpmath.power(m, n)
            if r < 1:
                bound = r ** (m + 1) / mpmath.power(m + 1, n) / (1 - r)
            elif m % 64 == 0:
                # Dirichlet test: partial sums of z^j are bounded by 2/|1-z|
                bound = 2 / abs(1 - z) / mpmath.power(m + 1, n)
            if bound <= tol:
                break
        err = bound + mpmath.eps * m
        return _finish(total, err, cfg, cutoff_used=m, terms_summed=m)


def _root_of_unity(z, max_order: int = 64):
    """``(q, w)`` with ``w`` the exact root of unity of order ``q`` nearest ``z``, or None.

    The match tolerance is 2^-44, so double-precision inputs such as
    ``exp(2j*pi/3)`` are recognised.
    """
    theta = mpmath.arg(z) / (2 * mpmath.pi)
    for q in range(1, max_order + 1):
        p = mpmath.nint(theta * q)
        if abs(theta * q - p) <= mpmath.ldexp(1, -44):
            return q, mpmath.expjpi(2 * p / mpmath.mpf(q))
    return None


# --- signed double zeta -------------------------------------------------------

class _Asym:
    """Asymptotic series ``sum_k c[k] u^-(base + k)`` in a large variable ``u``."""

    __slots__ = ("base", "c")

    def __init__(self, base, c):
        self.base = base
        self.c = list(c)

    def __add__(self, other: "_Asym") -> "_Asym":
        shift = other.base - self.base
        if shift.imag != 0 or shift.real != int(shift.real):
            raise ValueError("incompatible asymptotic bases")
        shift = int(shift.real)
        if shift < 0:
            return other + self
        K = len(self.c)
        c = list(self.c)
        for k, v in enumerate(other.c):
            if k + shift < K:
                c[k + shift] += v
        return _Asym(self.base, c)

    def __mul__(self, other):
        if not isinstance(other, _Asym):
            return _Asym(self.base, [other * v for v in self.c])
        K = min(len(self.c), len(other.c))
        c = [mpmath.mpf(0)] * K
        for i in range(K):
            if self.c[i] == 0:
                continue
            for j in range(K - i):
                c[i + j] += self.c[i] * other.c[j]
        return _Asym(self.base + other.base, c)

    __rmul__ = __mul__


def _shifted_tail_asym(s, sigma: int, K: int) -> _Asym:
    """``zeta(s, u + 1) + sigma zeta(s, u + 1/2)`` expanded in ``1/u``.

    Uses ``zeta(s, u + beta) ~ sum_j (-1)^j B_j(beta)/j! (s)_{j-1} u^(1-s-j)``
    with ``(s)_{-1} = 1/(s-1)``; for ``sigma = -1`` the ``j = 0`` terms cancel,
    which keeps ``s = 1`` usable.
    """
    c = []
    for j in range(K):
        weight = bernoulli_poly_exact(j, 1) + sigma * bernoulli_poly_exact(j, Fraction(1, 2))
        if weight == 0:
            c.append(mpmath.mpf(0))
            continue
        poch = 1 / (s - 1) if j == 0 else _rising(s, j - 1)
        c.append((-1) ** j * _mpf_frac(weight) / mpmath.factorial(j) * poch)
    return _Asym(s - 1, c)


def _power_asym(s, delta, K: int) -> _Asym:
    """``(2u - delta)^(-s)`` expanded in ``1/u``."""
    lead = mpmath.power(2, -s)
    c = []
    coef = mpmath.mpf(1)
    for k in range(K):
        c.append(lead * coef)
        coef *= (s + k) / (k + 1) * mpmath.mpf(delta) / 2
    return _Asym(s, c)


def ez2_domain_ok(s1, s2, sigma2: int) -> bool:
    """Convergence region used by :func:`euler_zagier2`."""
    s1 = complex(s1)
    s2 = complex(s2)
    if sigma2 == 1:
        return s2.real > 1 and (s1 + s2).real > 2
    return s2.real > 0 and (s1 + s2).real > 1


@lru_cache(maxsize=2048)
def _ez2_cached(s1, s2, sigma1: int, sigma2: int, prec: int):
    with mpmath.workprec(prec + GUARD_BITS):
        tol = mpmath.ldexp(1, -prec - 4)
        U = 64
        K = 72
        if sigma2 == 1:
            t0, t0_err = _hurwitz_cached(s2, mpmath.mpf(1), prec, 8)
        elif s2 == 1:
            t0, t0_err = -mpmath.ln2, mpmath.eps
        else:
            h, h_err = _hurwitz_cached(s2, mpmath.mpf(1), prec, 8)
            fac = mpmath.power(2, 1 - s2) - 1
            t0, t0_err = fac * h, abs(fac) * h_err
        # each T(m) inherits the error of t0
        err = t0_err * sum(mpmath.power(m, -s1.real) for m in range(1, 2 * U + 1))
        # finite part m = 1 .. 2U with T(m) = sum_{n>m} sigma2^n n^-s2
        T = t0
        finite = mpmath.mpc(0)
        for m in range(1, 2 * U + 1):
            T -= sigma2**m * mpmath.power(m, -s2)
            finite += sigma1**m * mpmath.power(m, -s1) * T
        # T(2u) = 2^-s2 [zeta(s2, u+1) + sigma2 zeta(s2, u+1/2)], expanded in u
        T_even = _shifted_tail_asym(s2, sigma2, K) * mpmath.power(2, -s2)
        T_odd = T_even + _power_asym(s2, 0, K)
        summand = _power_asym(s1, 0, K) * T_even + _power_asym(s1, 1, K) * T_odd * sigma1
        tail = mpmath.mpc(0)
        last = mpmath.inf
        used = 0
        for k, ck in enumerate(summand.c):
            if ck == 0:
                continue
            e = summand.base + k
            if e.real <= 1:
                raise DomainError("signed double zeta outside its convergence region")
            h, h_err = _hurwitz_cached(e, mpmath.mpf(U + 1), prec, 20)
            term = ck * h
            err += abs(ck) * h_err
            tail += term
            last = abs(term)
            used = k
            if last < tol * (abs(finite) + 1) and k > 4:
                break
        value = finite + tail
        err += max(last, tol * (abs(finite) + 1)) + mpmath.eps * (abs(value) + abs(t0)) * 4 * U
        return +value, err, 2 * U, used


def euler_zagier2(s1, s2, sigma1: int = 1, sigma2: int = 1, cfg: PrecisionConfig | None = None) -> SeriesResult:
    """Signed double zeta ``sum_{1<=m<n} sigma1^m sigma2^n / (m^s1 n^s2)``.

    Region: ``Re s2 > 1`` and ``Re(s1+s2) > 2`` when ``sigma2 = 1``;
    ``Re s2 > 0`` and ``Re(s1+s2) > 1`` when ``sigma2 = -1``.

    Raises:
        DomainError: outside the region or for signs other than +-1.
    """
    cfg = _cfg(cfg)
    if sigma1 not in (1, -1) or sigma2 not in (1, -1):
        raise DomainError("signs must be +1 or -1")
    if not ez2_domain_ok(s1, s2, sigma2):
        raise DomainError(f"({s1}, {s2}; {sigma1}, {sigma2}) outside the convergence region")
    with mpmath.workprec(cfg.working_precision + GUARD_BITS):
        a = mpmath.mpc(s1)
        b = mpmath.mpc(s2)
    val, err, cutoff, used = _ez2_cached(a, b, int(sigma1), int(sigma2), cfg.working_precision)
    return _finish(val, err, cfg, cutoff_used=cutoff, terms_summed=cutoff + used)
