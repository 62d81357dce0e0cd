"""Lattice sums ``sum_m prod_i eps_i^m_i prod_alpha L_alpha(m)^-s_alpha``.

Strategy
--------
When some variable ``v`` enters only factors with non-negative integer
exponents (or a single factor with real exponent), the sum over ``m_v`` is
done in closed form: partial fractions in ``m_v`` reduce it to Hurwitz zeta
values and digamma differences, evaluated vectorially with SciPy.  The
remaining variables are summed over the cube ``[1, N]^(r-1)`` for every
``N`` of a geometric ladder and the partial sums are extrapolated.  Without
such a variable the whole cube ``[1, N]^r`` is summed directly.

The cube is processed in fixed chunks along its first axis; each chunk
returns one partial sum per ladder level (numpy pairwise summation) and the
chunk results are reduced in chunk order with :func:`math.fsum`.  The result
is therefore independent of ``cfg.workers``.

All lattice arithmetic is float64 / complex128.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np
from scipy import special

from ..errors import AccuracyNotReachedError, DomainError
from ..rootsys import RootSystem
from .config import PrecisionConfig, SeriesResult
from .extrapolate import extrapolate
from .scalar import phi, riemann_zeta

__all__ = ["lattice_sum", "multizeta_eval", "converges", "default_ladder"]

CHUNK_POINTS = 1 << 18


@dataclass(frozen=True)
class _Factor:
    coeffs: tuple[int, ...]
    exponent: complex

    @property
    def integral(self) -> bool:
        e = self.exponent
        return e.imag == 0 and e.real == int(e.real) and e.real >= 0


def converges(forms: Sequence[Sequence[int]], exps: Sequence[complex]) -> bool:
    """Power-counting test for absolute convergence over ``N^r``.

    Sufficient condition: every ``Re s >= 0`` and, for every nonempty set
    ``J`` of variables, the real parts of the exponents of the forms
    involving ``J`` add up to more than ``|J|``.
    """
    r = len(forms[0])
    if any(complex(e).real < 0 for e in exps):
        return False
    for size in range(1, r + 1):
        for J in itertools.combinations(range(r), size):
            tot = sum(complex(e).real for f, e in zip(forms, exps) if any(f[j] for j in J))
            if not tot > size:
                return False
    return True


def default_ladder(dim: int, closed: bool) -> tuple[int, ...]:
    """Default cutoffs for a cube of dimension ``dim``."""
    if dim == 0:
        return (1,)
    if dim == 1:
        return (6250, 12500, 25000, 50000, 100000, 200000, 400000, 800000) if closed else (500, 1000, 2000, 4000)
    if dim == 2:
        return (125, 250, 500, 1000, 2000) if closed else (500, 1000, 2000, 4000)
    if dim == 3:
        return (25, 50, 100, 200)
    return (8, 16, 32, 64)


def _poles_definite(fa: _Factor, fb: _Factor, v: int) -> str:
    """Compare the poles ``-d_a/c_a`` and ``-d_b/c_b`` of two inner factors."""
    a, b = fa.coeffs[v], fb.coeffs[v]
    diff = [b * x - a * y for i, (x, y) in enumerate(zip(fa.coeffs, fb.coeffs)) if i != v]
    if all(d == 0 for d in diff):
        return "same"
    if all(d >= 0 for d in diff) or all(d <= 0 for d in diff):
        return "distinct"
    return "mixed"


def _closed_candidate(factors: list[_Factor], v: int) -> bool:
    inner = [f for f in factors if f.coeffs[v] != 0]
    if not inner:
        return False
    if all(f.integral for f in inner):
        return all(_poles_definite(a, b, v) != "mixed" for a, b in itertools.combinations(inner, 2))
    return len(inner) == 1 and inner[0].exponent.imag == 0 and inner[0].exponent.real > 1


def _choose_inner(factors: list[_Factor], r: int) -> int | None:
    best = None
    for v in range(r):
        if _closed_candidate(factors, v):
            n = sum(1 for f in factors if f.coeffs[v] != 0)
            if best is None or n < best[0]:
                best = (n, v)
    return None if best is None else best[1]


def _hurwitz_signed(j: float, x: np.ndarray, sign: int) -> np.ndarray:
    """``sum_{m>=1} sign^m (m + x)^-j`` for ``j > 1`` (``j = 1`` only when signed)."""
    if sign == 1:
        return special.zeta(j, 1.0 + x)
    if j == 1:
        return 0.5 * (special.psi(0.5 * (1.0 + x)) - special.psi(1.0 + 0.5 * x))
    return 2.0**-j * (special.zeta(j, 1.0 + 0.5 * x) - special.zeta(j, 0.5 * (1.0 + x)))


def _inner_sum(xs: list[np.ndarray], es: list, sign: int) -> np.ndarray:
    """``sum_{m>=1} sign^m prod_p (m + x_p)^-e_p`` by partial fractions."""
    if len(xs) == 1:
        return _hurwitz_signed(float(np.real(es[0])), xs[0], sign)
    total = np.zeros_like(xs[0])
    digamma = np.zeros_like(xs[0])
    for p, (xp, ep) in enumerate(zip(xs, es)):
        # Taylor coefficients at h = 0 (h = m + x_p) of prod_{q != p} (h + x_q - x_p)^-e_q
        g = np.zeros((ep,) + xp.shape)
        g[0] = 1.0
        for q, (xq, eq) in enumerate(zip(xs, es)):
            if q == p:
                continue
            inv = 1.0 / (xq - xp)
            ser = np.empty_like(g)
            base = inv**eq
            for l in range(ep):
                ser[l] = (-1) ** l * math.comb(eq + l - 1, l) * base
                base = base * inv
            new = np.zeros_like(g)
            for i in range(ep):
                for l in range(ep - i):
                    new[i + l] += g[i] * ser[l]
            g = new
        for l in range(ep):
            j = ep - l
            if j == 1 and sign == 1:
                digamma -= g[l] * special.psi(1.0 + xp)
            else:
                total += g[l] * _hurwitz_signed(float(j), xp, sign)
    return total + digamma


class _Kernel:
    """Evaluates the summand on chunks of the outer cube."""

    def __init__(self, factors: list[_Factor], signs: tuple[int, ...], r: int, inner: int | None):
        self.r = r
        self.inner = inner
        self.outer_vars = [i for i in range(r) if i != inner]
        self.outer_signs = [signs[i] for i in self.outer_vars]
        self.inner_sign = signs[inner] if inner is not None else 1
        self.outer_factors = []
        self.poles: list[tuple[tuple[float, ...], int, float]] = []
        complex_out = False
        for f in factors:
            if inner is not None and f.coeffs[inner] != 0:
                continue
            co = tuple(f.coeffs[i] for i in self.outer_vars)
            e = f.exponent
            if e.imag != 0:
                complex_out = True
            self.outer_factors.append((co, e.real if e.imag == 0 else e))
        self.scale = 1.0
        if inner is not None:
            groups: list[list] = []
            for f in factors:
                c = f.coeffs[inner]
                if c == 0:
                    continue
                e = int(f.exponent.real) if f.integral else f.exponent.real
                if e == 0:
                    continue
                off = tuple(f.coeffs[i] / c for i in self.outer_vars)
                self.scale *= float(c) ** -e
                for gr in groups:
                    if gr[0] == off:
                        gr[1] += e
                        break
                else:
                    groups.append([off, e])
            self.poles = [(tuple(off), e) for off, e in groups]
        self.dtype = np.complex128 if complex_out else np.float64

    def chunk(self, start: int, stop: int, N: int) -> np.ndarray:
        d = len(self.outer_vars)
        if d == 0:
            coords = []
            shape = (1,)
        else:
            axes = [np.arange(start, stop, dtype=np.float64)] + [np.arange(1, N + 1, dtype=np.float64)] * (d - 1)
            coords = np.meshgrid(*axes, indexing="ij", sparse=True)
            shape = tuple(len(a) for a in axes)
        log_sum = np.zeros(shape, dtype=self.dtype)
        for co, e in self.outer_factors:
            L = sum(c * m for c, m in zip(co, coords) if c) + np.zeros(shape)
            log_sum = log_sum + e * np.log(L)
        term = np.exp(-log_sum)
        for sgn, m in zip(self.outer_signs, coords):
            if sgn == -1:
                term = term * (1.0 - 2.0 * (m % 2))
        if self.inner is not None:
            xs = [sum(o * m for o, m in zip(off, coords) if o) + np.zeros(shape) for off, _ in self.poles]
            es = [e for _, e in self.poles]
            if xs:
                term = term * (self.scale * _inner_sum(xs, es, self.inner_sign))
        return term


def _level_sums(kernel: _Kernel, start: int, stop: int, ladder: tuple[int, ...]) -> list[complex]:
    block = kernel.chunk(start, stop, ladder[-1])
    out = []
    for N in ladder:
        rows = min(stop, N + 1) - start
        if rows <= 0 or block.ndim == 0:
            out.append(0.0)
            continue
        sl = (slice(0, rows),) + (slice(0, N),) * (block.ndim - 1)
        out.append(complex(block[sl].sum()))
    return out


def _chunks(dim: int, N: int) -> list[tuple[int, int]]:
    if dim == 0:
        return [(1, 2)]
    per_row = N ** (dim - 1)
    rows = max(1, CHUNK_POINTS // per_row)
    return [(a, min(a + rows, N + 1)) for a in range(1, N + 1, rows)]


def _fsum_c(vals: Sequence[complex]) -> complex:
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def lattice_sum(
    forms: Sequence[Sequence[int]],
    exps: Sequence[complex],
    signs: Sequence[int] | None = None,
    cfg: PrecisionConfig | None = None,
) -> SeriesResult:
    """Sum ``prod_i eps_i^m_i prod_f L_f(m)^-s_f`` over ``m`` in ``N^r``.

    ``forms`` are integer coefficient vectors with non-negative entries.

    Raises:
        DomainError: if the power-counting convergence test fails.
        AccuracyNotReachedError: if the extrapolated error exceeds the target.
    """
    cfg = cfg if cfg is not None else PrecisionConfig()
    forms = tuple(tuple(int(c) for c in f) for f in forms)
    exps = tuple(complex(e) for e in exps)
    if len(forms) != len(exps) or not forms:
        raise DomainError("need one exponent per linear form")
    r = len(forms[0])
    signs = tuple(int(x) for x in (signs if signs is not None else (1,) * r))
    if len(signs) != r or any(x not in (1, -1) for x in signs):
        raise DomainError("signs must be a vector of +-1 of length r")
    if any(c < 0 for f in forms for c in f) or any(not any(f) for f in forms):
        raise DomainError("linear forms must be nonzero with non-negative coefficients")
    return _lattice_cached(forms, exps, signs, cfg)


def _fmt_exp(e) -> str:
    z = complex(e)
    if z.imag:
        return str(z)
    return f"{z.real:g}"


@lru_cache(maxsize=512)
def _lattice_cached(forms, exps, signs, cfg: PrecisionConfig) -> SeriesResult:
    r = len(forms[0])
    factors = [_Factor(f, e) for f, e in zip(forms, exps) if e != 0]
    if not factors or not converges([f.coeffs for f in factors], [f.exponent for f in factors]):
        shown = ", ".join(_fmt_exp(e) for e in exps)
        raise DomainError(f"exponents ({shown}) outside the region of absolute convergence")

    if r == 1:
        return _rank_one(factors, signs[0], cfg)

    inner = _choose_inner(factors, r)
    dim = r - 1 if inner is not None else r
    kernel = _Kernel(factors, signs, r, inner)
    target = cfg.target_for(1e-10 if r <= 2 else 1e-4)
    if dim == 0:
        ladders = [(1,)]
    elif cfg.ladder is not None:
        ladders = [cfg.ladder]
    else:
        full = tuple(n for n in default_ladder(dim, inner is not None) if n <= cfg.max_cutoff) or (cfg.max_cutoff,)
        # try the cheaper prefixes first; the finest level dominates the cost
        ladders = [full[:k] for k in range(min(4, len(full)), len(full) + 1)]
    for ladder in ladders:
        res = _run_ladder(kernel, dim, ladder, inner, cfg.workers)
        if res.abs_error_estimate <= target:
            break
    if cfg.strict and dim > 0 and len(ladders[-1]) >= 3 and not res.abs_error_estimate <= target:
        raise AccuracyNotReachedError(
            f"extrapolation error {res.abs_error_estimate:.3g} above target {target:.3g}", best=res
        )
    return res


def _run_ladder(kernel: _Kernel, dim: int, ladder: tuple[int, ...], inner: int | None, workers: int = 1) -> SeriesResult:
    chunks = _chunks(dim, ladder[-1])
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda c: _level_sums(kernel, c[0], c[1], ladder), chunks))
    else:
        parts = [_level_sums(kernel, a, b, ladder) for a, b in chunks]
    S = [_fsum_c([p[i] for p in parts]) for i in range(len(ladder))]
    n_terms = ladder[-1] ** dim
    floor = 8 * np.finfo(float).eps * max(abs(S[-1]), 1e-300) * math.sqrt(max(n_terms, 1))
    meta = {"inner_variable": inner, "dimension": dim, "ladder": tuple(ladder)}
    if dim == 0:
        return SeriesResult(value=mpmath.mpc(S[0]), abs_error_estimate=floor, cutoff_used=1, terms_summed=1, meta=meta)
    value, err, emeta = extrapolate(ladder, S, floor)
    meta.update(emeta)
    return SeriesResult(
        value=mpmath.mpc(value),
        abs_error_estimate=float(err),
        cutoff_used=ladder[-1],
        accelerated=len(ladder) >= 3,
        terms_summed=int(n_terms),
        meta=meta,
    )


def _rank_one(factors: list[_Factor], sign: int, cfg: PrecisionConfig) -> SeriesResult:
    e = 0j
    # several factors c_i m merge into one power of m
    total_scale = mpmath.mpf(1)
    for f in factors:
        total_scale *= mpmath.power(f.coeffs[0], -f.exponent)
        e += f.exponent
    base = riemann_zeta(e, cfg) if sign == 1 else phi(e, cfg)
    return SeriesResult(
        value=total_scale * base.value,
        abs_error_estimate=float(abs(total_scale)) * base.abs_error_estimate,
        cutoff_used=base.cutoff_used,
        terms_summed=base.terms_summed,
    )


def multizeta_eval(
    rs: RootSystem,
    s: Sequence[complex],
    signs: Sequence[int] | None = None,
    cfg: PrecisionConfig | None = None,
) -> SeriesResult:
    """Zeta-function of a root system, ``sum_m prod_alpha L_alpha(m)^-s_alpha``.

    ``s`` lists one exponent per positive root in canonical order; ``signs``
    optionally attaches ``eps_i^m_i`` to each variable.
    """
    if len(s) != rs.n_roots:
        raise DomainError(f"{rs.name} needs {rs.n_roots} exponents, got {len(s)}")
    return lattice_sum(rs.linear_forms, s, signs, cfg)
