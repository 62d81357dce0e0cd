"""Generating functions with one excluded simple index and their Taylor coefficients.

For ``I^c = {k}`` the generating function is a sum over ``beta`` in Delta* of

    prod_{gamma != beta} t_gamma / (t_gamma - c_gamma t_beta - 2 pi i q_gamma(lambda))
        * (1/b_k) sum_{a < b_k} e(phase_a) t_beta e^{t_beta x_a} / (e^{t_beta} - 1)

with ``c_gamma = <gamma^vee, lambda_k> / b_k`` and ``q_gamma`` the pairing of
the projected coroot with ``lambda``.  Writing ``t = 2 pi i u`` every factor
becomes a rational series in ``u`` and the Bernoulli part carries powers of
``2 pi i`` on separate layers (see :mod:`rootzeta.genfun.tseries`).

When ``q_gamma(lambda) = 0`` the factor is not a power series on its own.  The
singular roots then come in pairs ``{beta, gamma}`` whose two terms combine to
``(u_gamma R_beta - c u_beta R_gamma) / (u_gamma - c u_beta)``, a genuine power
series; the quotient is taken exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Sequence

import mpmath
import numpy as np

from .._bernoulli import bernoulli_poly_exact
from ..errors import DomainError, SingularFactorError
from ..rootsys import (
    RootSystem,
    SubsetSpec,
    WeightVector,
    beta_weights,
    pstar_pairing,
    star_labels,
    star_roots,
)
from .tseries import EXACT, NUMERIC, Shape, TruncatedSeries, _as_dtype, variables_series

TWO_PI_I = 2j * math.pi
DEFAULT_DEGREE = 10


def bernoulli_poly(n: int, x) -> Fraction:
    """``B_n(x)``, defined by ``t e^{tx} / (e^t - 1) = sum_n B_n(x) t^n / n!``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return bernoulli_poly_exact(n, x)


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class GenFunSpec:
    """Data fixing one generating function: root system, ``I``, ``y`` and ``lambda``."""

    rs: RootSystem
    spec: SubsetSpec
    lam: WeightVector
    y: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if self.spec.rank != self.rs.rank:
            raise DomainError("subset rank differs from the root system rank")
        y = tuple(Fraction(v) for v in self.y) if self.y else (Fraction(0),) * self.rs.rank
        if len(y) != self.rs.rank:
            raise DomainError(f"y needs {self.rs.rank} coordinates")
        object.__setattr__(self, "y", y)
        if set(i for i, _ in self.lam.m) != set(self.spec.I):
            raise DomainError(f"lambda must have one positive entry for each index in I={self.spec.sorted_I}")

    @classmethod
    def make(cls, rs: RootSystem, I: Sequence[int], lam: Sequence[int], y: Sequence | None = None) -> "GenFunSpec":
        spec = SubsetSpec.from_I(rs.rank, I)
        return cls(rs, spec, WeightVector.on(spec, lam), tuple(y) if y is not None else ())

    @property
    def variables(self) -> tuple[str, ...]:
        return star_labels(self.rs, self.spec)


@dataclass(frozen=True)
class _BetaData:
    root: int
    bk: int
    c: tuple[Fraction, ...]  # c_gamma for each position, 0 at beta
    q: tuple[Fraction, ...]  # projected pairing with lambda, 0 at beta
    bern: tuple[tuple[Fraction, Fraction], ...]  # (phase fraction, x_a) for a < b_k


def _beta_data(g: GenFunSpec) -> list[_BetaData]:
    rs, spec = g.rs, g.spec
    star = star_roots(rs, spec)
    k = spec.k - 1
    out = []
    for beta in star:
        b = beta_weights(rs, spec, beta)
        bk = b[k]
        c = tuple(Fraction(rs.linear_forms[gm][k], bk) if gm != beta else Fraction(0) for gm in star)
        q = tuple(pstar_pairing(rs, spec, beta, gm, g.lam) if gm != beta else Fraction(0) for gm in star)
        bern = []
        for a in range(bk):
            shift = (g.y[k] + a) / bk
            arg = sum((m * (g.y[i - 1] - b[i - 1] * shift) for i, m in g.lam.m), Fraction(0))
            bern.append((_frac(arg), _frac(shift)))
        out.append(_BetaData(beta, bk, c, q, tuple(bern)))
    return out


def _phase(f: Fraction, exact: bool):
    f = _frac(f)
    if exact:
        if f == 0:
            return Fraction(1)
        if f == Fraction(1, 2):
            return Fraction(-1)
        raise DomainError("exact mode needs phases in {1, -1}; use numeric mode")
    quarter = {Fraction(0): 1, Fraction(1, 4): 1j, Fraction(1, 2): -1, Fraction(3, 4): -1j}
    if f in quarter:
        return complex(quarter[f])
    return cmath.exp(TWO_PI_I * float(f))


def phases_real(g: GenFunSpec) -> bool:
    """True when every phase factor is ``+-1`` (exact mode is then available)."""
    return all(_frac(p) in (0, Fraction(1, 2)) for d in _beta_data(g) for p, _ in d.bern)


def _unit_coeff(p: int, q: int, c, d):
    # [t_gamma^p t_beta^q] of t_gamma / (t_gamma - c t_beta - d), p >= 1
    return -comb(p + q - 1, q) * (-c) ** q / d ** (p + q)


def _unit_on(variables, shape: Shape, gi: int, bi: int, c, d, dtype, scale) -> TruncatedSeries:
    if d == 0:
        raise SingularFactorError(f"unit factor with d = 0 and c = {c}")
    c = _as_dtype(c, dtype)
    d = _as_dtype(d, dtype)
    box = shape.box
    data = {}
    for p in range(1, shape.D + 1):
        if box is not None and p > box[gi]:
            break
        for q in range(0, shape.D - p + 1):
            if box is not None and q > box[bi]:
                break
            K = [0] * shape.n
            K[gi] += p
            K[bi] += q
            data[tuple(K)] = _unit_coeff(p, q, c, d)
    return TruncatedSeries.from_dict(variables, shape, data, dtype, scale)


def expand_unit_factor(c, d, D: int, scale=1.0) -> TruncatedSeries:
    """Degree-``D`` expansion of ``t_gamma / (t_gamma - c t_beta - scale * d)`` in ``(t_gamma, t_beta)``.

    Rational ``c`` and ``d`` give an exact series.

    Raises:
        SingularFactorError: if ``d = 0`` (the factor is then no power series).
    """
    exact = isinstance(c, (int, Fraction)) and isinstance(d, (int, Fraction))
    dtype = EXACT if exact else NUMERIC
    return _unit_on(("t_gamma", "t_beta"), Shape(2, D), 0, 1, c, d, dtype, scale)


def _bernoulli_part(variables, shape: Shape, bi: int, data: _BetaData, dtype, scale) -> TruncatedSeries:
    exact = dtype is EXACT
    top = shape.D if shape.box is None else min(shape.D, shape.box[bi])
    c = np.empty((shape.size, top + 1), dtype=object if exact else np.complex128)
    c.fill(Fraction(0) if exact else 0)
    index = {K: i for i, K in enumerate(TruncatedSeries.zero(variables, shape, dtype, scale).monomials)}
    inv_bk = Fraction(1, data.bk)
    for j in range(top + 1):
        acc = Fraction(0) if exact else 0j
        for ph, x in data.bern:
            acc = acc + _phase(ph, exact) * (bernoulli_poly(j, x) / factorial(j) if exact else float(bernoulli_poly(j, x) / factorial(j)))
        K = [0] * shape.n
        K[bi] = j
        c[index[tuple(K)], j] = acc * (inv_bk if exact else float(inv_bk))
    return TruncatedSeries(tuple(variables), shape, c, scale)


def _term(g_data: list[_BetaData], variables, bi: int, shape: Shape, exclude: int | None, dtype, scale) -> TruncatedSeries:
    acc = _bernoulli_part(variables, shape, bi, g_data[bi], dtype, scale)
    for gi in range(len(g_data)):
        if gi == bi or gi == exclude:
            continue
        acc = acc * _unit_on(variables, shape, gi, bi, g_data[bi].c[gi], g_data[bi].q[gi], dtype, scale)
    return acc


def singular_pairs(g: GenFunSpec) -> list[tuple[int, int]]:
    """Positions ``(beta, gamma)`` in Delta* with ``q_gamma(lambda) = 0`` (``beta < gamma``).

    Raises:
        SingularFactorError: if a root is singular against more than one other root.
    """
    data = _beta_data(g)
    pairs = []
    seen: dict[int, int] = {}
    for bi, d in enumerate(data):
        for gi, q in enumerate(d.q):
            if gi != bi and q == 0 and bi < gi:
                for x in (bi, gi):
                    seen[x] = seen.get(x, 0) + 1
                pairs.append((bi, gi))
    if any(v > 1 for v in seen.values()):
        raise SingularFactorError("a root is singular against several others; not supported")
    return pairs


def F_general(
    g: GenFunSpec,
    D: int = DEFAULT_DEGREE,
    mode: str = "numeric",
    shape: Shape | None = None,
) -> TruncatedSeries:
    """Truncated expansion of the generating function in the Delta* variables.

    ``mode`` is ``"numeric"`` (complex128), ``"exact"`` (rational layers) or
    ``"auto"`` (exact when every phase is real).  ``shape`` overrides the
    total-degree truncation, e.g. with a box for single-coefficient work.
    The number of stored coefficients is ``C(D + n, n)`` for ``n = |Delta*|``.
    """
    if mode == "auto":
        mode = "exact" if phases_real(g) else "numeric"
    if mode not in ("numeric", "exact"):
        raise DomainError(f"unknown mode {mode!r}")
    dtype = EXACT if mode == "exact" else NUMERIC
    data = _beta_data(g)
    variables = g.variables
    n = len(data)
    shape = shape or Shape(n, D)
    scale = TWO_PI_I
    pairs = singular_pairs(g)
    in_pair = {x for p in pairs for x in p}
    total = TruncatedSeries.zero(variables, shape, dtype, scale)
    for bi in range(n):
        if bi not in in_pair:
            total = total + _term(data, variables, bi, shape, None, dtype, scale)
    for bi, gi in pairs:
        c = data[bi].c[gi]
        ext = shape.extended(gi, bi)
        u = variables_series(variables, ext, dtype, scale)
        r_b = _term(data, variables, bi, ext, gi, dtype, scale)
        r_g = _term(data, variables, gi, ext, bi, dtype, scale)
        num = u[gi] * r_b - u[bi] * r_g * _as_dtype(c, dtype)
        total = total + num.divide_linear(gi, bi, c, shape)
    return total


def _kfact(k: Sequence[int]) -> int:
    out = 1
    for x in k:
        out *= factorial(x)
    return out


def _check_k(g: GenFunSpec, k: Sequence[int]) -> tuple[int, ...]:
    k = tuple(int(x) for x in k)
    n = len(star_roots(g.rs, g.spec))
    if len(k) != n or min(k, default=0) < 0:
        raise DomainError(f"k needs {n} non-negative entries")
    return k


def bernoulli_P_layers(g: GenFunSpec, k: Sequence[int]) -> dict[int, Fraction]:
    """Exact ``P(k, y, lambda)`` as ``{e: coefficient}`` meaning ``sum coefficient * (2 pi i)^e``.

    Requires real phases.
    """
    k = _check_k(g, k)
    F = _single_coeff_series(g, k, "exact")
    layers = F.coefficient_layers(k)
    kf = _kfact(k)
    d = sum(k)
    return {l - d: Fraction(v) * kf for l, v in enumerate(layers) if v != 0}


@lru_cache(maxsize=4096)
def _single_coeff_series(g: GenFunSpec, k: tuple[int, ...], mode: str) -> TruncatedSeries:
    shape = Shape(len(k), sum(k), k)
    return F_general(g, shape=shape, mode=mode)


def bernoulli_P(g: GenFunSpec, k: Sequence[int], mode: str = "auto", prec: int = 113) -> complex:
    """``P(k, y, lambda) = (prod k_alpha!) [t^k] F``.

    The coefficient is extracted from a box-truncated series (exact when the
    phases allow it, then rounded through ``mpmath`` at ``prec`` bits).
    """
    k = _check_k(g, k)
    if mode == "auto":
        mode = "exact" if phases_real(g) else "numeric"
    if mode == "exact":
        with mpmath.workprec(prec):
            w = mpmath.mpc(0, 2 * mpmath.pi)
            val = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * w**e for e, c in bernoulli_P_layers(g, k).items())
            return complex(val)
    F = _single_coeff_series(g, k, mode)
    return F.coefficient(k) * _kfact(k)


class PTemplate:
    """``lambda -> P(k, y, lambda)`` as an explicit sum of reciprocal powers of linear forms.

    Valid away from singular ``lambda`` (where some projected pairing
    vanishes); :meth:`evaluate` flags those points.  Built from the same
    expansion coefficients as :func:`F_general`, but summed per term instead of
    through series products, so it is fast on large ``lambda`` grids.
    """

    def __init__(self, rs: RootSystem, spec: SubsetSpec, k: Sequence[int], y: Sequence | None = None):
        self.rs, self.spec = rs, spec
        self.I = spec.sorted_I
        probe = GenFunSpec(rs, spec, WeightVector.on(spec, [1] * len(self.I)), tuple(y) if y else ())
        self.y = probe.y
        self.k = _check_k(probe, k)
        self.n = len(self.k)
        star = star_roots(rs, spec)
        kk = spec.k - 1
        self.forms: list[list[tuple[int, int, np.ndarray]]] = []
        self.terms = []  # (beta, gamma-exponents, rational coefficient, layer j)
        self.bern = []  # per beta: list of (phase numerators over I, phase const, denominator, weight_j list)
        self.pair_forms = []
        for bi, beta in enumerate(star):
            b = beta_weights(rs, spec, beta)
            bk = b[kk]
            cvals, qvecs = [], []
            for gm in star:
                cg = Fraction(rs.linear_forms[gm][kk], bk)
                cvals.append(cg)
                qvecs.append(np.array([float(rs.linear_forms[gm][i - 1] - cg * b[i - 1]) for i in self.I]))
            self.pair_forms.append(qvecs)
            # Bernoulli weights with lambda-dependent phases
            phase_lin = []
            for a in range(bk):
                shift = (self.y[kk] + a) / bk
                coeffs = [self.y[i - 1] - b[i - 1] * shift for i in self.I]
                den = math.lcm(*(x.denominator for x in coeffs)) if coeffs else 1
                nums = np.array([int(x * den) for x in coeffs], dtype=np.int64)
                weights = [bernoulli_poly(j, _frac(shift)) / factorial(j) / bk for j in range(self.k[bi] + 1)]
                phase_lin.append((nums, den, weights))
            self.bern.append(phase_lin)
            others = [gi for gi in range(self.n) if gi != bi]
            if any(self.k[gi] == 0 for gi in others):
                continue
            ranges = [range(self.k[bi] + 1) for _ in others]
            for qs in product(*ranges):
                j = self.k[bi] - sum(qs)
                if j < 0:
                    continue
                coef = Fraction(1)
                exps = [0] * self.n
                for gi, qg in zip(others, qs):
                    p = self.k[gi]
                    coef *= -comb(p + qg - 1, qg) * (-cvals[gi]) ** qg
                    exps[gi] = p + qg
                self.terms.append((bi, tuple(exps), coef, j))

    def evaluate(self, lams: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Values at the rows of ``lams`` (shape ``(N, |I|)``) and a singular-point mask."""
        lams = np.asarray(lams, dtype=np.int64).reshape(-1, len(self.I))
        N = lams.shape[0]
        lf = lams.astype(np.float64)
        kf = _kfact(self.k)
        w = TWO_PI_I
        Q = [[lf @ v for v in self.pair_forms[bi]] for bi in range(self.n)]
        singular = np.zeros(N, dtype=bool)
        for bi in range(self.n):
            for gi in range(self.n):
                if gi != bi:
                    singular |= Q[bi][gi] == 0
        safe = [[np.where(singular, 1.0, q) for q in row] for row in Q]
        bern_vals = []
        for bi in range(self.n):
            per_j = np.zeros((self.k[bi] + 1, N), dtype=np.complex128)
            for nums, den, weights in self.bern[bi]:
                ph = np.exp(TWO_PI_I * ((lams @ nums) % den) / den) if den > 1 else np.ones(N)
                if den == 2:
                    ph = np.where((lams @ nums) % 2 == 0, 1.0, -1.0)
                for j, wt in enumerate(weights):
                    per_j[j] += float(wt) * ph
            bern_vals.append(per_j)
        total = np.zeros(N, dtype=np.complex128)
        for bi, exps, coef, j in self.terms:
            v = float(coef) * w ** (j - sum(self.k)) * bern_vals[bi][j]
            for gi, e in enumerate(exps):
                if e:
                    v = v / safe[bi][gi] ** e
            total += v
        total *= kf
        total[singular] = np.nan
        return total, singular
