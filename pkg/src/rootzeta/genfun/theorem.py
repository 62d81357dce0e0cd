"""Right-hand side of the functional relation: a lambda-sum of Bernoulli functions."""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from ..errors import AccuracyNotReachedError, AssumptionError, DomainError
from ..rootsys import RootSystem, SubsetSpec, WeightVector, star_roots, sub_roots
from ..series import PrecisionConfig, SeriesResult
from ..series.extrapolate import extrapolate
from .engine import GenFunSpec, PTemplate, bernoulli_P

LADDERS = {1: (1000, 2000, 4000, 8000, 16000), 2: (125, 250, 500, 1000, 2000), 3: (25, 50, 100, 200)}
ROW_BLOCK = 128
# mpmath keeps its precision in one process-wide context, so workprec blocks
# must not interleave across worker threads
_MP_LOCK = threading.Lock()


def check_condition_sharp(rs: RootSystem, k: Sequence[int]) -> None:
    """Raise unless every ``k_alpha >= 1``, and ``>= 2`` on components of type A_1."""
    if min(k, default=1) < 1:
        raise AssumptionError("every k_alpha must be a positive integer")
    if rs.kind == "A" and rs.rank == 1 and min(k) < 2:
        raise AssumptionError("a component of type A_1 needs k_alpha >= 2")


def theorem_rhs(
    rs: RootSystem,
    spec: SubsetSpec,
    k: Sequence[int],
    s_I: Sequence[complex],
    y: Sequence | None = None,
    cfg: PrecisionConfig | None = None,
) -> SeriesResult:
    """``(-1)^n prod (2 pi i)^k / k! * sum_lambda prod <alpha^vee, lambda>^-s_alpha P(k, y, lambda)``.

    ``s_I`` follows the canonical order of the roots of Delta_{I+}.  The sum
    runs over ``lambda`` in a cube ``[1, N]^|I|`` for each ``N`` of the ladder
    and is extrapolated like :func:`rootzeta.series.lattice.lattice_sum`.
    Singular ``lambda`` (a vanishing projected pairing) go through the series
    engine; all others through :class:`PTemplate`.
    """
    cfg = cfg if cfg is not None else PrecisionConfig()
    k = tuple(int(x) for x in k)
    star = star_roots(rs, spec)
    if len(k) != len(star):
        raise DomainError(f"k needs {len(star)} entries")
    check_condition_sharp(rs, k)
    sub = sub_roots(rs, spec)
    if len(s_I) != len(sub):
        raise DomainError(f"s_I needs {len(sub)} entries")
    s_I = [complex(s) for s in s_I]
    I = spec.sorted_I
    dim = len(I)
    forms = np.array([[rs.linear_forms[a][i - 1] for i in I] for a in sub], dtype=np.float64).reshape(len(sub), dim)

    n = len(star)
    pref = complex((-1) ** n * (2j * math.pi) ** sum(k) / math.prod(math.factorial(x) for x in k))
    yv = tuple(Fraction(v) for v in y) if y is not None else ()

    if dim == 0:
        g = GenFunSpec(rs, spec, WeightVector(()), yv)
        val = pref * bernoulli_P(g, k)
        return SeriesResult(value=mpmath.mpc(val), abs_error_estimate=1e-15 * abs(val), cutoff_used=1, terms_summed=1)

    template = PTemplate(rs, spec, k, yv)
    if cfg.ladder is not None:
        ladders = [tuple(cfg.ladder)]
    else:
        full = tuple(x for x in LADDERS.get(dim, (8, 16, 32, 64)) if x <= cfg.max_cutoff) or (cfg.max_cutoff,)
        ladders = [full[:j] for j in range(min(4, len(full)), len(full) + 1)]
    target = cfg.target_for(1e-10 if dim <= 1 else 1e-8)

    def singular_value(lam: tuple[int, ...]) -> complex:
        g = GenFunSpec(rs, spec, WeightVector.on(spec, lam), yv)
        with _MP_LOCK:
            return bernoulli_P(g, k)

    for ladder in ladders:
        res = _run(template, forms, s_I, ladder, singular_value, cfg.workers)
        if res[1] <= target:
            break
    value, err, meta = res
    out = SeriesResult(
        value=mpmath.mpc(pref * value),
        abs_error_estimate=float(abs(pref) * err),
        cutoff_used=ladder[-1],
        accelerated=len(ladder) >= 3,
        terms_summed=int(ladder[-1] ** dim),
        meta=meta,
    )
    if cfg.strict and len(ladder) >= 3 and not out.abs_error_estimate <= abs(pref) * target:
        raise AccuracyNotReachedError(
            f"lambda-sum error {out.abs_error_estimate:.3g} above target", best=out
        )
    return out


def _run(template: PTemplate, forms: np.ndarray, s_I, ladder, singular_value, workers: int):
    dim = forms.shape[1]
    N = ladder[-1]
    blocks = [(a, min(a + ROW_BLOCK, N + 1)) for a in range(1, N + 1, ROW_BLOCK)]

    def block(ab):
        return _block_sums(template, forms, s_I, ladder, ab[0], ab[1], singular_value)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(block, blocks))
    else:
        parts = [block(b) for b in blocks]
    S = [complex(math.fsum(p[i].real for p in parts), math.fsum(p[i].imag for p in parts)) for i in range(len(ladder))]
    floor = 8 * np.finfo(float).eps * max(abs(S[-1]), 1e-300) * math.sqrt(N**dim)
    value, err, meta = extrapolate(ladder, S, floor)
    meta["dimension"] = dim
    return value, err, meta


def _block_sums(template, forms, s_I, ladder, a: int, b: int, singular_value) -> list[complex]:
    dim = forms.shape[1]
    N = ladder[-1]
    first = np.arange(a, b, dtype=np.int64)
    rest = [np.arange(1, N + 1, dtype=np.int64)] * (dim - 1)
    grids = np.meshgrid(first, *rest, indexing="ij")
    lams = np.stack([g.ravel() for g in grids], axis=1)
    P, singular = template.evaluate(lams)
    for idx in np.nonzero(singular)[0]:
        P[idx] = singular_value(tuple(int(v) for v in lams[idx]))
    logs = np.log(lams.astype(np.float64) @ forms.T)
    weight = np.exp(-(logs @ np.array(s_I, dtype=np.complex128)))
    vals = weight * P
    top = lams.max(axis=1)
    out = []
    for L in ladder:
        mask = top <= L
        out.append(complex(np.sum(vals[mask])) if mask.any() else 0j)
    return out
