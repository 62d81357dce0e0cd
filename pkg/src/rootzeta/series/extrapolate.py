"""Richardson-type extrapolation of partial sums ``S(N) ~ S + c N^-p``."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.optimize import brentq


def _three_point(Ns: Sequence[int], S: Sequence[complex], floor: float) -> tuple[complex, float]:
    """Extrapolant from three partial sums; returns ``(E, p)`` (p is nan if unused)."""
    (n0, n1, n2), (s0, s1, s2) = Ns, S
    d1, d2 = s1 - s0, s2 - s1
    if abs(d1) <= floor or abs(d2) <= floor:
        return s2, math.nan
    r1, r2 = n1 / n0, n2 / n1
    if abs(r1 - r2) <= 1e-12 * r2:
        q = d2 / d1
        if abs(q) >= 0.98 or abs(1 - q) < 1e-12:
            return s2, math.nan
        p = -math.log(abs(q)) / math.log(r2)
        return s2 + d2 * q / (1 - q), p
    # non-geometric ladder: solve |d2/d1| = (n1^-p - n2^-p) / (n0^-p - n1^-p) for p
    target = abs(d2) / abs(d1)

    def g(p: float) -> float:
        return (n1**-p - n2**-p) / (n0**-p - n1**-p) - target

    lo, hi = 1e-6, 60.0
    if g(lo) * g(hi) > 0:
        return s2, math.nan
    p = brentq(g, lo, hi)
    c = d2 / (n2**-p - n1**-p)
    return s2 - c * n2**-p, p


def extrapolate(Ns: Sequence[int], S: Sequence[complex], floor: float = 0.0) -> tuple[complex, float, dict]:
    """Extrapolate partial sums over an increasing ladder.

    The error estimate is the gap between the two finest three-point
    extrapolants (or the last raw difference when only three sums exist).
    A single partial sum yields an infinite error estimate.

    Returns:
        ``(value, error, meta)`` where ``meta`` holds fitted exponents.
    """
    Ns = [int(n) for n in Ns]
    S = [complex(v) for v in S]
    meta: dict = {"ladder": tuple(Ns), "partial_sums": tuple(S)}
    if len(S) == 1:
        return S[0], math.inf, meta
    if len(S) == 2:
        return S[1], abs(S[1] - S[0]) + floor, meta
    ext = []
    ps = []
    for i in range(len(S) - 2):
        e, p = _three_point(Ns[i:i + 3], S[i:i + 3], floor)
        ext.append(e)
        ps.append(p)
    meta["extrapolants"] = tuple(ext)
    meta["fitted_p"] = tuple(ps)
    value = ext[-1]
    if len(ext) >= 2:
        err = abs(ext[-1] - ext[-2])
    else:
        err = abs(ext[-1] - S[-1])
    if not np.isfinite(err):
        err = math.inf
    return value, err + floor, meta
