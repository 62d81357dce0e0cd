"""Precision configuration and result containers for the series module."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Any

import mpmath

from ..errors import DomainError

PREC_ENV = "ROOTZETA_PREC_BITS"


def default_precision() -> int:
    """Working precision in bits: ``$ROOTZETA_PREC_BITS`` or 128."""
    raw = os.environ.get(PREC_ENV)
    if raw is None:
        return 128
    try:
        bits = int(raw)
    except ValueError:
        raise DomainError(f"{PREC_ENV}={raw!r} is not an integer") from None
    if bits < 64:
        raise DomainError(f"{PREC_ENV} must be >= 64")
    return bits


@dataclass(frozen=True)
class PrecisionConfig:
    """Numerical knobs shared by all evaluators.

    Attributes:
        working_precision: mpmath precision in bits for scalar functions.
        target_abs_error: accepted absolute error; ``None`` selects a default
            per operation (1e-10 for double sums, 1e-4 for triple sums, and
            the working precision for scalar functions).
        max_cutoff: largest cutoff any ladder may use.
        ladder: increasing cutoffs for lattice sums; ``None`` picks a default
            by dimension.
        em_terms: Euler-Maclaurin correction terms for zeta evaluations.
        workers: threads used for lattice summation; results do not depend
            on it.
        strict: raise :class:`AccuracyNotReachedError` when the target is
            missed with a ladder of length >= 3.
    """

    working_precision: int = field(default_factory=default_precision)
    target_abs_error: float | None = None
    max_cutoff: int = 10**6
    ladder: tuple[int, ...] | None = None
    em_terms: int = 8
    workers: int = 1
    strict: bool = True

    def __post_init__(self):
        if self.working_precision < 64:
            raise DomainError("working_precision must be >= 64 bits")
        if self.target_abs_error is not None and not self.target_abs_error > 0:
            raise DomainError("target_abs_error must be positive")
        if self.max_cutoff < 1:
            raise DomainError("max_cutoff must be positive")
        if self.ladder is not None:
            lad = tuple(int(n) for n in self.ladder)
            object.__setattr__(self, "ladder", lad)
            if not lad or any(n < 1 for n in lad):
                raise DomainError("ladder entries must be positive")
            if any(b <= a for a, b in zip(lad, lad[1:])):
                raise DomainError("ladder must be strictly increasing")
            if lad[-1] > self.max_cutoff:
                raise DomainError("ladder exceeds max_cutoff")
        if self.em_terms < 1:
            raise DomainError("em_terms must be >= 1")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")

    def target_for(self, default: float) -> float:
        return default if self.target_abs_error is None else self.target_abs_error

    @property
    def scalar_eps(self) -> float:
        return math.ldexp(1.0, -self.working_precision + 4)


@dataclass(frozen=True)
class SeriesResult:
    """A numerical value together with an absolute error estimate.

    ``value`` is an :class:`mpmath.mpc`; lattice sums carry float64 accuracy
    in it. ``meta`` records the ladder, partial sums and fitted exponent when
    extrapolation was used.
    """

    value: Any
    abs_error_estimate: float
    cutoff_used: int = 0
    accelerated: bool = False
    terms_summed: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not (self.abs_error_estimate >= 0):
            raise ValueError("abs_error_estimate must be non-negative")
        if not isinstance(self.value, mpmath.mpc):
            object.__setattr__(self, "value", mpmath.mpc(self.value))
        if self.accelerated and "ladder" not in self.meta:
            raise ValueError("accelerated results must record their ladder")

    @property
    def real(self) -> float:
        return float(self.value.real)

    def __complex__(self) -> complex:
        return complex(self.value)

    def combine(self, other: "SeriesResult", coeff_self=1, coeff_other=1) -> "SeriesResult":
        """Linear combination ``a*self + b*other`` with propagated errors."""
        a = mpmath.mpmathify(coeff_self)
        b = mpmath.mpmathify(coeff_other)
        return SeriesResult(
            value=a * self.value + b * other.value,
            abs_error_estimate=float(abs(a)) * self.abs_error_estimate
            + float(abs(b)) * other.abs_error_estimate,
            cutoff_used=max(self.cutoff_used, other.cutoff_used),
            terms_summed=self.terms_summed + other.terms_summed,
        )
