"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RootZetaError(Exception):
    """Base class for all errors raised by :mod:`rootzeta`."""


class UnsupportedRankError(RootZetaError):
    """A root system type was requested at a rank it does not exist in."""


class NotInDeltaStarError(RootZetaError):
    """A root was used as if it had a nonzero coefficient at the excluded index."""


class PoleError(RootZetaError):
    """Evaluation at a pole (for instance the Riemann zeta function at 1)."""


class DivergenceError(RootZetaError):
    """The requested series lies outside its region of absolute convergence."""


class DomainError(RootZetaError):
    """An argument lies outside the supported domain of an operation."""


class SingularFactorError(RootZetaError):
    """A unit factor has a vanishing constant term and cannot be expanded."""


class EvaluationInstabilityError(RootZetaError):
    """A closed formula was evaluated too close to one of its poles."""


class AssumptionError(RootZetaError):
    """A structural hypothesis of a formula is violated by the arguments."""


class UnknownRelationError(RootZetaError):
    """A relation identifier is not present in the registry."""


class ParseError(RootZetaError):
    """A closed-form expression could not be parsed."""


class AccuracyNotReachedError(RootZetaError):
    """The error estimate stays above the target after the full cutoff ladder.

    The best available result is kept on :attr:`best` so callers may still
    report it.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
