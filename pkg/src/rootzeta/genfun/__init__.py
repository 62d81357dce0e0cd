"""Generating functions of root systems and their Bernoulli functions."""

from .engine import (
    DEFAULT_DEGREE,
    F_general,
    GenFunSpec,
    PTemplate,
    bernoulli_P,
    bernoulli_P_layers,
    bernoulli_poly,
    expand_unit_factor,
    phases_real,
    singular_pairs,
)
from .tseries import Shape, TruncatedSeries

__all__ = [
    "DEFAULT_DEGREE",
    "F_general",
    "GenFunSpec",
    "PTemplate",
    "Shape",
    "TruncatedSeries",
    "bernoulli_P",
    "bernoulli_P_layers",
    "bernoulli_poly",
    "expand_unit_factor",
    "phases_real",
    "singular_pairs",
]
