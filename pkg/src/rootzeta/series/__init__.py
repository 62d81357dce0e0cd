"""Numerical evaluation of scalar series and root-system lattice sums."""

from .config import PrecisionConfig, SeriesResult, default_precision
from .lattice import lattice_sum, multizeta_eval
from .scalar import euler_zagier2, hurwitz_zeta, mp_log2, mp_pi, phi, polylog, riemann_zeta

__all__ = [
    "PrecisionConfig",
    "SeriesResult",
    "default_precision",
    "euler_zagier2",
    "hurwitz_zeta",
    "lattice_sum",
    "mp_log2",
    "mp_pi",
    "multizeta_eval",
    "phi",
    "polylog",
    "riemann_zeta",
]
