"""Functional relations among zeta-functions of root systems, with numerical checks."""

from .c2 import (
    c2_prop_terms,
    c2_111_terms,
    c2_121_terms,
    c2_333_terms,
    c2_333_variant_terms,
    pfd_evaluate,
    pfd_terms,
)
from .registry import (
    CLOSED_VALUES,
    RelationRecord,
    VerificationReport,
    get_relation,
    registry,
    relation_ids,
    verify,
)
from .terms import TermSum

__all__ = [
    "CLOSED_VALUES",
    "RelationRecord",
    "TermSum",
    "VerificationReport",
    "c2_prop_terms",
    "c2_111_terms",
    "c2_121_terms",
    "c2_333_terms",
    "c2_333_variant_terms",
    "get_relation",
    "pfd_evaluate",
    "pfd_terms",
    "registry",
    "relation_ids",
    "verify",
]
