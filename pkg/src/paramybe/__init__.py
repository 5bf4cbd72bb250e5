"""Parametric set-theoretic Yang-Baxter maps, reflections, p-shelves and p-braces on finite tables."""

from .algebra import (
    Carrier,
    GroupTable,
    ParamSet,
    SkewBrace,
    almost_trivial_brace,
    cyclic_group,
    dihedral_group,
    modular_brace,
    param_set,
    skew_brace_new,
    trivial_brace,
)
from .errors import AlgebraError, InternalInconsistency
from .report import Check, Report

__all__ = [
    "AlgebraError",
    "Carrier",
    "Check",
    "GroupTable",
    "InternalInconsistency",
    "ParamSet",
    "Report",
    "SkewBrace",
    "almost_trivial_brace",
    "cyclic_group",
    "dihedral_group",
    "modular_brace",
    "param_set",
    "skew_brace_new",
    "trivial_brace",
]
