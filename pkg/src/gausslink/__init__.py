"""Gauss-diagram multiple linking numbers and Reidemeister-move rewriting."""
from .codec import GaussCodeError, parse, report_json, serialize
from .diagram import GaussDiagram, InvalidDiagram, Mode, canonical_form, isomorphic, validate
from .invariants import (
    InvariantReport,
    linking_numbers,
    multiple_linking_S,
    multiple_linking_T,
    report,
    rii_lower_bound,
)
from .kernels import BACKEND
from .moves import MoveKind, MoveSite, apply, decompose_via_table2, enumerate_sites, inverse
from .pairing import ArrowPattern, PatternSum, bracket, bracket_sum, parse_pattern
from .search import min_negative_omega2

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ArrowPattern",
    "GaussCodeError",
    "GaussDiagram",
    "InvalidDiagram",
    "InvariantReport",
    "Mode",
    "MoveKind",
    "MoveSite",
    "PatternSum",
    "apply",
    "bracket",
    "bracket_sum",
    "canonical_form",
    "decompose_via_table2",
    "enumerate_sites",
    "inverse",
    "isomorphic",
    "linking_numbers",
    "min_negative_omega2",
    "multiple_linking_S",
    "multiple_linking_T",
    "parse",
    "parse_pattern",
    "report",
    "report_json",
    "rii_lower_bound",
    "serialize",
    "validate",
]
