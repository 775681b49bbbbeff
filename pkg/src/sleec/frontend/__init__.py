"""Rule-file front end: scanner, parser, validator, alphabets, printer."""

from .lexer import Token, tokenize
from .parser import parse
from .validator import Diagnostic, WellFormedSpec, validate
from .alphabets import (
    alpha_events,
    alpha_measures,
    alpha_response_events,
    measures_of_expr,
)
from .ast import format_rule, format_spec, format_expr

__all__ = [
    "Token",
    "tokenize",
    "parse",
    "validate",
    "Diagnostic",
    "WellFormedSpec",
    "alpha_events",
    "alpha_measures",
    "alpha_response_events",
    "measures_of_expr",
    "format_rule",
    "format_spec",
    "format_expr",
]
