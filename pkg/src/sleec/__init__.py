"""Toolkit for SLEEC rules: parsing, validation, compilation to tock-CSP,
script emission, and bounded checking of conflicts, redundancy and agent
conformance."""

__version__ = "0.1.0"

from .frontend import parse, validate
from .semantics import translate_spec, conjunction
from .analysis import (check_conflict, check_redundancy, check_conformance,
                       overlapping_pairs, CheckReport)
from .cspm import emit_cspm, emit_assertions, lint
from .config import CheckConfig, load_config, parse_config_text

__all__ = [
    "parse", "validate", "translate_spec", "conjunction",
    "check_conflict", "check_redundancy", "check_conformance",
    "overlapping_pairs", "CheckReport",
    "emit_cspm", "emit_assertions", "lint",
    "CheckConfig", "load_config", "parse_config_text",
    "__version__",
]
