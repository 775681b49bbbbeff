"""Compilation of validated rule files into timed process models."""

from .model import ChannelDecl, CspModel, RuleInfo
from .norm import measure_var, norm_condition, norm_time
from .translate import (
    conjunction,
    ensure_memo_cell,
    ensure_run,
    translate_measure_reads,
    translate_response,
    translate_rule,
    translate_spec,
    translate_trigger,
)

__all__ = [
    "ChannelDecl",
    "CspModel",
    "RuleInfo",
    "measure_var",
    "norm_condition",
    "norm_time",
    "translate_spec",
    "translate_rule",
    "translate_trigger",
    "translate_response",
    "translate_measure_reads",
    "conjunction",
    "ensure_memo_cell",
    "ensure_run",
]
