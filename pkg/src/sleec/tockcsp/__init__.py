"""Discrete-time process engine: terms, environments, transitions, parser."""

from .terms import (
    TOCK,
    TERMINATION,
    Comm,
    SVal,
    SKIP,
    STOP,
    ELit,
    EVar,
    ECmp,
    EScaleLe,
    ENot,
    EAnd,
    EOr,
    eval_expr,
    mk_skip,
    mk_stop,
    mk_wait,
    mk_prefix,
    mk_output,
    mk_input,
    mk_if,
    mk_extchoice,
    mk_seq,
    mk_hide,
    mk_interleave,
    mk_genpar,
    mk_interrupt,
    mk_timed_interrupt,
    mk_deadline,
    mk_ref,
    mk_repl_extchoice,
    tsubst,
)
from .env import Config, ProcEnv
from .engine import initials, step, transitions
from .tcsp_parser import parse_tcsp
from .display import display, fmt_expr, fmt_value
