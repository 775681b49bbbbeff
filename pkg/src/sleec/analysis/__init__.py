from .explore import Lts, explore, ordered_successors, is_terminated
from .traces import (bounded_traces, project, measure_values_at, fmt_trace,
                     fmt_event, trace_json, count_tocks)
from .report import CheckReport, HOLDS, VIOLATED, INCONCLUSIVE, SKIPPED
from .conflict import check_conflict, overlapping_pairs
from .redundancy import check_redundancy, redundancy_with_prechecks
from .conformance import check_conformance

__all__ = [
    "Lts", "explore", "ordered_successors", "is_terminated",
    "bounded_traces", "project", "measure_values_at", "fmt_trace",
    "fmt_event", "trace_json", "count_tocks",
    "CheckReport", "HOLDS", "VIOLATED", "INCONCLUSIVE", "SKIPPED",
    "check_conflict", "overlapping_pairs",
    "check_redundancy", "redundancy_with_prechecks",
    "check_conformance",
]
