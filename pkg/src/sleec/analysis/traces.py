"""Trace utilities: bounded trace sets, projection, formatting."""

from ..tockcsp import TOCK, TERMINATION, Comm
from ..tockcsp.engine import transitions
from .explore import ordered_successors


def bounded_traces(term, env, max_events, max_tocks):
    """The set of traces (tuples of events) with at most `max_events`
    non-tock events and `max_tocks` tocks.  Termination is recorded as the
    marker TERMINATION ending a trace."""
    out = set()

    def walk(t, prefix, events, tocks):
        out.add(tuple(prefix))
        for (e, s) in transitions(t, env):
            if e is TERMINATION:
                out.add(tuple(prefix) + (TERMINATION,))
                continue
            if e is TOCK:
                if tocks == max_tocks:
                    continue
                prefix.append(e)
                walk(s, prefix, events, tocks + 1)
                prefix.pop()
            else:
                if events == max_events:
                    continue
                prefix.append(e)
                walk(s, prefix, events + 1, tocks)
                prefix.pop()

    walk(term, [], 0, 0)
    return out


def project(trace, event_names, keep_tock=True):
    """Keep tocks and communications on the named channels."""
    kept = []
    for e in trace:
        if e is TOCK:
            if keep_tock:
                kept.append(e)
        elif e is TERMINATION:
            continue
        elif e.chan in event_names:
            kept.append(e)
    return tuple(kept)


def measure_values_at(trace, pos, measure_names):
    """Latest value communicated on each named channel strictly before
    position `pos` (None when never read)."""
    latest = {m: None for m in measure_names}
    for e in trace[:pos]:
        if isinstance(e, Comm) and e.chan in latest:
            latest[e.chan] = e.value
    return latest


def fmt_event(e):
    if e is TOCK:
        return "tock"
    if e is TERMINATION:
        return "tick"
    return repr(e)


def fmt_trace(trace):
    """Human-readable form with tock runs compressed: `a, b.1, 3 tocks, c`."""
    parts = []
    run = 0
    for e in trace:
        if e is TOCK:
            run += 1
            continue
        if run:
            parts.append("1 tock" if run == 1 else "%d tocks" % run)
            run = 0
        parts.append(fmt_event(e))
    if run:
        parts.append("1 tock" if run == 1 else "%d tocks" % run)
    return ", ".join(parts) if parts else "<empty>"


def trace_json(trace):
    """JSON-friendly witness form: events as objects, tock runs compressed."""
    items = []
    run = 0
    for e in trace:
        if e is TOCK:
            run += 1
            continue
        if run:
            items.append({"tocks": run})
            run = 0
        if e is TERMINATION:
            items.append({"terminated": True})
            continue
        entry = {"event": e.chan}
        if e.value is not None:
            v = e.value
            if hasattr(v, "name"):
                v = v.name
            entry["value"] = v
        items.append(entry)
    if run:
        items.append({"tocks": run})
    return items


def count_tocks(trace):
    return sum(1 for e in trace if e is TOCK)
