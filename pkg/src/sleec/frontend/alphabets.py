"""Event and measure alphabets of rules.

Both functions return lists ordered by first syntactic occurrence (stable
across runs; the translation relies on the measure order for read sequences).
"""

from . import ast


def _events_of_response(resp, out):
    c = resp.constraint
    if c.event not in out:
        out.append(c.event)
    if c.alternative is not None:
        _events_of_response(c.alternative, out)
    for d in resp.defeaters:
        if d.response is not None:
            _events_of_response(d.response, out)


def alpha_response_events(resp):
    """Events occurring anywhere in a response (constraint, fallbacks,
    defeater responses)."""
    out = []
    _events_of_response(resp, out)
    return out


def alpha_events(rule, include_trigger=True):
    """Events of a rule: optionally the trigger event, then every event the
    response can refer to."""
    out = []
    if include_trigger and rule.trigger.event not in out:
        out.append(rule.trigger.event)
    _events_of_response(rule.response, out)
    return out


def measures_of_expr(expr, wf, out=None):
    """Measure names read by a boolean expression, in occurrence order."""
    if out is None:
        out = []
    if isinstance(expr, (ast.And, ast.Or)):
        measures_of_expr(expr.left, wf, out)
        measures_of_expr(expr.right, wf, out)
    elif isinstance(expr, ast.Not):
        measures_of_expr(expr.operand, wf, out)
    elif isinstance(expr, ast.Cmp):
        measures_of_expr(expr.left, wf, out)
        measures_of_expr(expr.right, wf, out)
    elif isinstance(expr, ast.NameRef):
        kind = wf.resolve(expr.name)
        if kind is not None and kind[0] == "measure" and expr.name not in out:
            out.append(expr.name)
    return out


def _measures_of_response(resp, wf, out):
    for d in resp.defeaters:
        measures_of_expr(d.condition, wf, out)
        if d.response is not None:
            _measures_of_response(d.response, wf, out)
    c = resp.constraint
    if c.alternative is not None:
        _measures_of_response(c.alternative, wf, out)


def alpha_measures(rule, wf):
    """Measures a rule reads: trigger condition first, then defeater
    conditions in syntactic order, deduplicated."""
    out = []
    if rule.trigger.condition is not None:
        measures_of_expr(rule.trigger.condition, wf, out)
    _measures_of_response(rule.response, wf, out)
    return out
