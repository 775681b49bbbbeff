"""AST for rule files, plus a canonical pretty printer.

Node equality ignores source spans so that structural comparison (and the
parse/print round-trip) works on content alone.
"""

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class EventDecl:
    name: str
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class MeasureDecl:
    name: str
    kind: str  # "boolean" | "numeric" | "scale"
    scale_literals: tuple = ()
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class ConstantDecl:
    name: str
    value: Optional[int] = None
    span: tuple = field(default=(0, 0), compare=False)


# --- boolean expressions over measures/constants ---------------------------


@dataclass
class NameRef:
    """An identifier in expression position: measure, constant or scale literal.

    Which of the three it is gets pinned down during validation.
    """

    name: str
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class IntLit:
    value: int
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class BoolLit:
    value: bool
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Cmp:
    op: str  # one of < > <= >= = <>
    left: object
    right: object
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Not:
    operand: object


@dataclass
class And:
    left: object
    right: object


@dataclass
class Or:
    left: object
    right: object


# --- rules ------------------------------------------------------------------


@dataclass
class Trigger:
    event: str
    condition: Optional[object] = None  # boolean expression or None
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Deadline:
    value: object  # IntLit or NameRef (constant)
    unit: str  # "second" | "minute" | "hour" | "day"
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Constraint:
    """An obligation on a single event.

    forbid=False: the event must occur, optionally within a deadline, with an
    optional fallback response when the deadline expires.
    forbid=True: the event must not occur for the duration of the deadline.
    """

    event: str
    forbid: bool = False
    deadline: Optional[Deadline] = None
    alternative: Optional["Response"] = None  # the "otherwise" response
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Defeater:
    condition: object  # boolean expression
    response: Optional["Response"] = None  # None means: drop the obligation
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Response:
    constraint: Constraint
    defeaters: list = field(default_factory=list)


@dataclass
class Rule:
    id: str
    trigger: Trigger
    response: Response
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Spec:
    events: list = field(default_factory=list)
    measures: list = field(default_factory=list)
    constants: list = field(default_factory=list)
    rules: list = field(default_factory=list)

    def event_names(self):
        return [e.name for e in self.events]

    def measure(self, name):
        for m in self.measures:
            if m.name == name:
                return m
        return None

    def constant(self, name):
        for c in self.constants:
            if c.name == name:
                return c
        return None

    def rule(self, rule_id):
        for r in self.rules:
            if r.id == rule_id:
                return r
        return None


# --- pretty printer ---------------------------------------------------------

_UNIT_PLURAL = {"second": "seconds", "minute": "minutes", "hour": "hours", "day": "days"}


def format_expr(e):
    return _fmt_or(e)


def _fmt_or(e):
    if isinstance(e, Or):
        return "%s or %s" % (_fmt_or(e.left), _fmt_and(e.right))
    return _fmt_and(e)


def _fmt_and(e):
    if isinstance(e, And):
        return "%s and %s" % (_fmt_and(e.left), _fmt_not(e.right))
    return _fmt_not(e)


def _fmt_not(e):
    if isinstance(e, Not):
        return "not %s" % _fmt_not(e.operand)
    return _fmt_atom(e)


def _fmt_atom(e):
    if isinstance(e, Cmp):
        return "%s %s %s" % (_fmt_atom(e.left), e.op, _fmt_atom(e.right))
    if isinstance(e, NameRef):
        return e.name
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, (And, Or, Not)):
        return "(%s)" % _fmt_or(e)
    raise TypeError("not an expression node: %r" % (e,))


def _fmt_deadline(d):
    v = d.value.name if isinstance(d.value, NameRef) else str(d.value.value)
    unit = d.unit if v == "1" else _UNIT_PLURAL[d.unit]
    return "within %s %s" % (v, unit)


def format_response(resp, top=True):
    c = resp.constraint
    if c.forbid:
        text = "not %s %s" % (c.event, _fmt_deadline(c.deadline))
    else:
        text = c.event
        if c.deadline is not None:
            text += " " + _fmt_deadline(c.deadline)
        if c.alternative is not None:
            text += " otherwise " + format_response(c.alternative, top=False)
    for d in resp.defeaters:
        text += " unless " + format_expr(d.condition)
        if d.response is not None:
            text += " then " + format_response(d.response, top=False)
    # A nested response only takes defeaters of its own when braced, so wrap
    # it whenever it has some; the printed form then parses back to the same
    # tree.
    if not top and resp.defeaters:
        text = "{ %s }" % text
    return text


def format_rule(rule):
    text = "%s when %s" % (rule.id, rule.trigger.event)
    if rule.trigger.condition is not None:
        text += " and %s" % format_expr(rule.trigger.condition)
    text += " then %s" % format_response(rule.response)
    return text


def format_spec(spec):
    lines = ["def_start"]
    for ev in spec.events:
        lines.append("    event %s" % ev.name)
    for m in spec.measures:
        if m.kind == "scale":
            lines.append("    measure %s: scale(%s)" % (m.name, ", ".join(m.scale_literals)))
        else:
            lines.append("    measure %s: %s" % (m.name, m.kind))
    for c in spec.constants:
        if c.value is None:
            lines.append("    constant %s" % c.name)
        else:
            lines.append("    constant %s = %d" % (c.name, c.value))
    lines.append("def_end")
    lines.append("")
    lines.append("rule_start")
    for r in spec.rules:
        lines.append("    " + format_rule(r))
    lines.append("rule_end")
    return "\n".join(lines) + "\n"
