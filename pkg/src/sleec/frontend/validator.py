"""Static checks on a parsed spec, against a configuration.

`validate` returns (well_formed_or_None, diagnostics).  The well-formed
wrapper resolves names, constant values and numeric domains for the
translation and analysis layers; it is None when any error-level diagnostic
was produced.
"""

from dataclasses import dataclass

from . import ast


@dataclass
class Diagnostic:
    code: str
    message: str
    span: tuple = (0, 0)
    severity: str = "error"  # "error" | "warning"

    def __str__(self):
        return "%s:%s: %s [%s]" % (self.span[0], self.span[1], self.message, self.code)


class WellFormedSpec:
    """A validated spec plus resolved configuration values.

    Declaration order of events and measures is preserved; downstream code
    relies on it for stable channel ordering.
    """

    def __init__(self, spec, constants, numeric_domains):
        self.spec = spec
        self.constants = dict(constants)  # name -> int
        self.numeric_domains = dict(numeric_domains)  # name -> (lo, hi)
        self.events = [e.name for e in spec.events]
        self.measures = {m.name: m for m in spec.measures}
        self.measure_order = [m.name for m in spec.measures]
        self.scale_literal_owner = {}
        for m in spec.measures:
            if m.kind == "scale":
                for i, lit in enumerate(m.scale_literals):
                    self.scale_literal_owner[lit] = (m.name, i)

    def resolve(self, name):
        """Classify an identifier: ('measure', decl), ('constant', value),
        ('scalelit', measure_name, index) or None."""
        if name in self.measures:
            return ("measure", self.measures[name])
        if name in self.constants:
            return ("constant", self.constants[name])
        if name in self.scale_literal_owner:
            owner, idx = self.scale_literal_owner[name]
            return ("scalelit", owner, idx)
        return None

    def rule(self, rule_id):
        return self.spec.rule(rule_id)

    def rule_ids(self):
        return [r.id for r in self.spec.rules]

    def constant_value(self, name):
        return self.constants[name]


def _is_upper_camel(name):
    return name[0].isupper() and "_" not in name


def _is_lower_camel(name):
    return name[0].islower() and "_" not in name


def _is_const_case(name):
    return name == name.upper()


def validate(spec, config=None):
    """Check `spec` against `config` (an object with .constant_values and
    .numeric_domains mappings, or None)."""
    constant_values = getattr(config, "constant_values", None) or {}
    numeric_domains = getattr(config, "numeric_domains", None) or {}
    diags = []

    def err(code, message, span=(0, 0)):
        diags.append(Diagnostic(code, message, span, "error"))

    def warn(code, message, span=(0, 0)):
        diags.append(Diagnostic(code, message, span, "warning"))

    # one namespace for events, measures, constants and scale literals:
    # they all become channel / datatype / value names later on.
    seen = {}

    def declare(name, what, span):
        if name in seen:
            err(
                "DuplicateIdentifier",
                "%s %r collides with %s declared earlier" % (what, name, seen[name]),
                span,
            )
        else:
            seen[name] = what

    for ev in spec.events:
        declare(ev.name, "event", ev.span)
        if not _is_upper_camel(ev.name):
            warn("CaseConvention", "event %r should be UpperCamelCase" % ev.name, ev.span)

    for m in spec.measures:
        declare(m.name, "measure", m.span)
        if not _is_lower_camel(m.name):
            warn("CaseConvention", "measure %r should be lowerCamelCase" % m.name, m.span)
        if m.kind == "scale":
            if len(set(m.scale_literals)) < 2:
                err(
                    "ScaleTooSmall",
                    "scale measure %r needs at least 2 distinct literals" % m.name,
                    m.span,
                )
            for lit in m.scale_literals:
                declare(lit, "scale literal", m.span)
        elif m.kind == "numeric":
            if m.name not in numeric_domains:
                err(
                    "MissingDomain",
                    "numeric measure %r has no configured range" % m.name,
                    m.span,
                )
            else:
                lo, hi = numeric_domains[m.name]
                if lo > hi:
                    err(
                        "MissingDomain",
                        "range for %r is empty (%d..%d)" % (m.name, lo, hi),
                        m.span,
                    )

    constants = {}
    for c in spec.constants:
        declare(c.name, "constant", c.span)
        if not _is_const_case(c.name):
            warn("CaseConvention", "constant %r should be ALL_CAPS" % c.name, c.span)
        if c.value is not None:
            # an explicit value in the spec wins over the configuration
            constants[c.name] = c.value
        elif c.name in constant_values:
            constants[c.name] = int(constant_values[c.name])
        else:
            err(
                "MissingConstant",
                "constant %r has no value (declare one or configure it)" % c.name,
                c.span,
            )

    wf = WellFormedSpec(spec, constants, numeric_domains)

    rule_ids = set()
    for r in spec.rules:
        if r.id in rule_ids:
            err("DuplicateIdentifier", "rule %r declared twice" % r.id, r.span)
        rule_ids.add(r.id)
        if not r.id[0].isupper():
            warn("CaseConvention", "rule name %r should start uppercase" % r.id, r.span)
        _check_rule(r, wf, err)

    has_errors = any(d.severity == "error" for d in diags)
    return (None if has_errors else wf, diags)


def _check_rule(rule, wf, err):
    if rule.trigger.event not in wf.events:
        err(
            "UndeclaredIdentifier",
            "trigger event %r is not declared" % rule.trigger.event,
            rule.trigger.span,
        )
    if rule.trigger.condition is not None:
        _check_bool(rule.trigger.condition, wf, err, rule.span)
    _check_response(rule.response, wf, err, rule.span)


def _check_response(resp, wf, err, span):
    c = resp.constraint
    if c.event not in wf.events:
        err("UndeclaredIdentifier", "event %r is not declared" % c.event, c.span)
    if c.deadline is not None:
        _check_deadline(c.deadline, wf, err)
    if c.alternative is not None:
        _check_response(c.alternative, wf, err, span)
    for d in resp.defeaters:
        _check_bool(d.condition, wf, err, d.span)
        if d.response is not None:
            _check_response(d.response, wf, err, span)


def _check_deadline(dl, wf, err):
    if isinstance(dl.value, ast.NameRef):
        kind = wf.resolve(dl.value.name)
        if kind is None:
            err(
                "UndeclaredIdentifier",
                "identifier %r is not declared" % dl.value.name,
                dl.value.span,
            )
            return
        if kind[0] != "constant":
            err(
                "TypeMismatch",
                "deadline value %r must be a constant" % dl.value.name,
                dl.value.span,
            )
            return
        value = kind[1]
    else:
        value = dl.value.value
    if value <= 0:
        err("BadDeadline", "deadline must be positive, got %d" % value, dl.span)


def _type_of_operand(e, wf, err):
    """Type tag of a comparison operand: 'int', 'bool', ('scale', m),
    ('scalelit', m) or None after reporting."""
    if isinstance(e, ast.IntLit):
        return "int"
    if isinstance(e, ast.BoolLit):
        return "bool"
    if isinstance(e, ast.NameRef):
        kind = wf.resolve(e.name)
        if kind is None:
            err("UndeclaredIdentifier", "identifier %r is not declared" % e.name, e.span)
            return None
        if kind[0] == "constant":
            return "int"
        if kind[0] == "scalelit":
            return ("scalelit", kind[1])
        m = kind[1]
        if m.kind == "boolean":
            return "bool"
        if m.kind == "numeric":
            return "int"
        return ("scale", m.name)
    err("TypeMismatch", "expected a measure, constant or literal here", (0, 0))
    return None


def _check_cmp(e, wf, err):
    lt = _type_of_operand(e.left, wf, err)
    rt = _type_of_operand(e.right, wf, err)
    if lt is None or rt is None:
        return
    def scale_name(t):
        return t[1] if isinstance(t, tuple) else None
    if isinstance(lt, tuple) or isinstance(rt, tuple):
        ls, rs = scale_name(lt), scale_name(rt)
        if ls is not None and rs is not None:
            if ls != rs:
                err(
                    "TypeMismatch",
                    "cannot compare values of different scales (%s vs %s)" % (ls, rs),
                    e.span,
                )
        else:
            err(
                "TypeMismatch",
                "cannot compare a scale value with a %s" % (rt if ls else lt),
                e.span,
            )
        return
    if lt != rt:
        err("TypeMismatch", "cannot compare %s with %s" % (lt, rt), e.span)
        return
    if lt == "bool" and e.op not in ("=", "<>"):
        err("TypeMismatch", "booleans only support = and <>", e.span)


def _check_bool(e, wf, err, span):
    """Require `e` to be a boolean expression."""
    if isinstance(e, (ast.And, ast.Or)):
        _check_bool(e.left, wf, err, span)
        _check_bool(e.right, wf, err, span)
        return
    if isinstance(e, ast.Not):
        _check_bool(e.operand, wf, err, span)
        return
    if isinstance(e, ast.Cmp):
        _check_cmp(e, wf, err)
        return
    if isinstance(e, ast.BoolLit):
        return
    if isinstance(e, ast.NameRef):
        kind = wf.resolve(e.name)
        if kind is None:
            err("UndeclaredIdentifier", "identifier %r is not declared" % e.name, e.span)
            return
        if kind[0] == "measure" and kind[1].kind == "boolean":
            return
        err(
            "TypeMismatch",
            "%r is not a boolean measure; a bare name here must be one" % e.name,
            e.span,
        )
        return
    if isinstance(e, ast.IntLit):
        err("TypeMismatch", "a number is not a condition", e.span)
        return
    err("TypeMismatch", "not a boolean expression: %r" % (e,), span)
