"""Serialize a compiled model to a machine-readable CSP script.

The output is one deterministic text: declarations first (events, measures,
scale datatypes with their order comparators, constants), then every process
equation.  Timed operators are written in the same explicit-tock dialect the
toolkit reads back, with a short prelude comment explaining them; scripts are
kept loadable by the internal linter and structurally close to hand-written
model-checker input.
"""

from ..errors import SleecError
from ..semantics import conjunction, ensure_run
from ..tockcsp import mk_hide, mk_interleave, mk_ref
from ..tockcsp.display import display

_PRELUDE = [
    "-- tock-CSP script generated from SLEEC rules",
    "-- timed operators: WAIT(d) delays d units; d <| P forces P's first event",
    "-- within d tocks; P [> d > Q passes control to Q after exactly d tocks.",
    "channel tock",
]


def comparator_def(measure, literals):
    """The Boolean less-or-equal function over a scale's literals: a chain of
    conditionals following the declared order."""
    v1 = "v1%s" % measure
    v2 = "v2%s" % measure
    n = len(literals)

    def branch(i):
        if i == n - 1:
            return "%s == %s" % (v2, literals[i])
        cond = "%s == %s" % (v1, literals[i])
        if i == 0:
            yes = "true"
        else:
            yes = "not member(%s,{%s})" % (v2, ",".join(literals[:i]))
        return "if %s then %s else (%s)" % (cond, yes, branch(i + 1))

    return "STle%s(%s,%s) = %s" % (measure, v1, v2, branch(0))


def emit_cspm(model, assertions=""):
    """Render the model; `assertions` text, when given, is appended after the
    process section."""
    lines = list(_PRELUDE)
    if model.tock_unit_seconds != 1:
        lines.insert(len(lines) - 1,
                     "-- time scale: 1 tock = %d seconds" % model.tock_unit_seconds)
    lines.append("")

    events = [c for c in model.channels if c.shape is None]
    measures = [c for c in model.channels if c.shape is not None]
    if events:
        lines.append("-- events")
        for c in events:
            lines.append("channel %s" % c.name)
    if measures:
        lines.append("-- measures")
        for c in measures:
            if c.shape[0] == "bool":
                lines.append("channel %s: Bool" % c.name)
            elif c.shape[0] == "range":
                lines.append("channel %s : {%d..%d}" % (c.name, c.shape[1], c.shape[2]))
            elif c.shape[0] == "scale":
                lines.append("channel %s: ST%s" % (c.name, c.name))
            else:
                raise SleecError("channel %r has no finite domain" % c.name)
    for m, lits in model.datatypes.items():
        lines.append("datatype ST%s = %s" % (m, " | ".join(lits)))
        lines.append(comparator_def(m, lits))
    if model.constants:
        lines.append("-- constants")
        for name, value in model.constants.items():
            lines.append("%s = %d" % (name, value))
    lines.append("")

    lines.append("-- processes")
    for name, (params, body) in model.processes.items():
        head = name if not params else "%s(%s)" % (name, ",".join(params))
        lines.append("%s = %s" % (head, display(body)))

    if assertions:
        lines.append("")
        lines.append(assertions.rstrip("\n"))
    return "\n".join(lines) + "\n"


def emit_assertions(model, conflict_pairs=(), redundancy_pairs=(),
                    conformance=()):
    """Assertion text for the given checks.

    Conflict pairs get a deadlock-freedom assertion on their conjunction
    process plus a comment block naming the timed-deadlock check (performed
    authoritatively by the built-in engine).  Redundancy pairs get a traces
    refinement with measure channels hidden on both sides.  Conformance
    targets (rule, agent process name) get a traces refinement against the
    rule process.
    """
    out = []
    for (r1, r2) in conflict_pairs:
        name = conjunction(model, r1, r2)
        out.append("-- conflict check (%s, %s)" % (r1, r2))
        out.append("assert %s :[deadlock free]" % name)
        out.append("-- timed-deadlock check (%s, %s): the built-in engine" % (r1, r2))
        out.append("-- searches %s for a state from which only tock" % name)
        out.append("-- remains possible forever (`conflicts` command).")
    for (r1, r2) in redundancy_pairs:
        name = conjunction(model, r1, r2)
        mset = _measure_set(model, r1, r2)
        spec_name = "RED_%s_wrt_%s_SPEC" % (r1, r2)
        impl_name = "RED_%s_wrt_%s_IMPL" % (r1, r2)
        pad = [e for e in model.rules[r1].events
               if e not in model.rules[r2].events]
        spec_body = mk_ref(r2)
        if pad:
            spec_body = mk_interleave(spec_body, mk_ref(ensure_run(model, pad)))
        model.define_if_absent(spec_name, mk_hide(spec_body, mset))
        model.define_if_absent(impl_name, mk_hide(mk_ref(name), mset))
        out.append("-- redundancy of %s with respect to %s" % (r1, r2))
        out.append("assert %s [T= %s" % (spec_name, impl_name))
    for (rule_id, agent) in conformance:
        if rule_id not in model.rules:
            raise SleecError("unknown rule %r in conformance target" % rule_id)
        out.append("-- conformance of agent %s to %s (weakened per the" % (agent, rule_id))
        out.append("-- built-in check; measure alignment is enforced there)")
        out.append("assert %s [T= %s" % (rule_id, agent))
    return "\n".join(out) + ("\n" if out else "")


def _measure_set(model, r1, r2):
    ms = list(model.rules[r1].measures)
    for m in model.rules[r2].measures:
        if m not in ms:
            ms.append(m)
    return tuple(ms)


def emit_counts(model):
    """Counts printed after writing a script."""
    return {
        "channels": len(model.channels),
        "datatypes": len(model.datatypes),
        "constants": len(model.constants),
        "processes": len(model.processes),
    }
