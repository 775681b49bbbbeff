"""Compilation of rules into timed process equations.

Every rule becomes three linked equations,

    <R>           = Trigger<R> ; Monitoring<R> ; <R>
    Trigger<R>    = watch for the trigger (reading its measures urgently),
                    letting response events pass freely until it fires
    Monitoring<R> = discharge the response, deadlines and all

plus, where needed, lifted helper equations: MTrigger<R> for a conditioned
trigger and Monitoring<n><R> for each branch a defeater chain can select.
Local definitions are lifted to uniquely named top-level equations so the
emitted script needs no let-blocks.
"""

from ..errors import SleecError
from ..frontend import ast
from ..frontend.alphabets import (
    alpha_events,
    alpha_measures,
    alpha_response_events,
    measures_of_expr,
)
from ..tockcsp import terms as T
from ..tockcsp.terms import SKIP, EVar, mk_deadline, mk_extchoice, mk_genpar, \
    mk_if, mk_input, mk_interleave, mk_output, mk_prefix, mk_ref, mk_seq, \
    mk_timed_interrupt, mk_wait
from .model import ChannelDecl, CspModel, RuleInfo
from .norm import measure_var, norm_condition, norm_time


class _Ctx:
    def __init__(self, wf, model, rid, tock_unit_factor):
        self.wf = wf
        self.model = model
        self.rid = rid
        self.tock_unit_factor = tock_unit_factor
        self.mon_counter = 0
        self.mtrigger_counter = 0

    def fresh_mtrigger(self):
        self.mtrigger_counter += 1
        if self.mtrigger_counter == 1:
            return "MTrigger" + self.rid
        return "MTrigger%d%s" % (self.mtrigger_counter, self.rid)

    def monitoring_names(self, count):
        base = self.mon_counter
        self.mon_counter += count
        return ["Monitoring%d%s" % (base + i + 1, self.rid) for i in range(count)]


def translate_measure_reads(measures, cond, wf, sp, fp):
    """A chain of urgent measure reads ending in a test: read each measure in
    `measures` without letting time pass, then continue as `sp` if the
    condition holds under the read values, `fp` otherwise."""
    if not measures:
        return mk_if(norm_condition(cond, wf), sp, fp)
    m = measures[0]
    rest = translate_measure_reads(measures[1:], cond, wf, sp, fp)
    return mk_deadline(0, mk_input(m, measure_var(m), None, rest))


def translate_trigger(trigger, resp_events, sp, fp, ctx):
    """The watching process: the trigger event leads to `sp` (through its
    measure reads when conditioned), while any response event leaves the rule
    unconstrained and continues as `fp`."""
    if trigger.condition is None:
        fire = mk_prefix(trigger.event, None, sp)
    else:
        name = ctx.fresh_mtrigger()
        measures = measures_of_expr(trigger.condition, ctx.wf)
        body = translate_measure_reads(measures, trigger.condition, ctx.wf, sp, fp)
        ctx.model.define(name, body)
        fire = mk_prefix(trigger.event, None, mk_ref(name))
    return mk_extchoice([fire] + [mk_prefix(e, None, fp) for e in resp_events])


def _deadline_tocks(dl, ctx):
    if isinstance(dl.value, ast.NameRef):
        value = ctx.wf.constant_value(dl.value.name)
    else:
        value = dl.value.value
    return norm_time(value, dl.unit, ctx.tock_unit_factor)


def _constraint_proc(c, trigger, resp_events, mp_name, ctx):
    """Discharge one constraint: occurrence (with optional deadline and
    fallback) or forbidden window."""
    if c.forbid:
        return mk_wait(_deadline_tocks(c.deadline, ctx))
    occur = mk_prefix(c.event, None, SKIP)
    if c.deadline is None:
        return occur
    n = _deadline_tocks(c.deadline, ctx)
    if c.alternative is None:
        return mk_deadline(n, occur)
    alt = translate_response(c.alternative, trigger, resp_events, mp_name, ctx)
    return mk_timed_interrupt(occur, n, alt)


def translate_response(resp, trigger, resp_events, mp_name, ctx):
    """The monitoring process for a response.

    Without defeaters this is just the constraint.  With defeaters, each
    selectable branch is lifted to its own Monitoring<n> equation (branch 1
    is the plain constraint; a defeater without a response reverts to
    watching for a re-trigger), and the body urgently reads the defeaters'
    measures and picks a branch, testing the last defeater first.
    """
    if not resp.defeaters:
        return _constraint_proc(resp.constraint, trigger, resp_events, mp_name, ctx)

    names = ctx.monitoring_names(1 + len(resp.defeaters))
    bare = ast.Response(resp.constraint, [])
    ctx.model.define(
        names[0], translate_response(bare, trigger, resp_events, mp_name, ctx)
    )
    for i, d in enumerate(resp.defeaters):
        name = names[i + 1]
        if d.response is None:
            watch = translate_trigger(
                trigger, resp_events, mk_ref(mp_name), mk_ref(name), ctx
            )
            body = mk_extchoice(
                [watch] + [mk_prefix(e, None, mk_ref(name)) for e in resp_events]
            )
        else:
            body = translate_response(d.response, trigger, resp_events, mp_name, ctx)
        ctx.model.define(name, body)

    selector = mk_ref(names[0])
    for i, d in enumerate(resp.defeaters):
        selector = mk_if(
            norm_condition(d.condition, ctx.wf), mk_ref(names[i + 1]), selector
        )
    reads = []
    for d in resp.defeaters:
        measures_of_expr(d.condition, ctx.wf, reads)
    for m in reversed(reads):
        selector = mk_deadline(0, mk_input(m, measure_var(m), None, selector))
    return selector


def translate_rule(rule, wf, model, tock_unit_factor=1):
    """Add the equations for one rule to `model`; returns the rule's process
    name (the rule id)."""
    rid = rule.id
    ctx = _Ctx(wf, model, rid, tock_unit_factor)
    resp_events = alpha_response_events(rule.response)
    trig_name = "Trigger" + rid
    mon_name = "Monitoring" + rid
    model.define(
        trig_name,
        translate_trigger(rule.trigger, resp_events, SKIP, mk_ref(trig_name), ctx),
    )
    model.define(
        mon_name,
        translate_response(rule.response, rule.trigger, resp_events, mon_name, ctx),
    )
    model.define(rid, mk_seq(mk_ref(trig_name), mk_seq(mk_ref(mon_name), mk_ref(rid))))
    model.rules[rid] = RuleInfo(
        rid,
        rule.trigger.event,
        tuple(alpha_events(rule)),
        tuple(resp_events),
        tuple(alpha_measures(rule, wf)),
    )
    return rid


def translate_spec(wf, tock_unit_factor=1):
    """Compile a validated spec into a CspModel."""
    model = CspModel()
    model.tock_unit_seconds = tock_unit_factor
    for ev in wf.spec.events:
        model.channels.append(ChannelDecl(ev.name, None, None))
    for m in wf.spec.measures:
        if m.kind == "boolean":
            model.channels.append(ChannelDecl(m.name, ("bool",), (True, False)))
        elif m.kind == "numeric":
            lo, hi = wf.numeric_domains[m.name]
            model.channels.append(
                ChannelDecl(m.name, ("range", lo, hi), tuple(range(lo, hi + 1)))
            )
        else:
            svals = tuple(T.SVal(m.name, lit, i) for i, lit in enumerate(m.scale_literals))
            model.channels.append(ChannelDecl(m.name, ("scale", m.scale_literals), svals))
            model.datatypes[m.name] = tuple(m.scale_literals)
    for c in wf.spec.constants:
        model.constants[c.name] = wf.constants[c.name]
    for rule in wf.spec.rules:
        translate_rule(rule, wf, model, tock_unit_factor)
    return model


# --- composition helpers ------------------------------------------------------


def _memo_cell_names(measure):
    return ("Env" + measure, "VEnv" + measure)


def ensure_memo_cell(model, measure):
    """Equations for a one-shot measure memory: the first read fixes the
    value, later reads replay it."""
    env_name, venv_name = _memo_cell_names(measure)
    model.define_if_absent(
        venv_name,
        mk_output(measure, EVar("x"), mk_ref(venv_name, (EVar("x"),))),
        params=("x",),
    )
    model.define_if_absent(
        env_name, mk_input(measure, "x", None, mk_ref(venv_name, (EVar("x"),)))
    )
    return env_name


def conjunction(model, r1, r2):
    """The joint process of two rules: synchronized on their shared events,
    with all measure reads tied to shared memory cells so both rules see the
    same world.  Returns the composed process name."""
    if r1 not in model.rules or r2 not in model.rules:
        raise SleecError("unknown rule in pair (%s, %s)" % (r1, r2))
    name = "%sCC%s" % (r1, r2)
    if name in model.processes:
        return name
    info1, info2 = model.rules[r1], model.rules[r2]
    shared = [e for e in info1.events if e in info2.events]
    measures = list(info1.measures)
    for m in info2.measures:
        if m not in measures:
            measures.append(m)
    term = mk_genpar(mk_ref(r1), shared, mk_ref(r2))
    if measures:
        cells = None
        for m in measures:
            cell = mk_ref(ensure_memo_cell(model, m))
            cells = cell if cells is None else mk_interleave(cells, cell)
        term = mk_genpar(term, measures, cells)
    model.define(name, term)
    return name


def ensure_run(model, events):
    """An equation that forever offers every event in `events`; used to pad a
    process's alphabet. Returns its name (empty set gives a do-nothing,
    always-patient process)."""
    events = sorted(events)
    name = "RUN_" + "_".join(events) if events else "RUN_empty"
    if name not in model.processes:
        ref = mk_ref(name)
        if events:
            body = mk_extchoice([mk_prefix(e, None, ref) for e in events])
        else:
            body = T.STOP
        model.define(name, body)
    return name
