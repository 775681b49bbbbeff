"""Conformance checking of an agent model against a single rule.

The agent (system under verification) is a tock-CSP process.  It conforms to
a rule when every agent trace can be matched by a run of the rule process:
rule events and tocks must be accepted by some run, and the rule's measure
reads line up with the agent's evidence.  A read lines up in one of two
ways.  When the agent samples the channel at the instant the rule is
waiting on it, the two reads synchronise and the rule takes the agent's
value.  When the rule must get past a pending read to match an event or a
tock — the agent sampled earlier, or other services acted in between — the
read resolves silently to the agent's latest reading of that measure, or to
any value at all if the agent has never sampled it.  Reads the rule is not
waiting for, and channels outside the rule's alphabet, are unconstrained.

The walk is a product construction over (agent state, latest readings, set
of rule runs).  The run set steps strictly on rule events and tocks — if it
empties, the agent just did something no run of the rule permits — and
steps loosely on measure channels.  The agent is appended with Stop so that
termination quietly lets time pass.
"""

from collections import deque

from ..errors import ChannelMismatch
from ..tockcsp import TOCK, TERMINATION, STOP, mk_ref, mk_seq
from ..tockcsp.engine import transitions
from .explore import ordered_successors
from .report import CheckReport, HOLDS, VIOLATED, INCONCLUSIVE


def _check_channels(info, model_env, suv_env):
    for e in info.events:
        if e not in suv_env.channels:
            raise ChannelMismatch("agent does not declare event channel %r" % e)
        if suv_env.channels[e] is not None:
            raise ChannelMismatch("channel %r carries values in the agent "
                                  "but is a plain event in the rules" % e)
    for m in info.measures:
        if m not in suv_env.channels:
            raise ChannelMismatch("agent does not declare measure channel %r" % m)
        if suv_env.channels[m] != model_env.channels.get(m):
            raise ChannelMismatch("channel %r has a different value domain "
                                  "in the agent than in the rules" % m)


class _RuleSide:
    """Stepping for the set of live runs of the rule process."""

    def __init__(self, rule_id, env, measures):
        self.env = env
        self.midx = {m: i for i, m in enumerate(measures)}
        self.blank = (None,) * len(measures)
        self._ex = {}
        self.initial = frozenset((mk_ref(rule_id),))

    def _expand(self, term, latest):
        """Resolve pending measure reads against the agent's evidence.

        Returns the runs reachable from `term` by silently completing reads,
        each bound to the agent's latest reading when there is one.  `term`
        itself is always a member.
        """
        key = (term, latest)
        got = self._ex.get(key)
        if got is not None:
            return got
        out = {term}
        for (ev, succ) in transitions(term, self.env):
            if ev is TOCK or ev is TERMINATION:
                continue
            i = self.midx.get(ev.chan)
            if i is None:
                continue
            if latest[i] is None or ev.value == latest[i]:
                out |= self._expand(succ, latest)
        out = frozenset(out)
        self._ex[key] = out
        return out

    def after_tock(self, wset, latest):
        out = set()
        for r in wset:
            for r2 in self._expand(r, latest):
                for (ev, succ) in transitions(r2, self.env):
                    if ev is TOCK:
                        out.add(succ)
        return frozenset(out)

    def after_event(self, wset, event, latest):
        out = set()
        for r in wset:
            for r2 in self._expand(r, latest):
                for (ev, succ) in transitions(r2, self.env):
                    if ev == event:
                        out.add(succ)
        return frozenset(out)

    def after_measure(self, wset, event, latest):
        # The agent read a measure the rule knows about.  Runs waiting on
        # that channel (possibly behind other pending reads) may take the
        # value; every run also keeps its state, since the read may belong
        # to another of the agent's services and the rule may prefer to
        # pair a later one.
        out = set(wset)
        for r in wset:
            for r2 in self._expand(r, latest):
                for (ev, succ) in transitions(r2, self.env):
                    if ev == event:
                        out.add(succ)
        return frozenset(out)


def check_conformance(model, rule_id, suv_env, suv_name, config):
    """Does the agent process `suv_name` (in `suv_env`) conform to the rule?"""
    info = model.rules[rule_id]
    rule_env = model.build_env()
    _check_channels(info, rule_env, suv_env)

    events = frozenset(info.events)
    measures = list(info.measures)
    midx = {m: i for i, m in enumerate(measures)}
    rside = _RuleSide(rule_id, rule_env, measures)

    suv0 = mk_seq(mk_ref(suv_name), STOP)
    init = (suv0, rside.blank, rside.initial)
    ids = {init: 0}
    states = [init]
    parent = {0: None}
    budget = {0: (0, 0)}
    queue = deque([0])
    truncated = False

    def trace_to(sid):
        rev = []
        while parent[sid] is not None:
            sid, e = parent[sid]
            rev.append(e)
        rev.reverse()
        return rev

    while queue:
        sid = queue.popleft()
        term, latest, wset = states[sid]
        tocks, depth = budget[sid]
        for (e, succ) in ordered_successors(term, suv_env):
            if e is TOCK:
                cost = (tocks + 1, depth)
                over = cost[0] > config.max_tocks
            else:
                cost = (tocks, depth + 1)
                over = cost[1] > config.max_depth
            if over:
                truncated = True
                continue
            if e is TOCK:
                w2 = rside.after_tock(wset, latest)
                if not w2:
                    witness = tuple(trace_to(sid)) + (e,)
                    return _report(rule_id, VIOLATED, witness, len(states),
                                   config, truncated,
                                   ["the rule requires an event before more "
                                    "time may pass"])
                nxt = (succ, latest, w2)
            elif e.chan in events:
                w2 = rside.after_event(wset, e, latest)
                if not w2:
                    witness = tuple(trace_to(sid)) + (e,)
                    return _report(rule_id, VIOLATED, witness, len(states),
                                   config, truncated,
                                   ["no run of the rule admits this event "
                                    "here with the agent's readings"])
                nxt = (succ, latest, w2)
            elif e.chan in midx:
                i = midx[e.chan]
                w2 = rside.after_measure(wset, e, latest)
                nxt = (succ, latest[:i] + (e.value,) + latest[i + 1:], w2)
            else:
                nxt = (succ, latest, wset)
            known = ids.get(nxt)
            if known is None:
                if len(states) >= config.state_limit:
                    truncated = True
                    continue
                known = len(states)
                ids[nxt] = known
                states.append(nxt)
                parent[known] = (sid, e)
                budget[known] = cost
                queue.append(known)
        # termination of the agent is absorbed by the trailing Stop

    verdict = INCONCLUSIVE if truncated else HOLDS
    notes = ["agent explored within the bounds"] if truncated else []
    return _report(rule_id, verdict, None, len(states), config, truncated, notes)


def _report(rule_id, verdict, witness, states, config, truncated, notes):
    return CheckReport(
        kind="conformance",
        rule_ids=(rule_id,),
        verdict=verdict,
        witness=witness,
        states_explored=states,
        tocks_bound=config.max_tocks,
        depth_bound=config.max_depth,
        truncated=truncated,
        notes=notes,
    )
