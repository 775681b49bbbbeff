"""Operational semantics: compute the outgoing transitions of a term.

Conventions:

* time passes via the distinguished TOCK event; prefixes are patient (they
  tock in place), termination and expired deadlines refuse tock;
* termination is the TERMINATION pseudo-event; exploration treats it as a
  terminal marker rather than following it;
* transitions are tau-free: hiding splices the closure of hidden moves, and
  references expand transparently.
"""

from ..errors import SleecError, UnguardedRecursion
from . import terms as T
from .terms import SKIP, STOP, TERMINATION, TOCK, Comm


def transitions(t, env):
    """All (event, successor) pairs of `t`, memoized per environment."""
    got = env._trans.get(t)
    if got is not None:
        return got
    try:
        out = _compute(t, env)
    except RecursionError:
        raise UnguardedRecursion(
            "reference expansion does not terminate at %r" % t.kind
        )
    env._trans[t] = out
    return out


def initials(t, env):
    """The set of events `t` can perform first."""
    return {e for (e, _s) in transitions(t, env)}


def step(t, event, env):
    """The first successor of `t` under `event`, or None if refused."""
    for (e, s) in transitions(t, env):
        if e == event:
            return s
    return None


def _dedup(pairs):
    seen = set()
    out = []
    for p in pairs:
        k = (p[0], p[1].uid if p[1] is not None else None)
        if k not in seen:
            seen.add(k)
            out.append(p)
    return tuple(out)


def _compute(t, env):
    k = t.kind
    if k == "skip":
        return ((TERMINATION, STOP),)
    if k == "stop":
        return ((TOCK, t),)
    if k == "wait":
        return ((TOCK, T.mk_wait(t.d - 1)),)
    if k == "prefix":
        return ((Comm(t.chan, t.value), t.cont), (TOCK, t))
    if k == "output":
        value = T.eval_expr(t.expr)
        return ((Comm(t.chan, value), t.cont), (TOCK, t))
    if k == "input":
        dom = t.restr if t.restr is not None else env.domain(t.chan)
        if dom is None:
            raise SleecError("input on channel %r, which carries no value" % t.chan)
        pin = env.pinned.get(t.chan)
        if pin is not None:
            dom = tuple(v for v in dom if v == pin)
        out = [(Comm(t.chan, v), T.tsubst(t.cont, t.var, v)) for v in dom]
        out.append((TOCK, t))
        return tuple(out)
    if k == "if":
        branch = t.then_p if T.eval_expr(t.cond) else t.else_p
        return transitions(branch, env)
    if k == "extchoice":
        out = []
        tock_succs = []
        all_tock = True
        for b in t.branches:
            got_tock = False
            for (e, s) in transitions(b, env):
                if e is TOCK:
                    got_tock = True
                    tock_succs.append(s)
                else:
                    out.append((e, s))
            if not got_tock:
                all_tock = False
        if all_tock:
            out.append((TOCK, T.mk_extchoice(tock_succs)))
        return _dedup(out)
    if k == "seq":
        out = []
        for (e, s) in transitions(t.p, env):
            if e is TERMINATION:
                out.extend(transitions(t.q, env))
            elif e is TOCK:
                out.append((TOCK, T.mk_seq(s, t.q)))
            else:
                out.append((e, T.mk_seq(s, t.q)))
        return _dedup(out)
    if k == "hide":
        return _hide_transitions(t, env)
    if k == "interleave":
        return _par_transitions(t, env, sync=frozenset(), interleaved=True)
    if k == "genpar":
        return _par_transitions(t, env, sync=t.sync, interleaved=False)
    if k == "interrupt":
        out = []
        p_tock = None
        q_tock = None
        for (e, s) in transitions(t.p, env):
            if e is TOCK:
                p_tock = s
            elif e is TERMINATION:
                out.append((TERMINATION, STOP))
            else:
                out.append((e, T.mk_interrupt(s, t.q)))
        for (e, s) in transitions(t.q, env):
            if e is TOCK:
                q_tock = s
            elif e is TERMINATION:
                out.append((TERMINATION, STOP))
            else:
                out.append((e, s))
        if p_tock is not None and q_tock is not None:
            out.append((TOCK, T.mk_interrupt(p_tock, q_tock)))
        return _dedup(out)
    if k == "timedinterrupt":
        out = []
        for (e, s) in transitions(t.p, env):
            if e is TOCK:
                out.append((TOCK, T.mk_timed_interrupt(s, t.d - 1, t.q)))
            elif e is TERMINATION:
                out.append((TERMINATION, STOP))
            else:
                out.append((e, T.mk_timed_interrupt(s, t.d, t.q)))
        return _dedup(out)
    if k == "deadline":
        out = []
        for (e, s) in transitions(t.p, env):
            if e is TOCK:
                if t.d > 0:
                    out.append((TOCK, T.mk_deadline(t.d - 1, s)))
            elif e is TERMINATION:
                out.append((TERMINATION, STOP))
            else:
                out.append((e, s))  # the first visible event discharges it
        return _dedup(out)
    if k == "ref":
        args = tuple(T.eval_expr(a) for a in t.args)
        return transitions(env.expand(t.name, args), env)
    raise TypeError("no transition rule for %r" % k)


def _par_transitions(t, env, sync, interleaved):
    mk = (lambda p, q: T.mk_interleave(p, q)) if interleaved else (
        lambda p, q: T.mk_genpar(p, sync, q)
    )
    pt = transitions(t.p, env)
    qt = transitions(t.q, env)
    out = []
    p_tock = q_tock = None
    p_term = q_term = False
    q_synced = {}
    for (e, s) in qt:
        if e is TOCK:
            q_tock = s
        elif e is TERMINATION:
            q_term = True
        elif e.chan in sync:
            q_synced.setdefault(e, []).append(s)
        else:
            out.append((e, mk(t.p, s)))
    for (e, s) in pt:
        if e is TOCK:
            p_tock = s
        elif e is TERMINATION:
            p_term = True
        elif e.chan in sync:
            for qs in q_synced.get(e, ()):
                out.append((e, mk(s, qs)))
        else:
            out.append((e, mk(s, t.q)))
    if p_tock is not None and q_tock is not None:
        out.append((TOCK, mk(p_tock, q_tock)))
    if p_term and q_term:
        out.append((TERMINATION, STOP))
    return _dedup(out)


def _hide_transitions(t, env):
    """Splice out hidden events: visible moves of every state reachable via
    hidden events, plus tock only from states with no hidden move available
    (hidden events are urgent)."""
    chans = t.chans
    closure = []
    seen = set()
    stack = [t.p]
    while stack:
        s = stack.pop()
        if s.uid in seen:
            continue
        seen.add(s.uid)
        closure.append(s)
        for (e, s2) in transitions(s, env):
            if e is not TOCK and e is not TERMINATION and e.chan in chans:
                stack.append(s2)
    out = []
    for s in closure:
        ts = transitions(s, env)
        stable = not any(
            e is not TOCK and e is not TERMINATION and e.chan in chans for (e, _s2) in ts
        )
        for (e, s2) in ts:
            if e is TOCK:
                if stable:
                    out.append((TOCK, T.mk_hide(s2, chans)))
            elif e is TERMINATION:
                out.append((TERMINATION, STOP))
            elif e.chan not in chans:
                out.append((e, T.mk_hide(s2, chans)))
    return _dedup(out)
