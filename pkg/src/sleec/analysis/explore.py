"""Bounded state-space exploration.

States are interned terms, so the graph is canonical by construction.
Successors are ordered deterministically: non-tock events first, sorted by
channel declaration index then value index, tock last.  Termination is
recorded as a terminal marker, not followed.

Bounds are per path: max_tocks tocks and max_depth non-tock events.  When an
edge would exceed them it is cut and the result is marked truncated; any
verdict that depends on unexplored behavior must then be reported as
inconclusive by the caller.
"""

from collections import deque

from ..errors import StateLimitExceeded
from ..tockcsp import TOCK, TERMINATION
from ..tockcsp.engine import transitions


def ordered_successors(term, env):
    """(event, successor) pairs in canonical order; termination excluded
    (query `is_terminated` for it)."""
    out = []
    tock = None
    for (e, s) in transitions(term, env):
        if e is TOCK:
            tock = (e, s)
        elif e is not TERMINATION:
            out.append((e, s))
    out.sort(key=lambda es: (env.channel_index(es[0].chan),
                             env.value_index(es[0].chan, es[0].value)))
    if tock is not None:
        out.append(tock)
    return out


def is_terminated(term, env):
    return any(e is TERMINATION for (e, _s) in transitions(term, env))


class Lts:
    """An explored (possibly truncated) transition graph."""

    def __init__(self, initial_term):
        self.terms = [initial_term]
        self.ids = {initial_term: 0}
        self.edges = [None]  # state id -> tuple of (event, succ id)
        self.terminated = set()
        self.cut = set()  # states with unexplored behavior beyond the bounds
        self.truncated = False
        self.parent = {0: None}  # state id -> (pred id, event)

    @property
    def states_explored(self):
        return len(self.terms)

    def term(self, sid):
        return self.terms[sid]

    def successors(self, sid):
        return self.edges[sid] or ()

    def intern(self, term):
        sid = self.ids.get(term)
        if sid is None:
            sid = len(self.terms)
            self.ids[term] = sid
            self.terms.append(term)
            self.edges.append(None)
        return sid

    def trace_to(self, sid):
        """Events along the BFS tree path from the initial state."""
        rev = []
        while True:
            p = self.parent[sid]
            if p is None:
                break
            sid, e = p[0], p[1]
            rev.append(e)
        rev.reverse()
        return rev


def explore(term, env, config):
    """Breadth-first bounded exploration from `term`; returns an Lts."""
    lts = Lts(term)
    budget = {0: (0, 0)}  # state id -> (tocks used, events used) at first visit
    queue = deque([0])
    while queue:
        sid = queue.popleft()
        if lts.edges[sid] is not None:
            continue
        t = lts.terms[sid]
        if is_terminated(t, env):
            lts.terminated.add(sid)
        succs = ordered_successors(t, env)
        tocks, depth = budget[sid]
        kept = []
        for (e, s) in succs:
            if e is TOCK:
                cost = (tocks + 1, depth)
                over = cost[0] > config.max_tocks
            else:
                cost = (tocks, depth + 1)
                over = cost[1] > config.max_depth
            if over:
                lts.truncated = True
                lts.cut.add(sid)
                continue
            known = s in lts.ids
            s_id = lts.intern(s)
            if len(lts.terms) > config.state_limit:
                raise StateLimitExceeded(config.state_limit, len(lts.terms))
            kept.append((e, s_id))
            if not known:
                budget[s_id] = cost
                lts.parent[s_id] = (sid, e)
                queue.append(s_id)
        lts.edges[sid] = tuple(kept)
    return lts


def nontock_reachable(lts):
    """State ids from which some non-tock event is still reachable (within
    the explored graph)."""
    preds = [[] for _ in lts.terms]
    seeds = deque()
    seeded = set()
    for sid in range(len(lts.terms)):
        for (e, s2) in lts.successors(sid):
            preds[s2].append(sid)
            if e is not TOCK and sid not in seeded:
                seeded.add(sid)
                seeds.append(sid)
    reach = set(seeds)
    while seeds:
        sid = seeds.popleft()
        for p in preds[sid]:
            if p not in reach:
                reach.add(p)
                seeds.append(p)
    return reach
