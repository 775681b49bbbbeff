"""Conflict checking.

Two rules conflict when their parallel composition (synchronised on shared
events, sharing one memory cell per measure) can reach a state that refuses
every event — either outright (not even time can pass) or up to timing: the
state lets time pass forever but never engages in another event.

The search is a breadth-first walk over the composed process, so the first
witness found is a shortest one.  On a fully explored graph the verdict is
exact; if the bounds cut any edge, a non-violated outcome degrades to
inconclusive.
"""

from collections import deque

from ..semantics import conjunction
from ..tockcsp import TOCK, mk_ref
from .explore import ordered_successors, is_terminated
from .report import CheckReport, HOLDS, VIOLATED, INCONCLUSIVE


def _search(term, env, config):
    """Explore breadth-first looking for deadlocked states.

    Returns (outcome, witness, states, truncated) where outcome is one of
    "deadlock", "timed-deadlock", None.  A state counts as deadlocked when it
    offers nothing at all (termination excluded); as timed-deadlocked when
    its only behavior, now and forever, is letting time pass.  The latter is
    decided on the completed graph by backward reachability, except for the
    immediate case of a state whose single edge is a tock to itself.
    """
    ids = {term: 0}
    terms = [term]
    edges = [None]
    parent = {0: None}
    budget = {0: (0, 0)}
    truncated = False
    queue = deque([0])

    def trace_to(sid):
        rev = []
        while parent[sid] is not None:
            sid, e = parent[sid]
            rev.append(e)
        rev.reverse()
        return rev

    while queue:
        sid = queue.popleft()
        t = terms[sid]
        succs = ordered_successors(t, env)
        if not succs:
            if not is_terminated(t, env):
                return "deadlock", trace_to(sid), len(terms), truncated
            edges[sid] = ()
            continue
        if len(succs) == 1 and succs[0][0] is TOCK and succs[0][1] is t:
            # Time passes but nothing else ever will.
            return "timed-deadlock", trace_to(sid), len(terms), truncated
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
                truncated = True
                continue
            known = s in ids
            if not known:
                if len(terms) >= config.state_limit:
                    truncated = True
                    continue
                s_id = len(terms)
                ids[s] = s_id
                terms.append(s)
                edges.append(None)
                parent[s_id] = (sid, e)
                budget[s_id] = cost
                queue.append(s_id)
            else:
                s_id = ids[s]
            kept.append((e, s_id))
        edges[sid] = tuple(kept)

    # No hard deadlock.  Look for states that can never again perform a
    # non-tock event: backward reachability from states with a non-tock edge.
    preds = [[] for _ in terms]
    seeds = deque()
    live = set()
    for sid in range(len(terms)):
        for (e, s2) in (edges[sid] or ()):
            preds[s2].append(sid)
            if e is not TOCK and sid not in live:
                live.add(sid)
                seeds.append(sid)
    while seeds:
        sid = seeds.popleft()
        for p in preds[sid]:
            if p not in live:
                live.add(p)
                seeds.append(p)
    if not truncated:
        for sid in range(len(terms)):
            if sid in live or edges[sid] == ():
                continue
            # Only tock edges out of it, and no live state reachable.
            return "timed-deadlock", trace_to(sid), len(terms), truncated
    return None, None, len(terms), truncated


def check_conflict(model, rule1, rule2, config, pinned=None):
    """Check a pair of rules for conflict; `pinned` fixes measure values to
    steer the search to a region of interest."""
    name = conjunction(model, rule1, rule2)
    env = model.build_env()
    if pinned:
        env = env.with_pinned(pinned)
    outcome, witness, states, truncated = _search(mk_ref(name), env, config)
    notes = []
    if pinned:
        notes.append("measures pinned: " +
                     ", ".join("%s=%s" % (m, _fmt_pin(v))
                               for m, v in sorted(pinned.items())))
    if outcome == "deadlock":
        verdict = VIOLATED
        notes.append("reached a state refusing all events, including tock")
    elif outcome == "timed-deadlock":
        verdict = VIOLATED
        notes.append("reached a state where only time can pass, forever")
    elif truncated:
        verdict = INCONCLUSIVE
        notes.append("no conflict found within the bounds")
    else:
        verdict = HOLDS
    return CheckReport(
        kind="conflict",
        rule_ids=(rule1, rule2),
        verdict=verdict,
        witness=tuple(witness) if witness is not None else None,
        states_explored=states,
        tocks_bound=config.max_tocks,
        depth_bound=config.max_depth,
        truncated=truncated,
        notes=notes,
    )


def _fmt_pin(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    if hasattr(v, "name"):
        return v.name
    return str(v)


def overlapping_pairs(wf, rule_ids=None):
    """Rule pairs whose event alphabets intersect — candidates worth
    checking for conflicts.  Pairs are ordered as declared."""
    from ..frontend.alphabets import alpha_events
    ids = rule_ids if rule_ids is not None else wf.rule_ids()
    alphas = {rid: set(alpha_events(wf.rule(rid))) for rid in ids}
    pairs = []
    for i, r1 in enumerate(ids):
        for r2 in ids[i + 1:]:
            if alphas[r1] & alphas[r2]:
                pairs.append((r1, r2))
    return pairs
