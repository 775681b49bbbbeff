"""Redundancy checking.

Rule r1 is redundant with respect to r2 when conjoining r1 to r2 removes no
behavior: every trace of r2 (padded with the events only r1 knows, so both
sides range over the same alphabet) is still a trace of the conjunction,
once both are projected to rule events plus tock.

Measure reads are hidden by the projection, so the comparison runs once per
valuation of the measures involved, with reads pinned to that valuation on
both sides.  Each side is determinized by subset construction and the
inclusion is a product walk; a missing word is turned back into a concrete,
replayable trace of the padded process.
"""

from collections import deque
from itertools import product

from ..semantics import conjunction, ensure_run
from ..tockcsp import TOCK, mk_interleave, mk_ref
from .explore import explore
from .report import CheckReport, HOLDS, VIOLATED, INCONCLUSIVE, SKIPPED
from .traces import fmt_trace


def _eps_closure(lts, seed, keep):
    todo = list(seed)
    seen = set(seed)
    while todo:
        sid = todo.pop()
        for (e, s2) in lts.successors(sid):
            if e is TOCK or e.chan in keep:
                continue
            if s2 not in seen:
                seen.add(s2)
                todo.append(s2)
    return frozenset(seen)


def determinize(lts, keep):
    """Subset construction over the kept symbols (tock always kept).
    Returns {subset: {symbol: subset}}."""
    start = _eps_closure(lts, (0,), keep)
    dfa = {}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur in dfa:
            continue
        moves = {}
        for sid in cur:
            for (e, s2) in lts.successors(sid):
                if e is not TOCK and e.chan not in keep:
                    continue
                moves.setdefault(e, set()).add(s2)
        out = {}
        for sym, targets in moves.items():
            nxt = _eps_closure(lts, targets, keep)
            out[sym] = nxt
            if nxt not in dfa:
                queue.append(nxt)
        dfa[cur] = out
    return dfa, start


def _symbol_key(env):
    def key(sym):
        if sym is TOCK:
            return (1, 0, 0)
        return (0, env.channel_index(sym.chan), env.value_index(sym.chan, sym.value))
    return key


def missing_word(dfa1, start1, dfa2, start2, sym_key):
    """Shortest word accepted by dfa1 but not dfa2 (None when included)."""
    queue = deque([(start1, start2, ())])
    seen = {(start1, start2)}
    while queue:
        s1, s2, path = queue.popleft()
        for sym in sorted(dfa1[s1], key=sym_key):
            t1 = dfa1[s1][sym]
            t2 = dfa2[s2].get(sym)
            if t2 is None:
                return path + (sym,)
            if (t1, t2) not in seen:
                seen.add((t1, t2))
                queue.append((t1, t2, path + (sym,)))
    return None


def realize(lts, keep, word):
    """A concrete trace of the explored process whose projection to the kept
    symbols is `word` (shortest, BFS)."""
    queue = deque([(0, 0)])
    parent = {(0, 0): None}
    while queue:
        sid, pos = queue.popleft()
        if pos == len(word):
            rev = []
            key = (sid, pos)
            while parent[key] is not None:
                key, e = parent[key]
                rev.append(e)
            rev.reverse()
            return tuple(rev)
        for (e, s2) in lts.successors(sid):
            if e is TOCK or e.chan in keep:
                if e != word[pos]:
                    continue
                nxt = (s2, pos + 1)
            else:
                nxt = (s2, pos)
            if nxt not in parent:
                parent[nxt] = ((sid, pos), e)
                queue.append(nxt)
    return None


def check_redundancy(model, rule1, rule2, config):
    """Is rule1 redundant with respect to rule2?"""
    info1 = model.rules[rule1]
    info2 = model.rules[rule2]
    keep = set(info1.events) | set(info2.events)
    pad = [e for e in info1.events if e not in info2.events]
    conj_name = conjunction(model, rule1, rule2)
    if pad:
        run_name = ensure_run(model, pad)
        ext = mk_interleave(mk_ref(rule2), mk_ref(run_name))
    else:
        ext = mk_ref(rule2)
    conj = mk_ref(conj_name)

    measures = list(info1.measures)
    for m in info2.measures:
        if m not in measures:
            measures.append(m)
    env0 = model.build_env()
    domains = [env0.domain(m) for m in measures]
    sym_key = _symbol_key(env0)

    states = 0
    truncated = False
    for vals in product(*domains):
        pin = dict(zip(measures, vals))
        envp = env0.with_pinned(pin) if pin else env0
        lts_ext = explore(ext, envp, config)
        lts_conj = explore(conj, envp, config)
        states += lts_ext.states_explored + lts_conj.states_explored
        if lts_ext.truncated or lts_conj.truncated:
            truncated = True
            continue
        dfa1, start1 = determinize(lts_ext, keep)
        dfa2, start2 = determinize(lts_conj, keep)
        word = missing_word(dfa1, start1, dfa2, start2, sym_key)
        if word is not None:
            witness = realize(lts_ext, keep, word)
            notes = ["a trace of %s alone is lost in the conjunction" % rule2,
                     "projected counterexample: " + fmt_trace(word)]
            if pin:
                notes.append("valuation: " + _fmt_valuation(pin, measures))
            return CheckReport(
                kind="redundancy",
                rule_ids=(rule1, rule2),
                verdict=VIOLATED,
                witness=witness,
                states_explored=states,
                tocks_bound=config.max_tocks,
                depth_bound=config.max_depth,
                truncated=truncated,
                notes=notes,
            )
    verdict = INCONCLUSIVE if truncated else HOLDS
    notes = []
    if truncated:
        notes.append("some valuations not fully explored within the bounds")
    return CheckReport(
        kind="redundancy",
        rule_ids=(rule1, rule2),
        verdict=verdict,
        states_explored=states,
        tocks_bound=config.max_tocks,
        depth_bound=config.max_depth,
        truncated=truncated,
        notes=notes,
    )


def _fmt_valuation(pin, order):
    parts = []
    for m in order:
        v = pin[m]
        if v is True:
            s = "true"
        elif v is False:
            s = "false"
        elif hasattr(v, "name"):
            s = v.name
        else:
            s = str(v)
        parts.append("%s=%s" % (m, s))
    return ", ".join(parts)


def redundancy_with_prechecks(model, rule1, rule2, config):
    """The redundancy check as run from the command line: conflicting pairs
    and pairs sharing no events are skipped with a note."""
    from .conflict import check_conflict
    info1 = model.rules[rule1]
    info2 = model.rules[rule2]
    if not (set(info1.events) & set(info2.events)):
        return CheckReport(
            kind="redundancy", rule_ids=(rule1, rule2), verdict=SKIPPED,
            notes=["rules share no events; redundancy not meaningful"])
    pre = check_conflict(model, rule1, rule2, config)
    if pre.verdict == VIOLATED:
        return CheckReport(
            kind="redundancy", rule_ids=(rule1, rule2), verdict=SKIPPED,
            states_explored=pre.states_explored,
            notes=["rules conflict; resolve the conflict before asking about redundancy"])
    return check_redundancy(model, rule1, rule2, config)
