"""Well-formedness linter for emitted scripts.

Checks, in order: balanced brackets outside comments; declaration shape and
duplicates; then a full re-parse of the channel declarations and process
equations through the script reader, followed by a term walk verifying that
every referenced channel is declared, every process reference is defined,
and no equation body has free variables beyond its parameters.  Scale
comparator definitions are validated structurally (they are plain Boolean
functions, not processes).
"""

import re

from ..errors import SleecError
from ..tockcsp.tcsp_parser import parse_tcsp

_CHANNEL = re.compile(r"^channel\s+(\w+)\s*(?::?\s*(.*))?$")
_DATATYPE = re.compile(r"^datatype\s+(\w+)\s*=\s*(.+)$")
_CONSTANT = re.compile(r"^(\w+)\s*=\s*(-?\d+)\s*$")
_COMPARATOR = re.compile(r"^(STle\w+)\((\w+),(\w+)\)\s*=\s*(.+)$")
_PROCESS = re.compile(r"^(\w+)(\(([\w,\s]*)\))?\s*=\s*(.+)$")
_ASSERT = re.compile(r"^assert\s+(\w+)\s*(:\[deadlock free\]|\[T=\s*(\w+))\s*$")


def _strip_comment(line):
    i = line.find("--")
    return line[:i] if i >= 0 else line


def lint(text):
    """Return a list of problems (empty when the script is clean)."""
    problems = []

    # bracket balance over the comment-stripped text
    depth = {"(": 0, "{": 0}
    close = {")": "(", "}": "{"}
    for ln, raw in enumerate(text.splitlines(), 1):
        for ch in _strip_comment(raw):
            if ch in depth:
                depth[ch] += 1
            elif ch in close:
                depth[close[ch]] -= 1
                if depth[close[ch]] < 0:
                    problems.append("line %d: unbalanced %r" % (ln, ch))
                    depth[close[ch]] = 0
    for b, d in depth.items():
        if d > 0:
            problems.append("unclosed %r" % b)

    channels = {}   # name -> rebuilt declaration line
    datatypes = {}  # datatype name -> literals
    comparators = {}
    constants = {}
    equations = []  # (name, raw line)
    asserts = []
    scale_channels = {}  # channel -> datatype name

    for ln, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        m = _CHANNEL.match(line)
        if m:
            name, ty = m.group(1), (m.group(2) or "").strip()
            if name in channels:
                problems.append("line %d: channel %r declared twice" % (ln, name))
            if ty.startswith("ST"):
                scale_channels[name] = ty
                channels[name] = None  # completed once datatypes are known
            elif ty:
                channels[name] = "channel %s : %s" % (name, ty)
            else:
                channels[name] = "channel %s" % name
            continue
        m = _DATATYPE.match(line)
        if m:
            name = m.group(1)
            lits = [l.strip() for l in m.group(2).split("|")]
            if name in datatypes:
                problems.append("line %d: datatype %r declared twice" % (ln, name))
            if len(set(lits)) != len(lits):
                problems.append("line %d: datatype %r repeats a literal" % (ln, name))
            datatypes[name] = lits
            continue
        m = _COMPARATOR.match(line)
        if m:
            comparators[m.group(1)] = (m.group(2), m.group(3), m.group(4))
            continue
        m = _ASSERT.match(line)
        if m:
            asserts.append((ln, m.group(1), m.group(3)))
            continue
        m = _CONSTANT.match(line)
        if m:
            if m.group(1) in constants:
                problems.append("line %d: constant %r defined twice" % (ln, m.group(1)))
            constants[m.group(1)] = int(m.group(2))
            continue
        m = _PROCESS.match(line)
        if m:
            equations.append((ln, m.group(1), line))
            continue
        problems.append("line %d: unrecognized declaration: %s" % (ln, line))

    for chan, ty in scale_channels.items():
        lits = datatypes.get(ty)
        if lits is None:
            problems.append("channel %r uses undeclared datatype %r" % (chan, ty))
        else:
            channels[chan] = "channel %s : {%s}" % (chan, ", ".join(lits))
            mname = chan
            if ("STle" + mname) not in comparators:
                problems.append("scale %r has no order comparator" % chan)

    seen_eq = set()
    for (ln, name, _line) in equations:
        if name in seen_eq:
            problems.append("line %d: process %r defined twice" % (ln, name))
        seen_eq.add(name)

    if problems:
        return problems

    src = [decl for decl in channels.values() if decl is not None]
    src += [line for (_ln, _n, line) in equations]
    try:
        env, _first = parse_tcsp("\n".join(src) + "\n")
    except SleecError as err:
        problems.append("re-parse failed: %s" % err)
        return problems

    for name, (params, body) in env.equations.items():
        free = body.fv - set(params)
        if free:
            problems.append("process %r has free variables %s"
                            % (name, ", ".join(sorted(free))))
        _walk(body, env, name, problems)

    defined = set(env.equations)
    for (ln, lhs, rhs) in asserts:
        if lhs not in defined:
            problems.append("line %d: assertion names unknown process %r" % (ln, lhs))
        if rhs is not None and rhs not in defined:
            problems.append("line %d: assertion names unknown process %r" % (ln, rhs))
    return problems


def _walk(t, env, where, problems, seen=None):
    if seen is None:
        seen = set()
    if id(t) in seen:
        return
    seen.add(id(t))
    k = t.kind
    if k in ("prefix", "output", "input"):
        if t.chan not in env.channels:
            problems.append("process %r uses undeclared channel %r" % (where, t.chan))
    elif k == "ref":
        if t.name not in env.equations:
            problems.append("process %r refers to undefined process %r" % (where, t.name))
    elif k == "hide":
        for c in t.chans:
            if c not in env.channels:
                problems.append("process %r hides undeclared channel %r" % (where, c))
    elif k == "genpar":
        for c in t.sync:
            if c not in env.channels:
                problems.append("process %r syncs on undeclared channel %r" % (where, c))
    for sub in _children(t):
        _walk(sub, env, where, problems, seen)


def _children(t):
    k = t.kind
    if k in ("prefix", "output", "input"):
        return (t.cont,)
    if k == "if":
        return (t.then_p, t.else_p)
    if k == "extchoice":
        return t.branches
    if k in ("seq", "interleave", "genpar", "interrupt", "timedinterrupt"):
        return (t.p, t.q)
    if k in ("deadline", "hide"):
        return (t.p,)
    return ()
