"""Textual rendering of process terms and expressions.

The output uses the same surface syntax the tcsp parser reads (and that the
script emitter writes), so a rendered equation can be parsed back.
"""

from . import terms as T


def fmt_value(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, T.SVal):
        return v.name
    return str(v)


def fmt_expr(e):
    return _expr(e, 0)


# expression precedence: or(1) < and(2) < not(3) < cmp(4) < atom(5)


def _expr(e, level):
    if isinstance(e, T.ELit):
        return fmt_value(e.value)
    if isinstance(e, T.EVar):
        return e.name
    if isinstance(e, T.ECmp):
        s = "%s %s %s" % (_expr(e.left, 5), e.op, _expr(e.right, 5))
        return "(%s)" % s if level > 4 else s
    if isinstance(e, T.EScaleLe):
        return "STle%s(%s, %s)" % (e.scale, _expr(e.left, 0), _expr(e.right, 0))
    if isinstance(e, T.ENot):
        return "not %s" % _expr(e.operand, 5)
    if isinstance(e, T.EAnd):
        s = "%s and %s" % (_expr(e.left, 3), _expr(e.right, 3))
        return "(%s)" % s if level > 2 else s
    if isinstance(e, T.EOr):
        s = "%s or %s" % (_expr(e.left, 2), _expr(e.right, 2))
        return "(%s)" % s if level > 1 else s
    raise TypeError("not an expression: %r" % (e,))


# term "precedence" classes, loosest first
_PREC = {
    "hide": 5,
    "genpar": 4,
    "interleave": 4,
    "if": 4,
    "extchoice": 3,
    "interrupt": 3,
    "timedinterrupt": 3,
    "seq": 2,
    "prefix": 1,
    "output": 1,
    "input": 1,
    "deadline": 1,
    "skip": 0,
    "stop": 0,
    "wait": 0,
    "ref": 0,
}


def _wrap(t, text, max_prec, same=None):
    p = _PREC[t.kind]
    if p > max_prec or (p == max_prec and same is not None and t.kind != same):
        return "(%s)" % text
    return text


def _disp(t, max_prec, same=None):
    return _wrap(t, display(t), max_prec, same)


def display(t):
    k = t.kind
    if k == "skip":
        return "SKIP"
    if k == "stop":
        return "STOP"
    if k == "wait":
        return "WAIT(%d)" % t.d
    if k == "ref":
        if t.args:
            return "%s(%s)" % (t.name, ", ".join(_expr(a, 0) for a in t.args))
        return t.name
    if k == "prefix":
        ev = t.chan if t.value is None else "%s.%s" % (t.chan, fmt_value(t.value))
        return "%s -> %s" % (ev, _disp(t.cont, 1))
    if k == "output":
        return "%s!%s -> %s" % (t.chan, _expr(t.expr, 5), _disp(t.cont, 1))
    if k == "input":
        if t.restr is not None:
            vals = ", ".join(fmt_value(v) for v in t.restr)
            return "%s?%s:{%s} -> %s" % (t.chan, t.var, vals, _disp(t.cont, 1))
        return "%s?%s -> %s" % (t.chan, t.var, _disp(t.cont, 1))
    if k == "deadline":
        return "%d <| %s" % (t.d, _disp(t.p, 0))
    if k == "if":
        return "if %s then %s else %s" % (
            fmt_expr(t.cond),
            _disp(t.then_p, 1),
            _disp(t.else_p, 1),
        )
    if k == "extchoice":
        return " [] ".join(_disp(b, 3, "extchoice") for b in t.branches)
    if k == "seq":
        return "%s ; %s" % (_disp(t.p, 2, "seq"), _disp(t.q, 1))
    if k == "hide":
        return "%s \\ {%s}" % (_disp(t.p, 4), ", ".join(sorted(t.chans)))
    if k == "interleave":
        return "%s ||| %s" % (_disp(t.p, 4, "interleave"), _disp(t.q, 3))
    if k == "genpar":
        return "%s [| {%s} |] %s" % (
            _disp(t.p, 3),
            ", ".join(sorted(t.sync)),
            _disp(t.q, 3),
        )
    if k == "interrupt":
        return "%s /\\ %s" % (_disp(t.p, 3, "interrupt"), _disp(t.q, 2))
    if k == "timedinterrupt":
        return "%s [> %d > %s" % (_disp(t.p, 2), t.d, _disp(t.q, 2))
    raise TypeError("not a process term: %r" % (t,))
