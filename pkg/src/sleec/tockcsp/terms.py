"""Process terms for a discrete-time CSP dialect.

Terms are hash-consed: the mk_* constructors intern every node, so structural
equality is identity (`is`) and a term doubles as its own canonical state id
during exploration.  Constructors also apply a few behavior-preserving
normalizations (Wait(0) = Skip, Seq(Skip, q) = q, timed interrupt with an
expired budget collapses to its handler, closed output prefixes become plain
prefixes, nested external choices flatten and deduplicate).

Values carried on channels are ints, bools, or scale points (SVal).
"""

from dataclasses import dataclass

from ..errors import SleecError

# --- events -----------------------------------------------------------------


class _Tock:
    __slots__ = ()

    def __repr__(self):
        return "tock"


class _Termination:
    __slots__ = ()

    def __repr__(self):
        return "tick"


TOCK = _Tock()
TERMINATION = _Termination()


@dataclass(frozen=True)
class SVal:
    """One point of an ordered scale."""

    scale: str
    name: str
    index: int

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Comm:
    """A visible communication: channel name plus optional value."""

    chan: str
    value: object = None

    def __repr__(self):
        if self.value is None:
            return self.chan
        v = self.value
        if v is True:
            v = "true"
        elif v is False:
            v = "false"
        return "%s.%s" % (self.chan, v)


# --- expressions -------------------------------------------------------------

_EMPTY = frozenset()


@dataclass(frozen=True)
class ELit:
    value: object

    @property
    def fv(self):
        return _EMPTY


@dataclass(frozen=True)
class EVar:
    name: str

    @property
    def fv(self):
        return frozenset((self.name,))


@dataclass(frozen=True)
class ECmp:
    op: str  # == != < <= > >=
    left: object
    right: object

    @property
    def fv(self):
        return self.left.fv | self.right.fv


@dataclass(frozen=True)
class EScaleLe:
    """Order test on two values of the same scale (by declared position)."""

    scale: str
    left: object
    right: object

    @property
    def fv(self):
        return self.left.fv | self.right.fv


@dataclass(frozen=True)
class ENot:
    operand: object

    @property
    def fv(self):
        return self.operand.fv


@dataclass(frozen=True)
class EAnd:
    left: object
    right: object

    @property
    def fv(self):
        return self.left.fv | self.right.fv


@dataclass(frozen=True)
class EOr:
    left: object
    right: object

    @property
    def fv(self):
        return self.left.fv | self.right.fv


_CMP_FUNCS = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def eval_expr(e):
    """Evaluate a closed expression to a python value."""
    if isinstance(e, ELit):
        return e.value
    if isinstance(e, EVar):
        raise SleecError("unbound process variable %r" % e.name)
    if isinstance(e, ECmp):
        l, r = eval_expr(e.left), eval_expr(e.right)
        if isinstance(l, SVal) != isinstance(r, SVal):
            raise SleecError("comparing a scale point with %r" % (r,))
        if isinstance(l, SVal):
            l, r = l.index, r.index
        return _CMP_FUNCS[e.op](l, r)
    if isinstance(e, EScaleLe):
        l, r = eval_expr(e.left), eval_expr(e.right)
        return l.index <= r.index
    if isinstance(e, ENot):
        return not eval_expr(e.operand)
    if isinstance(e, EAnd):
        return eval_expr(e.left) and eval_expr(e.right)
    if isinstance(e, EOr):
        return eval_expr(e.left) or eval_expr(e.right)
    raise TypeError("not an expression: %r" % (e,))


def esubst(e, var, value):
    """Substitute `value` for the free variable `var` in expression `e`."""
    if var not in e.fv:
        return e
    if isinstance(e, EVar):
        return ELit(value)
    if isinstance(e, ECmp):
        return ECmp(e.op, esubst(e.left, var, value), esubst(e.right, var, value))
    if isinstance(e, EScaleLe):
        return EScaleLe(e.scale, esubst(e.left, var, value), esubst(e.right, var, value))
    if isinstance(e, ENot):
        return ENot(esubst(e.operand, var, value))
    if isinstance(e, EAnd):
        return EAnd(esubst(e.left, var, value), esubst(e.right, var, value))
    if isinstance(e, EOr):
        return EOr(esubst(e.left, var, value), esubst(e.right, var, value))
    raise TypeError("not an expression: %r" % (e,))


# --- terms --------------------------------------------------------------------


class ProcTerm:
    __slots__ = ("uid", "fv")
    kind = "?"

    def __repr__(self):
        from .display import display  # local import to keep this module standalone

        return display(self)


class SkipT(ProcTerm):
    __slots__ = ()
    kind = "skip"


class StopT(ProcTerm):
    __slots__ = ()
    kind = "stop"


class WaitT(ProcTerm):
    __slots__ = ("d",)
    kind = "wait"


class PrefixT(ProcTerm):
    __slots__ = ("chan", "value", "cont")
    kind = "prefix"


class OutputT(ProcTerm):
    __slots__ = ("chan", "expr", "cont")
    kind = "output"


class InputT(ProcTerm):
    __slots__ = ("chan", "var", "restr", "cont")
    kind = "input"


class IfT(ProcTerm):
    __slots__ = ("cond", "then_p", "else_p")
    kind = "if"


class ExtChoiceT(ProcTerm):
    __slots__ = ("branches",)
    kind = "extchoice"


class SeqT(ProcTerm):
    __slots__ = ("p", "q")
    kind = "seq"


class HideT(ProcTerm):
    __slots__ = ("p", "chans")
    kind = "hide"


class InterleaveT(ProcTerm):
    __slots__ = ("p", "q")
    kind = "interleave"


class GenParT(ProcTerm):
    __slots__ = ("p", "sync", "q")
    kind = "genpar"


class InterruptT(ProcTerm):
    __slots__ = ("p", "q")
    kind = "interrupt"


class TimedInterruptT(ProcTerm):
    __slots__ = ("p", "d", "q")
    kind = "timedinterrupt"


class DeadlineT(ProcTerm):
    __slots__ = ("d", "p")
    kind = "deadline"


class RefT(ProcTerm):
    __slots__ = ("name", "args")
    kind = "ref"


_table = {}
_next_uid = [0]


def _intern(cls, key, build):
    got = _table.get(key)
    if got is not None:
        return got
    t = cls.__new__(cls)
    build(t)
    t.uid = _next_uid[0]
    _next_uid[0] += 1
    _table[key] = t
    return t


def mk_skip():
    return _intern(SkipT, ("skip",), lambda t: setattr(t, "fv", _EMPTY))


def mk_stop():
    return _intern(StopT, ("stop",), lambda t: setattr(t, "fv", _EMPTY))


SKIP = mk_skip()
STOP = mk_stop()


def mk_wait(d):
    if d < 0:
        raise ValueError("negative wait: %d" % d)
    if d == 0:
        return SKIP

    def build(t):
        t.d = d
        t.fv = _EMPTY

    return _intern(WaitT, ("wait", d), build)


def mk_prefix(chan, value, cont):
    def build(t):
        t.chan = chan
        t.value = value
        t.cont = cont
        t.fv = cont.fv

    return _intern(PrefixT, ("prefix", chan, value, cont), build)


def mk_output(chan, expr, cont):
    if not expr.fv:
        return mk_prefix(chan, eval_expr(expr), cont)

    def build(t):
        t.chan = chan
        t.expr = expr
        t.cont = cont
        t.fv = expr.fv | cont.fv

    return _intern(OutputT, ("output", chan, expr, cont), build)


def mk_input(chan, var, restr, cont):
    restr = tuple(restr) if restr is not None else None

    def build(t):
        t.chan = chan
        t.var = var
        t.restr = restr
        t.cont = cont
        t.fv = cont.fv - {var}

    return _intern(InputT, ("input", chan, var, restr, cont), build)


def mk_if(cond, then_p, else_p):
    def build(t):
        t.cond = cond
        t.then_p = then_p
        t.else_p = else_p
        t.fv = cond.fv | then_p.fv | else_p.fv

    return _intern(IfT, ("if", cond, then_p, else_p), build)


def mk_extchoice(branches):
    """N-ary external choice; flattens nested choices and drops structurally
    identical branches."""
    flat = []
    for b in branches:
        if isinstance(b, ExtChoiceT):
            for sub in b.branches:
                if sub not in flat:
                    flat.append(sub)
        elif b not in flat:
            flat.append(b)
    if not flat:
        return STOP
    if len(flat) == 1:
        return flat[0]
    flat = tuple(flat)

    def build(t):
        t.branches = flat
        fv = _EMPTY
        for b in flat:
            fv = fv | b.fv
        t.fv = fv

    return _intern(ExtChoiceT, ("extchoice", flat), build)


def mk_seq(p, q):
    if p is SKIP:
        return q
    if p is STOP:
        return STOP

    def build(t):
        t.p = p
        t.q = q
        t.fv = p.fv | q.fv

    return _intern(SeqT, ("seq", p, q), build)


def mk_hide(p, chans):
    chans = frozenset(chans)
    if not chans:
        return p

    def build(t):
        t.p = p
        t.chans = chans
        t.fv = p.fv

    return _intern(HideT, ("hide", p, chans), build)


def mk_interleave(p, q):
    def build(t):
        t.p = p
        t.q = q
        t.fv = p.fv | q.fv

    return _intern(InterleaveT, ("interleave", p, q), build)


def mk_genpar(p, sync, q):
    sync = frozenset(sync)

    def build(t):
        t.p = p
        t.sync = sync
        t.q = q
        t.fv = p.fv | q.fv

    return _intern(GenParT, ("genpar", p, sync, q), build)


def mk_interrupt(p, q):
    def build(t):
        t.p = p
        t.q = q
        t.fv = p.fv | q.fv

    return _intern(InterruptT, ("interrupt", p, q), build)


def mk_timed_interrupt(p, d, q):
    if d < 0:
        raise ValueError("negative interrupt budget: %d" % d)
    if d == 0:
        return q

    def build(t):
        t.p = p
        t.d = d
        t.q = q
        t.fv = p.fv | q.fv

    return _intern(TimedInterruptT, ("timedinterrupt", p, d, q), build)


def mk_deadline(d, p):
    if d < 0:
        raise ValueError("negative deadline: %d" % d)

    def build(t):
        t.d = d
        t.p = p
        t.fv = p.fv

    return _intern(DeadlineT, ("deadline", d, p), build)


def mk_ref(name, args=()):
    """A reference to a named equation; args are expressions (ELit/EVar)."""
    args = tuple(args)

    def build(t):
        t.name = name
        t.args = args
        fv = _EMPTY
        for a in args:
            fv = fv | a.fv
        t.fv = fv

    return _intern(RefT, ("ref", name, args), build)


def mk_repl_extchoice(var, values, body):
    """Replicated external choice over a finite value set: expanded at
    construction into a plain choice of substituted bodies."""
    return mk_extchoice([tsubst(body, var, v) for v in values])


# --- substitution -------------------------------------------------------------

_subst_cache = {}


def tsubst(t, var, value):
    """Substitute `value` for free occurrences of `var` in term `t`."""
    if var not in t.fv:
        return t
    key = (t.uid, var, value)
    got = _subst_cache.get(key)
    if got is not None:
        return got
    k = t.kind
    if k == "prefix":
        out = mk_prefix(t.chan, t.value, tsubst(t.cont, var, value))
    elif k == "output":
        out = mk_output(t.chan, esubst(t.expr, var, value), tsubst(t.cont, var, value))
    elif k == "input":
        # var is free in the continuation and not shadowed (fv excludes t.var)
        out = mk_input(t.chan, t.var, t.restr, tsubst(t.cont, var, value))
    elif k == "if":
        out = mk_if(
            esubst(t.cond, var, value),
            tsubst(t.then_p, var, value),
            tsubst(t.else_p, var, value),
        )
    elif k == "extchoice":
        out = mk_extchoice([tsubst(b, var, value) for b in t.branches])
    elif k == "seq":
        out = mk_seq(tsubst(t.p, var, value), tsubst(t.q, var, value))
    elif k == "hide":
        out = mk_hide(tsubst(t.p, var, value), t.chans)
    elif k == "interleave":
        out = mk_interleave(tsubst(t.p, var, value), tsubst(t.q, var, value))
    elif k == "genpar":
        out = mk_genpar(tsubst(t.p, var, value), t.sync, tsubst(t.q, var, value))
    elif k == "interrupt":
        out = mk_interrupt(tsubst(t.p, var, value), tsubst(t.q, var, value))
    elif k == "timedinterrupt":
        out = mk_timed_interrupt(tsubst(t.p, var, value), t.d, tsubst(t.q, var, value))
    elif k == "deadline":
        out = mk_deadline(t.d, tsubst(t.p, var, value))
    elif k == "ref":
        out = mk_ref(t.name, tuple(esubst(a, var, value) for a in t.args))
    else:
        raise TypeError("cannot substitute into %r" % k)
    _subst_cache[key] = out
    return out
