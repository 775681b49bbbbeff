"""Parser for .tcsp process scripts (agent models and emitted equations).

Surface syntax, loosest binding first:

    P \\ {a, b}                    hiding
    P ||| Q,  P [| {a, b} |] Q     parallel
    P [] Q,  P /\\ Q,  P [> n > Q  choice, interrupt, timed interrupt
    P ; Q                          sequencing
    e -> P, c?x -> P, c?x:{v,..} -> P, c!v -> P, c.v -> P
    n <| P                         deadline on the first visible event
    if g then P else Q
    SKIP, STOP, WAIT(n), Name, Name(v, ..)

Declarations: `channel c`, `channel c : Bool`, `channel c : {lo..hi}`,
`channel c : {lit, lit, ..}` (an ordered scale).  Equations may take value
parameters: `Name(x) = ...`.  Comments run from `--` to end of line.
"""

from ..errors import ParseError, SleecError
from . import terms as T
from .env import ProcEnv

_KEYWORDS = frozenset(
    ["channel", "if", "then", "else", "and", "or", "not", "SKIP", "STOP", "WAIT", "Bool"]
)

_SYMBOLS = [
    ("[>", "timeout"),
    ("[|", "lpar"),
    ("|]", "rpar"),
    ("|||", "interleave"),
    ("[]", "extchoice"),
    ("/\\", "interrupt"),
    ("<|", "deadline"),
    ("->", "arrow"),
    ("..", "dots"),
    ("==", "cmp"),
    ("!=", "cmp"),
    ("<=", "cmp"),
    (">=", "cmp"),
    ("<", "cmp"),
    (">", "gt"),
    ("=", "eq"),
    ("\\", "hide"),
    (";", "semi"),
    (",", "comma"),
    ("?", "query"),
    ("!", "bang"),
    (".", "dot"),
    (":", "colon"),
    ("(", "lparen"),
    (")", "rparen"),
    ("{", "lbrace"),
    ("}", "rbrace"),
]


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "%s(%r)" % (self.kind, self.text)


def _scan(text):
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "-" and text[i : i + 2] == "--":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = word if word in _KEYWORDS else "ident"
            if word in ("true", "false"):
                kind = "bool"
            toks.append(_Tok(kind, word, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(_Tok(kind, sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError("unexpected character %r" % ch, line, col)
    return toks


class _P:
    def __init__(self, toks, env):
        self.toks = toks
        self.pos = 0
        self.env = env
        self.scale_lits = {}  # literal name -> SVal
        for dom in env.channels.values():
            if dom:
                for v in dom:
                    if isinstance(v, T.SVal):
                        self.scale_lits[v.name] = v

    def _peek(self, ahead=0):
        p = self.pos + ahead
        return self.toks[p] if p < len(self.toks) else None

    def _at(self, kind, ahead=0):
        t = self._peek(ahead)
        return t is not None and t.kind == kind

    def _next(self):
        t = self._peek()
        self.pos += 1
        return t

    def _fail(self, msg):
        t = self._peek()
        if t is None:
            raise ParseError(msg + " (at end of input)", 0, 0)
        raise ParseError("%s, got %r" % (msg, t.text), t.line, t.col)

    def _expect(self, kind, what=None):
        if not self._at(kind):
            self._fail("expected %s" % (what or kind))
        return self._next()

    # -- declarations / equations ------------------------------------------------

    def script(self):
        first = None
        while self._peek() is not None:
            if self._at("channel"):
                self._channel()
            else:
                name = self._equation()
                if first is None:
                    first = name
        if first is None:
            raise SleecError("script defines no process")
        self.env.check_guarded()
        return first

    def _channel(self):
        self._next()
        name = self._expect("ident", "channel name").text
        dom = None
        if self._at("colon"):
            self._next()
            if self._at("Bool"):
                self._next()
                dom = (True, False)
            else:
                self._expect("lbrace")
                if self._at("int"):
                    lo = int(self._next().text)
                    self._expect("dots")
                    hi = int(self._expect("int", "upper bound").text)
                    self._expect("rbrace")
                    dom = tuple(range(lo, hi + 1))
                else:
                    lits = [self._expect("ident", "scale literal").text]
                    while self._at("comma"):
                        self._next()
                        lits.append(self._expect("ident", "scale literal").text)
                    self._expect("rbrace")
                    dom = tuple(T.SVal(name, lit, i) for i, lit in enumerate(lits))
        self.env.declare_channel(name, dom)
        if dom:
            for v in dom:
                if isinstance(v, T.SVal):
                    self.scale_lits[v.name] = v

    def _equation(self):
        name = self._expect("ident", "process name").text
        params = []
        if self._at("lparen"):
            self._next()
            params.append(self._expect("ident", "parameter").text)
            while self._at("comma"):
                self._next()
                params.append(self._expect("ident", "parameter").text)
            self._expect("rparen")
        self._expect("eq", "'='")
        body = self.proc(5)
        self.env.define(name, params, body)
        return name

    # -- processes ------------------------------------------------------------------

    def proc(self, level):
        if level == 5:
            p = self.proc(4)
            while self._at("hide"):
                self._next()
                self._expect("lbrace")
                chans = [self._expect("ident", "channel").text]
                while self._at("comma"):
                    self._next()
                    chans.append(self._expect("ident", "channel").text)
                self._expect("rbrace")
                p = T.mk_hide(p, chans)
            return p
        if level == 4:
            p = self.proc(3)
            while self._at("interleave") or self._at("lpar"):
                if self._at("interleave"):
                    self._next()
                    p = T.mk_interleave(p, self.proc(3))
                else:
                    self._next()
                    self._expect("lbrace")
                    chans = []
                    if not self._at("rbrace"):
                        chans.append(self._expect("ident", "channel").text)
                        while self._at("comma"):
                            self._next()
                            chans.append(self._expect("ident", "channel").text)
                    self._expect("rbrace")
                    self._expect("rpar")
                    p = T.mk_genpar(p, chans, self.proc(3))
            return p
        if level == 3:
            p = self.proc(2)
            while self._at("extchoice") or self._at("interrupt") or self._at("timeout"):
                t = self._next()
                if t.kind == "extchoice":
                    p = T.mk_extchoice([p, self.proc(2)])
                elif t.kind == "interrupt":
                    p = T.mk_interrupt(p, self.proc(2))
                else:
                    d = int(self._expect("int", "tock budget").text)
                    self._expect("gt", "'>'")
                    p = T.mk_timed_interrupt(p, d, self.proc(2))
            return p
        if level == 2:
            p = self.proc(1)
            while self._at("semi"):
                self._next()
                p = T.mk_seq(p, self.proc(1))
            return p
        return self._prefix()

    def _prefix(self):
        if self._at("if"):
            self._next()
            cond = self._expr()
            self._expect("then")
            then_p = self.proc(1)
            self._expect("else")
            else_p = self.proc(1)
            return T.mk_if(cond, then_p, else_p)
        if self._at("int"):
            d = int(self._next().text)
            self._expect("deadline", "'<|'")
            return T.mk_deadline(d, self.proc(1))
        if self._at("SKIP"):
            self._next()
            return T.SKIP
        if self._at("STOP"):
            self._next()
            return T.STOP
        if self._at("WAIT"):
            self._next()
            self._expect("lparen")
            d = int(self._expect("int", "duration").text)
            self._expect("rparen")
            return T.mk_wait(d)
        if self._at("lparen"):
            self._next()
            p = self.proc(5)
            self._expect("rparen")
            return p
        if self._at("ident"):
            name = self._next().text
            if self._at("query"):
                self._next()
                var = self._expect("ident", "variable").text
                restr = None
                if self._at("colon"):
                    self._next()
                    self._expect("lbrace")
                    restr = [self._value()]
                    while self._at("comma"):
                        self._next()
                        restr.append(self._value())
                    self._expect("rbrace")
                self._expect("arrow", "'->'")
                return T.mk_input(name, var, restr, self.proc(1))
            if self._at("bang"):
                self._next()
                if self._at("ident") and not self._peek().text in self.scale_lits:
                    expr = T.EVar(self._next().text)
                else:
                    expr = T.ELit(self._value())
                self._expect("arrow", "'->'")
                return T.mk_output(name, expr, self.proc(1))
            if self._at("dot"):
                self._next()
                v = self._value()
                self._expect("arrow", "'->'")
                return T.mk_prefix(name, v, self.proc(1))
            if self._at("arrow"):
                self._next()
                return T.mk_prefix(name, None, self.proc(1))
            if self._at("lparen"):
                self._next()
                args = [self._arg()]
                while self._at("comma"):
                    self._next()
                    args.append(self._arg())
                self._expect("rparen")
                return T.mk_ref(name, args)
            return T.mk_ref(name)
        self._fail("expected a process")

    def _arg(self):
        """Reference argument: a value literal or a bound variable."""
        if self._at("ident") and self._peek().text not in self.scale_lits:
            return T.EVar(self._next().text)
        return T.ELit(self._value())

    def _value(self):
        if self._at("int"):
            return int(self._next().text)
        if self._at("bool"):
            return self._next().text == "true"
        if self._at("ident"):
            t = self._next()
            if t.text in self.scale_lits:
                return self.scale_lits[t.text]
            raise ParseError("unknown value %r" % t.text, t.line, t.col)
        self._fail("expected a value")

    # -- conditions --------------------------------------------------------------

    def _expr(self):
        left = self._expr_and()
        while self._at("or"):
            self._next()
            left = T.EOr(left, self._expr_and())
        return left

    def _expr_and(self):
        left = self._expr_not()
        while self._at("and"):
            self._next()
            left = T.EAnd(left, self._expr_not())
        return left

    def _expr_not(self):
        if self._at("not"):
            self._next()
            return T.ENot(self._expr_not())
        return self._expr_cmp()

    def _expr_cmp(self):
        left = self._expr_atom()
        if self._at("cmp") or self._at("gt") or self._at("eq"):
            t = self._next()
            op = {"=": "=="}.get(t.text, t.text)
            return T.ECmp(op, left, self._expr_atom())
        return left

    def _expr_atom(self):
        if self._at("lparen"):
            self._next()
            e = self._expr()
            self._expect("rparen")
            return e
        if self._at("int"):
            return T.ELit(int(self._next().text))
        if self._at("bool"):
            return T.ELit(self._next().text == "true")
        if self._at("ident"):
            t = self._next()
            if t.text in self.scale_lits:
                return T.ELit(self.scale_lits[t.text])
            if t.text.startswith("STle"):
                scale = t.text[4:]
                self._expect("lparen")
                a = self._expr_atom()
                self._expect("comma")
                b = self._expr_atom()
                self._expect("rparen")
                return T.EScaleLe(scale, a, b)
            return T.EVar(t.text)
        self._fail("expected an expression")


def _used_names(t, chans, refs):
    k = t.kind
    if k in ("prefix", "output", "input"):
        chans.add(t.chan)
        _used_names(t.cont, chans, refs)
    elif k == "ref":
        refs.add((t.name, len(t.args)))
    elif k == "if":
        _used_names(t.then_p, chans, refs)
        _used_names(t.else_p, chans, refs)
    elif k == "extchoice":
        for b in t.branches:
            _used_names(b, chans, refs)
    elif k in ("seq", "interleave", "genpar", "interrupt"):
        _used_names(t.p, chans, refs)
        _used_names(t.q, chans, refs)
    elif k == "timedinterrupt":
        _used_names(t.p, chans, refs)
        _used_names(t.q, chans, refs)
    elif k in ("deadline", "hide"):
        _used_names(t.p, chans, refs)


def _validate(env):
    chans, refs = set(), set()
    for _name, (_params, body) in env.equations.items():
        _used_names(body, chans, refs)
    for c in sorted(chans):
        if c not in env.channels:
            raise SleecError("channel %r is not declared" % c)
    for (name, arity) in sorted(refs):
        if name not in env.equations:
            raise SleecError("process %r is not defined" % name)
        want = len(env.equations[name][0])
        if want != arity:
            raise SleecError(
                "%s takes %d argument(s), got %d" % (name, want, arity)
            )
    env.check_guarded()


def parse_tcsp(text):
    """Parse a .tcsp script; returns (env, name of the first process)."""
    env = ProcEnv()
    parser = _P(_scan(text), env)
    first = parser.script()
    _validate(env)
    return env, first
