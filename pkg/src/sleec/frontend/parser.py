"""Recursive-descent parser for rule files.

Shape conventions for responses:

* an inner response (after `unless ... then` or after `otherwise`) is written
  without braces and takes no defeaters of its own — a subsequent `unless`
  belongs to the nearest enclosing braced or top-level response;
* braces open a nested scope in which the response may again carry the full
  deadline / otherwise / unless structure.
"""

from ..errors import ParseError
from . import ast
from .lexer import tokenize

_TIME_UNITS = {
    "second": "second",
    "seconds": "second",
    "minute": "minute",
    "minutes": "minute",
    "hour": "hour",
    "hours": "hour",
    "day": "day",
    "days": "day",
}

_REL_OPS = {"lt": "<", "gt": ">", "le": "<=", "ge": ">=", "eq": "=", "ne": "<>"}


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    # -- token plumbing -----------------------------------------------------

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _at(self, kind):
        t = self._peek()
        return t is not None and t.kind == kind

    def _advance(self):
        t = self._peek()
        if t is not None:
            self.pos += 1
        return t

    def _fail(self, message, expected=()):
        t = self._peek()
        if t is None:
            last = self.toks[-1] if self.toks else None
            line = last.line if last else 1
            col = (last.col + len(last.text)) if last else 1
            raise ParseError(message + " (at end of input)", line, col, expected)
        raise ParseError(
            "%s, got %r" % (message, t.text), t.line, t.col, expected
        )

    def _expect(self, kind, what=None):
        if not self._at(kind):
            self._fail("expected %s" % (what or kind), expected=(kind,))
        return self._advance()

    # -- top level ----------------------------------------------------------

    def spec(self):
        sp = ast.Spec()
        self._expect("def_start")
        while not self._at("def_end"):
            if self._at("event"):
                t = self._advance()
                name = self._expect("ident", "event name")
                sp.events.append(ast.EventDecl(name.text, (t.line, t.col)))
            elif self._at("measure"):
                sp.measures.append(self._measure())
            elif self._at("constant"):
                t = self._advance()
                name = self._expect("ident", "constant name")
                value = None
                if self._at("eq"):
                    self._advance()
                    value = int(self._expect("int", "integer value").text)
                sp.constants.append(ast.ConstantDecl(name.text, value, (t.line, t.col)))
            else:
                self._fail(
                    "expected event, measure, constant or def_end",
                    expected=("event", "measure", "constant", "def_end"),
                )
        self._advance()  # def_end
        self._expect("rule_start")
        while not self._at("rule_end"):
            sp.rules.append(self._rule())
        self._advance()  # rule_end
        t = self._peek()
        if t is not None:
            self._fail("expected end of input after rule_end")
        return sp

    def _measure(self):
        t = self._advance()  # measure
        name = self._expect("ident", "measure name")
        self._expect("colon")
        kind_tok = self._expect("ident", "measure type (boolean, numeric or scale)")
        kind = kind_tok.text
        if kind == "boolean" or kind == "numeric":
            return ast.MeasureDecl(name.text, kind, span=(t.line, t.col))
        if kind == "scale":
            self._expect("lparen")
            lits = [self._expect("ident", "scale literal").text]
            while self._at("comma"):
                self._advance()
                lits.append(self._expect("ident", "scale literal").text)
            self._expect("rparen")
            return ast.MeasureDecl(name.text, "scale", tuple(lits), (t.line, t.col))
        raise ParseError(
            "unknown measure type %r (expected boolean, numeric or scale)" % kind,
            kind_tok.line,
            kind_tok.col,
        )

    # -- rules --------------------------------------------------------------

    def _rule(self):
        rid = self._expect("ident", "rule name")
        self._expect("when")
        ev = self._expect("ident", "trigger event")
        cond = None
        if self._at("and"):
            self._advance()
            cond = self._expr()
        self._expect("then")
        resp = self._response(allow_defeaters=True)
        trig = ast.Trigger(ev.text, cond, (ev.line, ev.col))
        return ast.Rule(rid.text, trig, resp, (rid.line, rid.col))

    def _response(self, allow_defeaters):
        if self._at("lbrace"):
            self._advance()
            resp = self._response(allow_defeaters=True)
            self._expect("rbrace")
        else:
            resp = ast.Response(self._constraint())
        if allow_defeaters:
            while self._at("unless"):
                resp.defeaters.append(self._defeater())
        return resp

    def _constraint(self):
        if self._at("not"):
            t = self._advance()
            ev = self._expect("ident", "event name")
            dl = self._deadline()
            return ast.Constraint(ev.text, forbid=True, deadline=dl, span=(t.line, t.col))
        ev = self._expect("ident", "event name")
        dl = None
        alt = None
        if self._at("within"):
            dl = self._deadline()
            if self._at("otherwise"):
                self._advance()
                alt = self._response(allow_defeaters=False)
        return ast.Constraint(
            ev.text, forbid=False, deadline=dl, alternative=alt, span=(ev.line, ev.col)
        )

    def _deadline(self):
        t = self._expect("within")
        if self._at("int"):
            vt = self._advance()
            value = ast.IntLit(int(vt.text), (vt.line, vt.col))
        elif self._at("ident"):
            vt = self._advance()
            value = ast.NameRef(vt.text, (vt.line, vt.col))
        else:
            self._fail("expected a number or constant name after 'within'",
                       expected=("int", "ident"))
        unit_tok = self._expect("ident", "time unit")
        unit = _TIME_UNITS.get(unit_tok.text)
        if unit is None:
            raise ParseError(
                "unknown time unit %r (expected seconds, minutes, hours or days)"
                % unit_tok.text,
                unit_tok.line,
                unit_tok.col,
            )
        return ast.Deadline(value, unit, (t.line, t.col))

    def _defeater(self):
        t = self._expect("unless")
        cond = self._expr()
        resp = None
        if self._at("then"):
            self._advance()
            resp = self._response(allow_defeaters=False)
        return ast.Defeater(cond, resp, (t.line, t.col))

    # -- boolean expressions --------------------------------------------------

    def _expr(self):
        left = self._and_expr()
        while self._at("or"):
            self._advance()
            left = ast.Or(left, self._and_expr())
        return left

    def _and_expr(self):
        left = self._not_expr()
        while self._at("and"):
            self._advance()
            left = ast.And(left, self._not_expr())
        return left

    def _not_expr(self):
        if self._at("not"):
            self._advance()
            return ast.Not(self._not_expr())
        return self._atom()

    def _atom(self):
        if self._at("lparen"):
            self._advance()
            e = self._expr()
            self._expect("rparen")
            return e
        left = self._operand()
        t = self._peek()
        if t is not None and t.kind in _REL_OPS:
            self._advance()
            right = self._operand()
            return ast.Cmp(_REL_OPS[t.kind], left, right, (t.line, t.col))
        return left

    def _operand(self):
        if self._at("int"):
            t = self._advance()
            return ast.IntLit(int(t.text), (t.line, t.col))
        if self._at("bool"):
            t = self._advance()
            return ast.BoolLit(t.text == "true", (t.line, t.col))
        if self._at("ident"):
            t = self._advance()
            return ast.NameRef(t.text, (t.line, t.col))
        self._fail("expected a measure, constant, literal or '('",
                   expected=("ident", "int", "bool", "lparen"))


def parse(text):
    """Parse rule-file text into a Spec. Raises LexError/ParseError."""
    return _Parser(tokenize(text)).spec()
