"""Hand-rolled scanner for rule files.

Produces a flat token list; `//` starts a comment that runs to end of line.
"""

from ..errors import LexError

KEYWORDS = frozenset(
    [
        "def_start",
        "def_end",
        "rule_start",
        "rule_end",
        "event",
        "measure",
        "constant",
        "when",
        "then",
        "unless",
        "otherwise",
        "within",
        "not",
        "and",
        "or",
    ]
)

_PUNCT = {
    ":": "colon",
    ",": "comma",
    "(": "lparen",
    ")": "rparen",
    "{": "lbrace",
    "}": "rbrace",
}


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "Token(%s, %r, %d:%d)" % (self.kind, self.text, self.line, self.col)

    def __eq__(self, other):
        return (
            isinstance(other, Token)
            and self.kind == other.kind
            and self.text == other.text
        )


def tokenize(text):
    """Scan `text` into a list of tokens (without an EOF marker).

    Raises LexError at the first character that cannot start a token.
    """
    toks = []
    i = 0
    line = 1
    col = 1
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
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in KEYWORDS:
                toks.append(Token(word, word, line, col))
            elif word in ("true", "false"):
                toks.append(Token("bool", word, line, col))
            else:
                toks.append(Token("ident", word, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == "<":
            if i + 1 < n and text[i + 1] == "=":
                toks.append(Token("le", "<=", line, col))
                i += 2
                col += 2
            elif i + 1 < n and text[i + 1] == ">":
                toks.append(Token("ne", "<>", line, col))
                i += 2
                col += 2
            else:
                toks.append(Token("lt", "<", line, col))
                i += 1
                col += 1
            continue
        if ch == ">":
            if i + 1 < n and text[i + 1] == "=":
                toks.append(Token("ge", ">=", line, col))
                i += 2
                col += 2
            else:
                toks.append(Token("gt", ">", line, col))
                i += 1
                col += 1
            continue
        if ch == "=":
            toks.append(Token("eq", "=", line, col))
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            toks.append(Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        raise LexError("unexpected character %r" % ch, line, col)
    return toks
