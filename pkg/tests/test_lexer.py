import pytest

from sleec.errors import LexError
from sleec.frontend import Token, tokenize


def kinds(text):
    return [t.kind for t in tokenize(text)]


def test_keywords_identifiers_and_numbers():
    toks = tokenize("when CameraStart then SoundAlarm within 2 seconds")
    assert [t.kind for t in toks] == [
        "when", "ident", "then", "ident", "within", "int", "ident",
    ]
    assert toks[1].text == "CameraStart"
    assert toks[5].text == "2"


def test_comments_run_to_end_of_line():
    toks = tokenize("event Boo // the rest is ignored, even keywords: when\nmeasure")
    assert [t.kind for t in toks] == ["event", "ident", "measure"]


def test_positions_are_one_based_lines_and_columns():
    toks = tokenize("def_start\n  event CameraStart")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (2, 3)
    assert (toks[2].line, toks[2].col) == (2, 9)


def test_comparison_operators():
    assert kinds("< <= > >= = <>") == ["lt", "le", "gt", "ge", "eq", "ne"]


def test_punctuation_and_booleans():
    assert kinds("scale(low, high): {1}") == [
        "ident", "lparen", "ident", "comma", "ident", "rparen",
        "colon", "lbrace", "int", "rbrace",
    ]
    toks = tokenize("true false")
    assert [t.kind for t in toks] == ["bool", "bool"]


def test_token_equality_ignores_position():
    assert Token("ident", "x", 1, 1) == Token("ident", "x", 9, 9)
    assert Token("ident", "x", 1, 1) != Token("ident", "y", 1, 1)


def test_lex_error_carries_position():
    with pytest.raises(LexError) as exc:
        tokenize("event Good\nevent B@d")
    assert exc.value.line == 2
    assert exc.value.col == 8
