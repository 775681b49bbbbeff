import pytest

from sleec.errors import ParseError
from sleec.frontend import parse, format_spec, format_rule
from sleec.frontend import ast


MINI = """\
def_start
  event Ping
  event Pong
  measure busy: boolean
  measure load: numeric
  measure mood: scale(low, mid, high)
  constant LIMIT = 4
def_end
rule_start
  R1 when Ping then Pong
  R2 when Ping and busy then Pong within 2 seconds
  R3 when Ping then not Pong within LIMIT minutes
rule_end
"""


def test_declarations_and_rule_shapes():
    spec = parse(MINI)
    assert spec.event_names() == ["Ping", "Pong"]
    assert [m.kind for m in spec.measures] == ["boolean", "numeric", "scale"]
    assert tuple(spec.measure("mood").scale_literals) == ("low", "mid", "high")
    assert spec.constant("LIMIT").value == 4
    assert [r.id for r in spec.rules] == ["R1", "R2", "R3"]

    r1 = spec.rule("R1")
    assert r1.trigger.event == "Ping"
    assert r1.trigger.condition is None
    assert r1.response.constraint.event == "Pong"
    assert r1.response.constraint.deadline is None

    r2 = spec.rule("R2")
    assert isinstance(r2.trigger.condition, ast.NameRef)
    dl = r2.response.constraint.deadline
    assert (dl.value.value, dl.unit) == (2, "second")

    r3 = spec.rule("R3")
    c = r3.response.constraint
    assert c.forbid
    assert isinstance(c.deadline.value, ast.NameRef)
    assert c.deadline.value.name == "LIMIT"
    assert c.deadline.unit == "minute"


def test_defeater_chain_and_otherwise():
    spec = parse(
        MINI.replace(
            "R3 when Ping then not Pong within LIMIT minutes",
            "R3 when Ping then Pong within 2 seconds otherwise Ping\n"
            "     unless busy then Ping\n"
            "     unless load > 3",
        )
    )
    r3 = spec.rule("R3")
    alt = r3.response.constraint.alternative
    assert alt is not None and alt.constraint.event == "Ping"
    assert len(r3.response.defeaters) == 2
    assert r3.response.defeaters[0].response.constraint.event == "Ping"
    assert r3.response.defeaters[1].response is None  # obligation dropped
    cond = r3.response.defeaters[1].condition
    assert isinstance(cond, ast.Cmp) and cond.op == ">"


def test_braced_response_scopes_defeaters_to_the_inner_response():
    text = MINI.replace(
        "R3 when Ping then not Pong within LIMIT minutes",
        "R3 when Ping then {Pong within 2 seconds otherwise {Ping\n"
        "     unless busy}}",
    )
    r3 = parse(text).rule("R3")
    # The unless belongs to the otherwise-response, not to R3 itself.
    assert r3.response.defeaters == []
    alt = r3.response.constraint.alternative
    assert len(alt.defeaters) == 1


def test_expression_precedence_not_binds_tighter_than_and_or():
    text = MINI.replace(
        "R2 when Ping and busy then Pong within 2 seconds",
        "R2 when Ping and not busy and load > 2 or mood >= mid then Pong",
    )
    # The condition is everything after the trigger's own `and`.
    cond = parse(text).rule("R2").trigger.condition
    assert isinstance(cond, ast.Or)
    assert isinstance(cond.left, ast.And)
    assert isinstance(cond.left.left, ast.Not)
    assert isinstance(cond.right, ast.Cmp) and cond.right.op == ">="


def test_pretty_printer_round_trips():
    spec = parse(open("fixtures/firefighter.sleec").read())
    text = format_spec(spec)
    again = parse(text)
    assert format_spec(again) == text
    assert [r.id for r in again.rules] == [r.id for r in spec.rules]
    assert again == spec


def test_rule_printer_single_rule():
    spec = parse(MINI)
    line = format_rule(spec.rule("R1"))
    assert "when Ping then Pong" in line


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("def_start event 9Bad def_end", "event name"),
        ("def_start def_end rule_start R1 Ping then Pong rule_end", "when"),
        ("def_start def_end rule_start R1 when Ping then Pong within 2 fortnights rule_end",
         "time unit"),
        ("def_start measure m: widget def_end", "boolean, numeric or scale"),
    ],
)
def test_parse_errors_say_what_was_expected(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert fragment in str(exc.value)


def test_parse_error_position_is_precise():
    with pytest.raises(ParseError) as exc:
        parse("def_start\n  event\ndef_end")
    assert exc.value.line == 3  # the name was expected where def_end sits
