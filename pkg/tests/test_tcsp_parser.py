import pytest

from sleec.errors import ParseError, SleecError
from sleec.tockcsp import (
    TOCK, Comm, SKIP, parse_tcsp,
    mk_deadline, mk_extchoice, mk_genpar, mk_hide, mk_input, mk_interleave,
    mk_prefix, mk_ref, mk_seq, mk_timed_interrupt, mk_wait,
)
from sleec.tockcsp.engine import initials, step, transitions
from sleec.tockcsp.display import display


HEAD = "channel a\nchannel b\nchannel m : {0..3}\nchannel f: Bool\n"


def body(text):
    env, first = parse_tcsp(HEAD + "P = " + text + "\n")
    return env.equations[first][1], env


def test_first_equation_names_the_agent():
    env, first = parse_tcsp(HEAD + "Main = a -> SKIP\nOther = b -> SKIP\n")
    assert first == "Main"
    assert set(env.equations) == {"Main", "Other"}


def test_channel_declarations_define_domains():
    text = (
        "channel plain\n"
        "channel flag : Bool\n"
        "channel level : {2..4}\n"
        "channel grade : {low, mid, high}\n"
        "P = plain -> SKIP\n"
    )
    env, _ = parse_tcsp(text)
    assert env.channels["plain"] is None
    assert env.channels["flag"] == (True, False)
    assert env.channels["level"] == (2, 3, 4)
    assert [v.name for v in env.channels["grade"]] == ["low", "mid", "high"]
    assert [v.index for v in env.channels["grade"]] == [0, 1, 2]


def test_operator_precedence_arrow_binds_tighter_than_semi():
    t, _ = body("a -> SKIP ; b -> SKIP")
    assert t == mk_seq(mk_prefix("a", None, SKIP), mk_prefix("b", None, SKIP))


def test_choice_binds_looser_than_semi():
    t, _ = body("a -> SKIP ; b -> SKIP [] b -> SKIP")
    assert t == mk_extchoice([
        mk_seq(mk_prefix("a", None, SKIP), mk_prefix("b", None, SKIP)),
        mk_prefix("b", None, SKIP),
    ])


def test_deadline_wait_and_timed_interrupt():
    t, _ = body("0 <| (a -> SKIP)")
    assert t == mk_deadline(0, mk_prefix("a", None, SKIP))
    t, _ = body("WAIT(2)")
    assert t == mk_wait(2)
    t, _ = body("a -> SKIP [> 3 > b -> SKIP")
    assert t == mk_timed_interrupt(
        mk_prefix("a", None, SKIP), 3, mk_prefix("b", None, SKIP))


def test_input_with_restriction_and_conditional():
    t, env = body("m?x:{1,3} -> (if x > 2 then a -> SKIP else b -> SKIP)")
    succ = {e: s for (e, s) in transitions(t, env) if e is not TOCK}
    assert set(succ) == {Comm("m", 1), Comm("m", 3)}
    assert initials(succ[Comm("m", 3)], env) == {Comm("a"), TOCK}
    assert initials(succ[Comm("m", 1)], env) == {Comm("b"), TOCK}


def test_dotted_and_bang_communications():
    t, env = body("f.true -> SKIP")
    assert Comm("f", True) in initials(t, env)
    t2, env2 = body("m!2 -> SKIP")
    assert Comm("m", 2) in initials(t2, env2)


def test_parallel_and_hiding_operators():
    t, _ = body("a -> SKIP ||| b -> SKIP")
    assert t == mk_interleave(
        mk_prefix("a", None, SKIP), mk_prefix("b", None, SKIP))
    t, _ = body("a -> SKIP [| {a} |] a -> b -> SKIP")
    assert t.kind == "genpar" and t.sync == frozenset({"a"})
    t, _ = body("(a -> b -> SKIP) \\ {a}")
    assert t == mk_hide(
        mk_prefix("a", None, mk_prefix("b", None, SKIP)), {"a"})


def test_parameterised_equations():
    env, first = parse_tcsp(
        HEAD + "P = m?x -> Q(x)\nQ(v) = if v > 1 then a -> SKIP else b -> P\n")
    t = mk_ref(first)
    after = step(t, Comm("m", 3), env)
    assert initials(after, env) == {Comm("a"), TOCK}


def test_agent_fixtures_load_and_declare_expected_channels(uav_agent, rad_agent):
    env, first = uav_agent
    assert first == "UAV"
    assert env.channels["windSpeed"] is not None
    env, first = rad_agent
    assert first == "RAD"
    assert set(env.channels) >= {"UserFallen", "roomTemperature", "tock"} - {"tock"}


def test_display_output_reparses_to_the_same_script():
    env, first = parse_tcsp(open("fixtures/rad.tcsp").read())
    decls = "".join(
        "channel %s%s\n" % (c, _decl_suffix(dom))
        for c, dom in env.channels.items())
    eqs = "".join(
        "%s%s = %s\n" % (n, "(%s)" % ",".join(ps) if ps else "", display(t))
        for n, (ps, t) in env.equations.items())
    env2, first2 = parse_tcsp(decls + eqs)
    assert first2 == first
    for name, (params, term) in env.equations.items():
        # same interned term: display is a faithful round-trip
        assert env2.equations[name] == (params, term)


def _decl_suffix(dom):
    if dom is None:
        return ""
    if dom == (True, False):
        return " : Bool"
    if all(isinstance(v, int) for v in dom):
        return " : {%d..%d}" % (dom[0], dom[-1])
    return " : {%s}" % ", ".join(v.name for v in dom)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("P = a -> ", "expected"),
        ("P = unknownchan -> SKIP", "unknownchan"),
        ("P = if f then SKIP", "else"),
        ("channel a\nP = a -> SKIP\nP = STOP", "defined twice"),
    ],
)
def test_errors_mention_the_problem(text, fragment):
    with pytest.raises((ParseError, SleecError)) as exc:
        parse_tcsp(HEAD + text if not text.startswith("channel") else text)
    assert fragment in str(exc.value)
