import pytest

from sleec.analysis import (
    HOLDS, INCONCLUSIVE, SKIPPED, VIOLATED,
    bounded_traces, check_conflict, check_conformance, check_redundancy,
    count_tocks, explore, fmt_event, fmt_trace, is_terminated,
    measure_values_at, ordered_successors, project, redundancy_with_prechecks,
    trace_json,
)
from sleec.config import CheckConfig
from sleec.errors import ChannelMismatch
from sleec.frontend import parse, validate
from sleec.semantics import translate_spec
from sleec.tockcsp import (
    Comm, Config, SKIP, TERMINATION, TOCK,
    mk_extchoice, mk_prefix, mk_ref, parse_tcsp,
)

from conftest import econf


def tiny_env():
    env, _ = parse_tcsp(
        "channel a\n"
        "channel b\n"
        "channel m : {0..2}\n"
        "P = a -> b -> SKIP\n"
        "LOOP = a -> LOOP\n"
    )
    return env


# --- exploration ---------------------------------------------------------------


def test_explore_builds_the_full_graph_when_bounds_allow():
    env = tiny_env()
    lts = explore(mk_ref("P"), env, Config(max_tocks=2, max_depth=5))
    assert not lts.truncated
    # P, its expansion (P's tock successor), b -> SKIP, SKIP
    assert lts.states_explored == 4
    final = next(iter(lts.terminated))
    assert [repr(e) for e in lts.trace_to(final)] == ["a", "b"]


def test_explore_marks_cut_states_when_bounds_bite():
    env = tiny_env()
    lts = explore(mk_ref("LOOP"), env, Config(max_tocks=0, max_depth=2))
    assert lts.truncated
    assert lts.cut


def test_successors_are_ordered_by_declaration_then_value():
    env = tiny_env()
    term = mk_extchoice([
        mk_prefix("m", 2, SKIP),
        mk_prefix("b", None, SKIP),
        mk_prefix("a", None, SKIP),
    ])
    succs = ordered_successors(term, env)
    assert [repr(e) for (e, _s) in succs] == ["a", "b", "m.2", "tock"]
    assert succs[-1][1] is term  # patient choice: tock leaves it open


def test_termination_is_queried_not_listed():
    env = tiny_env()
    assert is_terminated(SKIP, env)
    assert ordered_successors(SKIP, env) == []


# --- trace utilities -------------------------------------------------------------


def test_bounded_traces_collects_every_prefix():
    env = tiny_env()
    got = bounded_traces(mk_ref("P"), env, max_events=2, max_tocks=1)
    a, b = Comm("a"), Comm("b")
    assert (a, b, TERMINATION) in got
    assert (TOCK, a, b, TERMINATION) in got
    assert (a, TOCK, b, TERMINATION) in got
    assert () in got and (a,) in got
    assert (TOCK, TOCK) not in {t[:2] for t in got}


def test_projection_keeps_named_channels_and_tocks():
    tr = (Comm("a"), TOCK, Comm("m", 2), Comm("b"), TOCK, TERMINATION)
    assert project(tr, {"a", "b"}) == (Comm("a"), TOCK, Comm("b"), TOCK)
    assert project(tr, {"m"}, keep_tock=False) == (Comm("m", 2),)


def test_latest_measure_values_are_positional():
    tr = (Comm("m", 1), Comm("a"), Comm("m", 2), Comm("b"))
    assert measure_values_at(tr, 1, ["m"]) == {"m": 1}
    assert measure_values_at(tr, 4, ["m"]) == {"m": 2}
    assert measure_values_at(tr, 0, ["m"]) == {"m": None}


def test_trace_formatting_compresses_tock_runs():
    tr = (Comm("a"), TOCK, TOCK, TOCK, Comm("b", 1), TOCK)
    assert fmt_trace(tr) == "a, 3 tocks, b.1, 1 tock"
    assert fmt_trace(()) == "<empty>"
    assert fmt_event(TOCK) == "tock" and fmt_event(TERMINATION) == "tick"
    assert count_tocks(tr) == 4
    assert trace_json(tr) == [
        {"event": "a"}, {"tocks": 3}, {"event": "b", "value": 1}, {"tocks": 1},
    ]


# --- conflicts -------------------------------------------------------------------


def test_non_conflicting_overlap_holds(rad):
    _cfg, _wf, model = rad
    report = check_conflict(model, "Rule3", "Rule4", econf(rad))
    assert report.kind == "conflict"
    assert report.rule_ids == ("Rule3", "Rule4")
    assert report.verdict == HOLDS
    assert report.witness is None and not report.truncated


def test_deadline_against_prohibition_deadlocks(firefighter):
    _cfg, _wf, model = firefighter
    report = check_conflict(model, "RuleA", "Rule3", econf(firefighter),
                            pinned={"temperature": 0})
    assert report.verdict == VIOLATED
    assert report.notes[0] == "measures pinned: temperature=0"
    assert "refusing all events" in report.notes[1]
    # cold battery emergency while the alarm forbids going home
    names = {e.chan for e in report.witness if e is not TOCK}
    assert names == {"BatteryCritical", "temperature", "SoundAlarm"}
    assert count_tocks(report.witness) == 60


def test_opposed_defeaters_stall_time_forever(firefighter):
    _cfg, _wf, model = firefighter
    report = check_conflict(model, "RuleC", "RuleD", econf(firefighter),
                            pinned={"personNearby": True, "temperature": 33})
    assert report.verdict == VIOLATED
    assert report.notes[0] == "measures pinned: personNearby=true, temperature=33"
    assert "only time can pass" in report.notes[1]


# --- redundancy ------------------------------------------------------------------


def test_redundancy_precheck_skips_disjoint_rules(firefighter):
    _cfg, _wf, model = firefighter
    report = redundancy_with_prechecks(model, "Rule1", "RuleA", econf(firefighter))
    assert report.verdict == SKIPPED
    assert "share no events" in report.notes[0]


def test_redundancy_precheck_skips_conflicting_rules(firefighter):
    _cfg, _wf, model = firefighter
    report = redundancy_with_prechecks(model, "RuleA", "Rule3", econf(firefighter))
    assert report.verdict == SKIPPED
    assert "rules conflict" in report.notes[0]


def test_weaker_rule_is_redundant_but_not_conversely(firefighter):
    _cfg, _wf, model = firefighter
    cfg = econf(firefighter)
    assert check_redundancy(model, "Rule1", "Rule2", cfg).verdict == HOLDS
    rev = check_redundancy(model, "Rule2", "Rule1", cfg)
    assert rev.verdict == VIOLATED
    assert "projected counterexample: CameraStart, 3 tocks" in rev.notes[1]
    assert rev.notes[2] == "valuation: personNearby=true"


# --- conformance -----------------------------------------------------------------


MINI = """\
def_start
  event Ping
  event Pong
  measure busy: boolean
  constant LIMIT = 4
def_end
rule_start
  R1 when Ping and busy then Pong within LIMIT seconds
rule_end
"""

AGENT_HEAD = "channel Ping\nchannel Pong\nchannel busy: Bool\n"


def mini_model():
    wf, diags = validate(parse(MINI), CheckConfig())
    assert wf is not None, [str(d) for d in diags]
    return translate_spec(wf)


def agent_env(body):
    env, first = parse_tcsp(AGENT_HEAD + body)
    return env, first


def test_prompt_response_conforms():
    # the agent commits to answering within 2 tocks, well inside the
    # 4-tock window the rule grants
    model = mini_model()
    env, first = agent_env("GOOD = busy?b -> Ping -> (2 <| (Pong -> GOOD))\n")
    report = check_conformance(model, "R1", env, first, Config())
    assert report.kind == "conformance"
    assert report.rule_ids == ("R1",)
    assert report.verdict == HOLDS


def test_patient_prefix_does_not_guarantee_the_response():
    # without a deadline of its own the agent may sit on the reply forever
    model = mini_model()
    env, first = agent_env("LAZY = busy?b -> Ping -> Pong -> LAZY\n")
    report = check_conformance(model, "R1", env, first, Config())
    assert report.verdict == VIOLATED


def test_missed_deadline_is_caught_with_a_minimal_trace():
    model = mini_model()
    env, first = agent_env("BAD = busy!true -> Ping -> WAIT(5) ; Pong -> BAD\n")
    report = check_conformance(model, "R1", env, first, Config())
    assert report.verdict == VIOLATED
    assert report.notes == ["the rule requires an event before more time may pass"]
    assert [fmt_event(e) for e in report.witness] == \
        ["busy.true", "Ping", "tock", "tock", "tock", "tock", "tock"]


def test_agent_must_declare_every_rule_channel():
    model = mini_model()
    env, first = parse_tcsp("channel Ping\nchannel Pong\nA = Ping -> A\n")
    with pytest.raises(ChannelMismatch):
        check_conformance(model, "R1", env, first, Config())
    env2, first2 = parse_tcsp(
        "channel Ping\nchannel Pong\nchannel busy : {0..1}\nA = Ping -> A\n")
    with pytest.raises(ChannelMismatch):
        check_conformance(model, "R1", env2, first2, Config())


def test_tight_bounds_degrade_to_inconclusive():
    model = mini_model()
    env, first = agent_env("GOOD = busy?b -> Ping -> Pong -> GOOD\n")
    report = check_conformance(model, "R1", env, first,
                               Config(max_tocks=0, max_depth=1))
    assert report.verdict == INCONCLUSIVE
    assert report.truncated
