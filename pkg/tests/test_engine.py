import pytest

from sleec.errors import UnguardedRecursion
from sleec.tockcsp import (
    TOCK, TERMINATION, Comm, SKIP, STOP,
    ELit, EVar, ECmp,
    mk_deadline, mk_extchoice, mk_genpar, mk_if, mk_input, mk_interleave,
    mk_interrupt, mk_prefix, mk_ref, mk_seq, mk_timed_interrupt, mk_wait,
    ProcEnv,
)
from sleec.tockcsp.engine import initials, step, transitions


def env_ab():
    env = ProcEnv()
    env.declare_channel("a")
    env.declare_channel("b")
    env.declare_channel("m", (1, 2, 3))
    return env


def a(cont=SKIP):
    return mk_prefix("a", None, cont)


def b(cont=SKIP):
    return mk_prefix("b", None, cont)


def test_skip_terminates_and_refuses_time():
    env = env_ab()
    assert transitions(SKIP, env) == ((TERMINATION, STOP),)


def test_stop_only_lets_time_pass():
    env = env_ab()
    assert transitions(STOP, env) == ((TOCK, STOP),)


def test_prefix_is_patient():
    env = env_ab()
    t = a()
    assert initials(t, env) == {Comm("a"), TOCK}
    assert step(t, TOCK, env) is t  # waiting does not change the offer
    assert step(t, Comm("a"), env) is SKIP


def test_wait_counts_down_then_terminates():
    env = env_ab()
    t = mk_wait(2)
    assert initials(t, env) == {TOCK}
    t = step(t, TOCK, env)
    assert initials(t, env) == {TOCK}
    t = step(t, TOCK, env)
    assert t is SKIP  # Wait(0) is Skip


def test_deadline_zero_strips_tock():
    env = env_ab()
    t = mk_deadline(0, a())
    assert initials(t, env) == {Comm("a")}


def test_deadline_counts_down_and_first_event_discharges():
    env = env_ab()
    t = mk_deadline(2, a(b()))
    assert TOCK in initials(t, env)
    t2 = step(step(t, TOCK, env), TOCK, env)
    assert initials(t2, env) == {Comm("a")}  # budget used up
    after = step(t2, Comm("a"), env)
    # b is no longer under the deadline: time may pass freely again
    assert initials(after, env) == {Comm("b"), TOCK}


def test_input_branches_over_the_declared_domain():
    env = env_ab()
    t = mk_input("m", "x", None, mk_if(ECmp(">", EVar("x"), ELit(1)), a(), b()))
    succ = dict((e, s) for (e, s) in transitions(t, env) if e is not TOCK)
    assert set(succ) == {Comm("m", 1), Comm("m", 2), Comm("m", 3)}
    assert initials(succ[Comm("m", 1)], env) == {Comm("b"), TOCK}
    assert initials(succ[Comm("m", 3)], env) == {Comm("a"), TOCK}


def test_input_respects_pinned_values_and_restriction():
    env = env_ab()
    t = mk_input("m", "x", None, SKIP)
    pinned = env.with_pinned({"m": 2})
    assert {e for (e, _s) in transitions(t, pinned) if e is not TOCK} == {Comm("m", 2)}
    r = mk_input("m", "x", (1, 3), SKIP)
    assert {e for (e, _s) in transitions(r, env) if e is not TOCK} == {
        Comm("m", 1), Comm("m", 3)}


def test_external_choice_resolves_on_events_not_on_tock():
    env = env_ab()
    t = mk_extchoice([a(b()), b(a())])
    assert initials(t, env) == {Comm("a"), Comm("b"), TOCK}
    assert step(t, TOCK, env) is t  # both branches wait; choice stays open
    assert step(t, Comm("a"), env) is b()


def test_external_choice_requires_all_branches_to_wait():
    env = env_ab()
    t = mk_extchoice([a(), mk_deadline(0, b())])
    assert TOCK not in initials(t, env)


def test_seq_splices_continuation_on_termination():
    env = env_ab()
    t = mk_seq(a(), b())
    t2 = step(t, Comm("a"), env)
    # a's Skip terminates silently: b is immediately available
    assert initials(t2, env) == {Comm("b"), TOCK}


def test_interleave_syncs_tock_and_joint_termination():
    env = env_ab()
    t = mk_interleave(a(), b())
    assert initials(t, env) == {Comm("a"), Comm("b"), TOCK}
    t2 = step(t, Comm("a"), env)  # left side is now Skip
    assert TOCK not in initials(t2, env)  # Skip refuses time, so the pair does
    t3 = step(t2, Comm("b"), env)
    assert transitions(t3, env) == ((TERMINATION, STOP),)


def test_genpar_synchronizes_shared_events():
    env = env_ab()
    t = mk_genpar(a(b()), frozenset(["b"]), b(SKIP))
    assert initials(t, env) == {Comm("a"), TOCK}  # b must be agreed by both
    t2 = step(t, Comm("a"), env)
    assert Comm("b") in initials(t2, env)
    t3 = step(t2, Comm("b"), env)
    assert TERMINATION in initials(t3, env)


def test_interrupt_handler_takes_over_and_timer_disarms():
    env = env_ab()
    t = mk_interrupt(a(a()), b())
    t2 = step(t, Comm("a"), env)
    assert Comm("b") in initials(t2, env)  # handler stays armed
    t3 = step(t2, Comm("b"), env)
    assert initials(t3, env) == {TERMINATION}  # handler body replaced the rest


def test_timed_interrupt_passes_control_after_exactly_d():
    env = env_ab()
    t = mk_timed_interrupt(a(), 2, b())
    assert step(t, Comm("a"), env) is not None
    t2 = step(t, TOCK, env)
    assert Comm("a") in initials(t2, env)
    t3 = step(t2, TOCK, env)  # budget exhausted: b took over
    assert initials(t3, env) == {Comm("b"), TOCK}


def test_timed_interrupt_ends_when_body_terminates():
    env = env_ab()
    t = mk_timed_interrupt(a(), 5, b())
    t2 = step(t, Comm("a"), env)  # body is Skip now
    assert TERMINATION in initials(t2, env)
    assert Comm("b") not in initials(t2, env)


def test_reference_expansion_and_recursion():
    env = env_ab()
    env.define("P", (), a(mk_ref("P")))
    env.check_guarded()
    t = mk_ref("P")
    assert step(step(t, Comm("a"), env), Comm("a"), env) is not None


def test_unguarded_recursion_is_rejected():
    env = env_ab()
    env.define("P", (), mk_ref("P"))
    with pytest.raises(UnguardedRecursion):
        env.check_guarded()


def test_unguarded_recursion_through_seq_left_is_rejected():
    env = env_ab()
    env.define("P", (), mk_seq(mk_ref("Q"), a()))
    env.define("Q", (), mk_extchoice([a(), mk_seq(SKIP, mk_ref("P"))]))
    with pytest.raises(UnguardedRecursion):
        env.check_guarded()


def test_time_is_deterministic_across_small_terms():
    env = env_ab()
    samples = [
        a(), mk_extchoice([a(), b()]), mk_seq(a(), b()),
        mk_interleave(a(), b()), mk_deadline(1, a()),
        mk_timed_interrupt(a(), 1, b()), mk_wait(3),
        mk_genpar(a(b()), frozenset(["a", "b"]), a(b())),
    ]
    for t in samples:
        tocks = [s for (e, s) in transitions(t, env) if e is TOCK]
        assert len(tocks) <= 1
