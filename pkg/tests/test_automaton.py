import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibtape.automaton import (
    AcceptedAtEnd,
    Configuration,
    EngineFault,
    MachineState,
    Move,
    NonAcceptingAtEnd,
    Tape,
    TapeCell,
    TransitionRule,
    TransitionTable,
    UndefinedTransition,
    head_gaps,
    initial_configuration,
    max_head_gap,
    pass_end_gap,
    render_trace,
    run,
    step,
)
from fibtape.reverser import Q_ONE, Q_PENDING, Q_START, build_fib_machine

Z, O, B, L, RM = TapeCell.ZERO, TapeCell.ONE, TapeCell.BLANK, TapeCell.LEFT, TapeCell.RIGHT
R, S = Move.R, Move.S

words = st.text(alphabet="01", max_size=30)


@pytest.fixture(scope="module")
def machine():
    return build_fib_machine()


def replay(table, start, word):
    """Configurations visited by repeatedly applying ``step``, no sweep."""
    c = initial_configuration(start, word)
    seen = [c]
    while c.tape1.read is not RM:
        nxt = step(table, c)
        if isinstance(nxt, UndefinedTransition):
            break
        c = nxt
        seen.append(c)
    return seen


def test_cell_glyphs():
    assert [c.value for c in (B, L, RM)] == ["ε", "▷", "◁"]
    assert L.is_marker and RM.is_marker and not B.is_marker


def test_tape_invariants():
    t = Tape.of("01")
    assert t.cells == (L, Z, O, RM) and t.head == 1 and t.read is Z
    with pytest.raises(ValueError):
        Tape((Z, O, RM))
    with pytest.raises(ValueError):
        Tape((L, RM, Z, RM))
    with pytest.raises(ValueError):
        Tape((L, Z, RM), head=3)
    assert str(Tape.of("0εε")) == "▷0εε◁"


def test_tape_write_and_move():
    t = Tape.of("εε")
    assert t.write(Z).contents == (Z, B)
    assert t.move(R).head == 2 and t.move(S) is t
    with pytest.raises(EngineFault):
        Tape.of("", head=1).move(R)
    with pytest.raises(EngineFault):
        Tape.of("").write(Z)
    with pytest.raises(EngineFault):
        t.write(L)


def test_step_rule_1(machine):
    c = initial_configuration(Q_START, "01101")
    nxt = step(machine.table, c)
    assert nxt.state == Q_PENDING
    assert nxt.tape2.cells[1] is Z
    assert nxt.heads == (2, 1)
    assert nxt.tape1 == Tape(c.tape1.cells, 2)


def test_step_rule_2(machine):
    c = Configuration(Q_PENDING, Tape.of("01", head=2), Tape.of("0ε", head=1))
    nxt = step(machine.table, c)
    assert nxt.state == Q_ONE
    assert nxt.tape2.contents == (O, B)
    assert nxt.heads == (3, 2)


def test_step_undefined_on_second_zero(machine):
    c = Configuration(Q_PENDING, Tape.of("00", head=2), Tape.of("0ε", head=1))
    assert step(machine.table, c) == UndefinedTransition(2, Q_PENDING, Z, Z)


def test_table_is_deterministic():
    q = MachineState("q")
    rule = TransitionRule(q, Z, B, q, Z, Z, R, S)
    with pytest.raises(ValueError):
        TransitionTable([rule, TransitionRule(q, Z, B, q, Z, O, R, R)])


def test_table_rejects_clashing_state_names():
    a, b = MachineState("q"), MachineState("q", accepting=True)
    with pytest.raises(ValueError):
        TransitionTable([TransitionRule(a, Z, B, b, Z, Z, R, S)])


def test_engine_fault_on_marker_overwrite():
    q = MachineState("q", accepting=True)
    # a one-symbol input leaves head 2 on ◁ once it has moved; writing there is a table bug
    table = TransitionTable(
        [
            TransitionRule(q, Z, B, q, Z, Z, S, R),
            TransitionRule(q, Z, RM, q, Z, Z, R, S),
        ]
    )
    with pytest.raises(EngineFault):
        run(table, q, None, "0")
    with pytest.raises(EngineFault):
        step(table, Configuration(q, Tape.of("0"), Tape.of("ε", head=2)))


def test_engine_fault_past_right_marker():
    q = MachineState("q", accepting=True)
    table = TransitionTable([TransitionRule(q, Z, B, q, Z, B, S, R), TransitionRule(q, Z, RM, q, Z, RM, S, R)])
    with pytest.raises(EngineFault):
        run(table, q, None, "0")


def test_engine_fault_on_stationary_loop():
    q = MachineState("q", accepting=True)
    table = TransitionTable([TransitionRule(q, Z, B, q, Z, B, S, S)])
    with pytest.raises(EngineFault):
        run(table, q, None, "0")


def test_run_on_paper_example(machine):
    r = machine.run("01101")
    assert r.verdict == AcceptedAtEnd()
    assert r.rule_labels == [1, 2, 3, 1, 2]
    assert len(r.trace) == 7
    assert r.final.heads == (6, 6)


def test_run_rejects_double_zero(machine):
    r = machine.run("100")
    assert r.verdict == UndefinedTransition(3, Q_PENDING, Z, Z)
    assert r.final.tape1.head == 3


def test_run_on_empty_input(machine):
    r = machine.run("")
    assert r.verdict == NonAcceptingAtEnd(Q_START)
    assert len(r.trace) == 0


def test_run_default_acceptance_uses_state_flag(machine):
    r = run(machine.table, Q_START, None, "01101")
    assert r.accepted


@pytest.mark.parametrize("word, expected", [("01101", 2), ("10101101", 3)])
def test_max_head_gap(machine, word, expected):
    trace = machine.run(word).trace
    assert max_head_gap(trace) == expected
    # same answer through the generic per-step path
    assert max_head_gap(list(trace)) == expected


def test_max_head_gap_of_empty_trace(machine):
    assert max_head_gap([]) == 0
    assert max_head_gap(machine.run("").trace) == 0


def test_gaps_match_independent_replay(machine):
    word = "0110110101101"
    expected = [abs(a - b) for a, b in (c.heads for c in replay(machine.table, Q_START, word))]
    gaps = head_gaps(machine.run(word).trace)
    assert gaps[: len(expected)] == expected
    assert pass_end_gap(machine.run(word).trace) == expected[-1] == word.count("0")


def test_render_trace_steps(machine):
    blocks = render_trace(machine.run("01101")).split("\n\n")
    assert blocks[0] == "T1 ▷[0]1101◁\nT2 ▷0εεεε◁ (by 1)"
    assert blocks[4] == "T1 ▷[01101]◁\nT2 ▷101εε◁ (by 2)"
    assert render_trace(machine.run("")) == ""


@settings(max_examples=200)
@given(words)
def test_trace_invariants(word):
    m = build_fib_machine()
    r = m.run(word)
    configs = [r.trace.configuration(k) for k in range(len(r.trace) + 1)]
    assert configs[0] == initial_configuration(Q_START, word)
    assert configs[-1] == r.final
    for prev, cur, st_ in zip(configs, configs[1:], r.trace):
        assert cur.tape1.head >= prev.tape1.head
        assert cur.tape2.head >= prev.tape2.head
        assert cur.tape1.cells == prev.tape1.cells
        if st_.rule is not None:
            # replay through the pure step function
            assert step(m.table, prev) == cur
            assert st_.rule.move1 is R
        else:
            assert cur.tape2.head == prev.tape2.head + 1 and cur.tape2.cells == prev.tape2.cells
    rule_steps = sum(1 for s in r.trace if s.rule is not None)
    if r.accepted:
        assert rule_steps == len(word)
        assert len(r.trace) - rule_steps <= len(word) + 1
    pass_gaps = [c.tape1.head - c.tape2.head for c in configs[: rule_steps + 1]]
    assert all(g >= 0 for g in pass_gaps)
    assert pass_gaps == sorted(pass_gaps)


def test_trace_indexing(machine):
    trace = machine.run("101").trace
    assert trace[0].index == 1 and trace[-1].index == len(trace)
    assert [s.index for s in trace[1:3]] == [2, 3]
    with pytest.raises(IndexError):
        trace[len(trace)]
    with pytest.raises(IndexError):
        trace.configuration(len(trace) + 1)
