"""Level-sensitive latch and master-slave flip-flop behavior."""

import pytest

from mvlsynth.sim import (FaultKind, SimFaultError, SimState,
                          eval_combinational, reset_state)
from mvlsynth.synth import build_nary_dff, build_nary_dlatch


@pytest.mark.parametrize("n", [3, 4])
def test_latch_hold_and_load_exhaustive(n):
    nl = build_nary_dlatch(n)
    for g in range(n):
        for d in range(n):
            for prev in range(n):
                state = reset_state(nl, [prev])
                out, _ = eval_combinational(nl, [d, g], state)
                want = prev if g == 0 else d
                assert out == (want,), (g, d, prev)


def test_latch_named_cases():
    nl = build_nary_dlatch(3)
    out, _ = eval_combinational(nl, [1, 0], reset_state(nl, [2]))
    assert out == (2,)                       # gate 0 keeps the old value
    out, _ = eval_combinational(nl, [1, 2], reset_state(nl, [0]))
    assert out == (1,)                       # any nonzero gate loads d
    for v in range(3):
        out, _ = eval_combinational(nl, [v, 1], reset_state(nl, [v]))
        assert out == (v,)


def test_latch_requires_reset():
    nl = build_nary_dlatch(3)
    with pytest.raises(SimFaultError) as err:
        eval_combinational(nl, [1, 1], SimState())
    assert err.value.fault.kind is FaultKind.UNINITIALIZED_LATCH


def test_latch_state_persists_across_evaluations():
    nl = build_nary_dlatch(3)
    state = reset_state(nl, [0])
    out, state = eval_combinational(nl, [2, 1], state)   # load 2
    assert out == (2,)
    out, state = eval_combinational(nl, [1, 0], state)   # hold
    assert out == (2,)
    out, state = eval_combinational(nl, [1, 2], state)   # load 1
    assert out == (1,)


def test_flip_flop_holds_under_constant_gate():
    nl = build_nary_dff(3)
    for g in range(3):
        state = reset_state(nl, [1])
        for d in (0, 2, 1, 2, 0):
            out, state = eval_combinational(nl, [d, g], state)
            assert out == (1,), (g, d)


def test_flip_flop_captures_on_rising_gate():
    nl = build_nary_dff(3)
    state = reset_state(nl, [0])
    out, state = eval_combinational(nl, [2, 0], state)
    assert out == (0,)                       # still holding
    out, state = eval_combinational(nl, [2, 1], state)
    assert out == (2,)                       # captured on 0 -> nonzero
    out, state = eval_combinational(nl, [0, 1], state)
    assert out == (2,)                       # d changes are ignored while high
    out, state = eval_combinational(nl, [0, 0], state)
    assert out == (2,)


def test_flip_flop_pulse_sequence():
    # one full pulse per data value: q tracks 0, 1, 2
    nl = build_nary_dff(4)
    state = reset_state(nl, [3])
    got = []
    for d in (0, 1, 2):
        _, state = eval_combinational(nl, [d, 0], state)
        out, state = eval_combinational(nl, [d, 2], state)
        got.append(out[0])
    assert got == [0, 1, 2]


def test_nonzero_gate_level_changes_are_not_edges():
    nl = build_nary_dff(3)
    state = reset_state(nl, [0])
    _, state = eval_combinational(nl, [2, 0], state)
    out, state = eval_combinational(nl, [2, 1], state)
    assert out == (2,)
    # 1 -> 2 stays in the transparent-slave phase: no new capture
    out, state = eval_combinational(nl, [1, 2], state)
    assert out == (2,)


def test_reset_validates_digits():
    nl = build_nary_dlatch(3)
    with pytest.raises(ValueError):
        reset_state(nl, [3])
    with pytest.raises(ValueError):
        reset_state(nl, [0, 0])
