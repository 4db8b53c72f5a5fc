"""Acceptance gate: ten checks, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
Every check is oracle-backed: expected values come from table lookup or
software iteration, never from the circuits under test.
"""

import itertools
import random
import time

from mvlsynth.oracle import (check_equivalence, check_fsm_equivalence,
                             random_table, reference_half_adder)
from mvlsynth.sim import SimState, eval_combinational, load_config, reset_state
from mvlsynth.synth import (Strategy, build_decoder_1, build_decoder_m,
                            build_fabric_decoder, build_fabric_mux,
                            build_mux_1, build_mux_m, build_nary_dff,
                            build_nary_dlatch, compile_fsm, derive_config,
                            gate_stats, mux_block_count, synth_tables)
from mvlsynth.tables import FsmSpec, TruthTable
from mvlsynth.values import Radix

SUM3, CARRY3 = reference_half_adder(3)
STRATEGIES = (Strategy.DECODER, Strategy.MUX_TREE)


def _run(num, desc, bound, fn):
    start = time.perf_counter()
    ok = False
    try:
        fn()
        elapsed = time.perf_counter() - start
        assert elapsed < bound, (
            f"criterion {num} took {elapsed:.2f}s, bound {bound}s")
        ok = True
    finally:
        print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {desc}")


def _one_digit(nl, x):
    out, _ = eval_combinational(nl, [x])
    return out


def test_criterion_01():
    def body():
        nl = build_decoder_1(3)
        assert _one_digit(nl, 0) == (1, 0, 0)
        assert _one_digit(nl, 1) == (0, 1, 0)
        assert _one_digit(nl, 2) == (0, 0, 1)
        for n in range(2, 6):
            dec = build_decoder_1(n)
            for x in range(n):
                out = _one_digit(dec, x)
                assert sum(out) == 1 and out[x] == 1
    _run(1, "single digit decodes to a one-hot line", 1.0, body)


def test_criterion_02():
    def body():
        nl = build_decoder_m(3, 2)
        for x1, x0 in itertools.product(range(3), repeat=2):
            out, _ = eval_combinational(nl, [x1, x0])
            line = 3 * x1 + x0
            assert sum(out) == 1 and out[line] == 1
        out, _ = eval_combinational(nl, [2, 1])
        assert out.index(1) == 7
    _run(2, "two digits decode to one of nine lines", 1.0, body)


def test_criterion_03():
    def body():
        for strategy in STRATEGIES:
            nl = synth_tables([SUM3, CARRY3], strategy)
            for a, b in itertools.product(range(3), repeat=2):
                out, _ = eval_combinational(nl, [a, b])
                assert out == ((a + b) % 3, int(a + b >= 3))
            assert eval_combinational(nl, [1, 2])[0] == (0, 1)
            assert eval_combinational(nl, [2, 2])[0] == (1, 1)
    _run(3, "ternary half adder matches digit arithmetic", 1.0, body)


def test_criterion_04():
    def body():
        for n in range(2, 7):
            assert gate_stats(build_decoder_1(n)).tlg_count == n - 1
        assert mux_block_count(build_mux_m(3, 2)) == 4
        assert mux_block_count(build_mux_m(2, 4)) == 15
        for n, m in ((2, 2), (3, 3), (4, 2)):
            want = (n**m - 1) // (n - 1)
            assert mux_block_count(build_mux_m(n, m)) == want
    _run(4, "gate counts follow the size formulas", 1.0, body)


def test_criterion_05():
    def body():
        rng = random.Random(1234)
        for n, m in itertools.product((2, 3, 4), (1, 2)):
            for _ in range(50):
                tt = random_table(n, m, rng)
                for strategy in STRATEGIES:
                    nl = synth_tables([tt], strategy)
                    report = check_equivalence(nl, tt)
                    assert report.exhaustive and report.passed, (
                        n, m, strategy, report.summary())
    _run(5, "600 random tables synthesize exactly", 30.0, body)


def test_criterion_06():
    def body():
        for fabric in (build_fabric_decoder(3, 2), build_fabric_mux(3, 2)):
            for tt in (SUM3, CARRY3, SUM3):
                bits = derive_config(tt, fabric)
                report = check_equivalence(fabric, tt, config=bits)
                assert report.exhaustive and report.passed
    _run(6, "one fabric realizes sum, then carry, then sum again", 1.0, body)


def test_criterion_07():
    def body():
        for n in (3, 4):
            lat = build_nary_dlatch(n)
            gid = lat.state_latches[0]
            for prev, g, d in itertools.product(range(n), repeat=3):
                state = SimState(latches={gid: prev})
                out, state = eval_combinational(lat, [d, g], state)
                assert out == ((d if g != 0 else prev),)
                assert state.latches[gid] == (d if g != 0 else prev)
            dff = build_nary_dff(n)
            for g in range(n):
                state = reset_state(dff, [1])
                for d in range(n):
                    out, state = eval_combinational(dff, [d, g], state)
                    assert out == (1,)
    _run(7, "storage holds, loads, and ignores a steady clock", 1.0, body)


def test_criterion_08():
    def body():
        counter = FsmSpec(Radix(3), 1, 0,
                          (TruthTable.make(3, 1, (1, 2, 0)),))
        acc = FsmSpec(Radix(3), 1, 1, (TruthTable.from_function(
            Radix(3), 2, lambda s, i: (s + i) % 3),))
        rng = random.Random(99)
        for strategy in STRATEGIES:
            nl = compile_fsm(counter, strategy)
            seqs = [[()] * ln for ln in (1, 2, 3, 20)]
            assert check_fsm_equivalence(nl, counter, (0,), seqs).passed
            nl = compile_fsm(acc, strategy)
            seqs = [[(d,) for d in word]
                    for ln in (1, 2, 3)
                    for word in itertools.product(range(3), repeat=ln)]
            report = check_fsm_equivalence(nl, acc, (0,), seqs)
            assert report.passed and report.total_vectors == 102
            seqs = [[(rng.randrange(3),) for _ in range(20)]
                    for _ in range(100)]
            assert check_fsm_equivalence(nl, acc, (0,), seqs).passed
    _run(8, "machines track software iteration step for step", 10.0, body)


def test_criterion_09():
    def body():
        dec = build_decoder_1(2)
        for x in range(2):
            assert _one_digit(dec, x) == (int(x == 0), int(x == 1))
        mux = build_mux_1(2)
        for i1, i0, s in itertools.product(range(2), repeat=3):
            out, _ = eval_combinational(mux, [i1, i0, s])
            assert out == ((i1 if s else i0),)
        s2, c2 = reference_half_adder(2)
        for strategy in STRATEGIES:
            nl = synth_tables([s2, c2], strategy)
            for a, b in itertools.product(range(2), repeat=2):
                assert eval_combinational(nl, [a, b])[0] == (a ^ b, a & b)
        dff = build_nary_dff(2)
        # every reachable (master, slave) pair under every (d, g) input
        for qm, qs, d, g in itertools.product(range(2), repeat=4):
            state = reset_state(dff, [qs])
            if qm != qs:
                out, state = eval_combinational(dff, [qm, 0], state)
                assert out == (qs,)
            out, state = eval_combinational(dff, [d, g], state)
            assert out == ((qm if g else qs),)
    _run(9, "radix 2 collapses to ordinary boolean gear", 1.0, body)


def test_criterion_10():
    def body():
        detected = 0
        flips = 0
        for fabric in (build_fabric_decoder(3, 2), build_fabric_mux(3, 2)):
            bits = derive_config(SUM3, fabric)
            assert check_equivalence(fabric, SUM3, config=bits).passed
            for i in range(len(bits.bits)):
                flips += 1
                report = check_equivalence(fabric, SUM3,
                                           config=bits.flipped(i))
                # exhaustive, so a passing flip is proven behavior-identical
                assert report.exhaustive
                if not report.passed:
                    detected += 1
        assert flips == 54
        assert detected == 54
    _run(10, "every single configuration bit flip is caught", 5.0, body)
