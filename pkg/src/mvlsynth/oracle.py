"""Brute-force references and equivalence checking.

Nothing here looks inside a netlist: tables are evaluated by lookup,
machines by software iteration, and netlists only through the simulator.
Exhaustive sweeps are used whenever the input space fits under a cap;
otherwise seeded random sampling with the seed recorded in the report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .netlist import Netlist
from .sim import Fault, SimFaultError, SimState, eval_vectors, load_config, \
    reset_state, step_sequential
from .tables import ConfigBitstream, FsmSpec, TruthTable
from .values import RadixLike, as_radix, tt_digits, tt_index

DEFAULT_CAP = 6561  # 3^8: largest space still swept exhaustively
DEFAULT_SEED = 20240917


@dataclass(frozen=True)
class Mismatch:
    inputs: tuple
    expected: tuple[int, ...]
    got: Union[tuple[int, ...], Fault]

    def describe(self) -> str:
        got = self.got.describe() if isinstance(self.got, Fault) else self.got
        return f"inputs {self.inputs}: expected {self.expected}, got {got}"


@dataclass(frozen=True)
class EquivalenceReport:
    total_vectors: int
    mismatches: tuple[Mismatch, ...]
    exhaustive: bool = True
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        ok = self.total_vectors - len(self.mismatches)
        verdict = "PASS" if self.passed else "FAIL"
        mode = "" if self.exhaustive else f" (sampled, seed {self.seed})"
        return f"{ok}/{self.total_vectors} vectors, {verdict}{mode}"


def oracle_eval(tt: TruthTable, inputs: Sequence[int]) -> int:
    """Pure table lookup; the ground truth for every combinational check."""
    return tt.lookup(inputs)


def check_equivalence(nl: Netlist, tt: TruthTable,
                      config: Optional[ConfigBitstream] = None,
                      cap: int = DEFAULT_CAP,
                      seed: int = DEFAULT_SEED) -> EquivalenceReport:
    """Compare a single-output netlist against a table on its full domain.

    A configuration bitstream is required exactly when the netlist has
    configuration latches. Simulator faults count as mismatches.
    """
    n = tt.radix.n
    if nl.clock is not None or nl.state_latches:
        raise ValueError("equivalence sweep needs a combinational netlist")
    if len(nl.outputs) != 1:
        raise ValueError("netlist must have exactly one output")
    if nl.input_radixes() != [n] * tt.arity:
        raise ValueError(
            f"netlist inputs {nl.input_radixes()} do not match a radix-{n} "
            f"arity-{tt.arity} table")
    if bool(nl.latch_order) != (config is not None):
        if config is None:
            raise ValueError("netlist has configuration latches; config required")
        raise ValueError("config given for a netlist without latches")

    state = SimState()
    if config is not None:
        load_config(nl, config, state)

    space = n**tt.arity
    if space <= cap:
        vectors = [tt_digits(k, tt.radix, tt.arity) for k in range(space)]
        exhaustive, used_seed = True, None
    else:
        rng = random.Random(seed)
        vectors = [tuple(rng.randrange(n) for _ in range(tt.arity))
                   for _ in range(cap)]
        exhaustive, used_seed = False, seed

    results = eval_vectors(nl, vectors, state)
    mismatches = []
    for vec, got in zip(vectors, results):
        expected = (tt.entries[tt_index(vec, tt.radix)],)
        if got != expected:
            mismatches.append(Mismatch(vec, expected, got))
    mismatches.sort(key=lambda mm: tt_index(mm.inputs, tt.radix))
    return EquivalenceReport(len(vectors), tuple(mismatches),
                             exhaustive, used_seed)


def reference_half_adder(radix: RadixLike) -> tuple[TruthTable, TruthTable]:
    """Arithmetic ground truth: digit sum modulo N and its carry-out."""
    r = as_radix(radix)
    n = r.n
    sum_tt = TruthTable.from_function(r, 2, lambda a, b: (a + b) % n)
    carry_tt = TruthTable.from_function(r, 2, lambda a, b: int(a + b >= n))
    return sum_tt, carry_tt


def check_fsm_equivalence(nl: Netlist, spec: FsmSpec, reset: Sequence[int],
                          input_seqs: Sequence[Sequence[Sequence[int]]],
                          ) -> EquivalenceReport:
    """Drive the compiled machine through each input sequence and compare
    every step's outputs against software iteration of the tables.

    A mismatch records the sequence consumed up to and including the
    failing step; a fault abandons the rest of that sequence.
    """
    expected_outs = (spec.state_arity if spec.output is None
                     else len(spec.output))
    if len(nl.inputs) != spec.input_arity or len(nl.outputs) != expected_outs:
        raise ValueError("netlist ports do not match the machine spec")

    total = 0
    mismatches = []
    for seq in input_seqs:
        state = reset_state(nl, reset)
        soft = tuple(reset)
        for t, ins in enumerate(seq):
            ins = tuple(ins)
            total += 1
            soft = spec.step(soft, ins)
            expected = spec.observe(soft, ins)
            trace = tuple(tuple(s) for s in seq[:t + 1])
            try:
                got, state = step_sequential(nl, ins, state)
            except SimFaultError as e:
                mismatches.append(Mismatch(trace, expected, e.fault))
                break
            if got != expected:
                mismatches.append(Mismatch(trace, expected, got))
    return EquivalenceReport(total, tuple(mismatches))


def random_table(radix: RadixLike, arity: int,
                 rng: Optional[random.Random] = None) -> TruthTable:
    """Uniformly random truth table; pass a seeded Random for reproducibility."""
    r = as_radix(radix)
    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    entries = [rng.randrange(r.n) for _ in range(r.n**arity)]
    return TruthTable(r, arity, tuple(entries))
