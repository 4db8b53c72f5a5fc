"""Circuit constructions: decoders, multiplexers, function synthesis,
reconfigurable fabrics, storage elements, and FSM compilation.

All builders are pure functions from parameters to fresh Netlists. Digit
tuples are most-significant-first everywhere; truth table row k corresponds
to the input tuple with positional index k. Multi-level "sums" are realized
as switch wiring onto a shared net, never as arithmetic.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .netlist import GateType, Netlist, NetlistBuilder
from .tables import ConfigBitstream, FsmSpec, TruthTable
from .values import RadixLike, as_radix


class Strategy(enum.Enum):
    """How a truth table becomes gates."""

    DECODER = "decoder"      # one-hot decode, OR groups, switched constants
    MUX_TREE = "mux"         # selector tree fed by constants
    MUX_FLAT = "mux-flat"    # single decoder driving one switch per row

    @property
    def is_mux(self) -> bool:
        return self is not Strategy.DECODER

    @property
    def tree(self) -> bool:
        return self is Strategy.MUX_TREE


# -- primitive blocks (emitted into a shared builder) -------------------------


def _emit_decoder_1(b: NetlistBuilder, prefix: str, x: str, n: int) -> list[str]:
    """One-hot decode of a single radix-n net: returns nets for b_0..b_{n-1}.

    y_t = (x > t) for thresholds n-2 down to 0; the boundary lines collapse
    to a plain inverter (b_0) and a direct wire (b_{n-1}).
    """
    y = {}
    for t in range(n - 2, -1, -1):
        y[t] = b.tlg(f"{prefix}tlg{t}", x, t)
    outs = [b.not_(f"{prefix}not0", y[0])]
    for v in range(1, n - 1):
        ybar = b.not_(f"{prefix}not{v}", y[v])
        outs.append(b.and_(f"{prefix}and{v}", [ybar, y[v - 1]]))
    outs.append(y[n - 2])
    return outs


def _emit_decoder_m(b: NetlistBuilder, prefix: str, xs: Sequence[str],
                    n: int) -> list[str]:
    """One-hot decode of m digits (nets given MS-first) into n^m lines.

    Line k is the AND of the per-digit lines selected by k's digits; a
    single digit degenerates to the plain one-digit decoder.
    """
    m = len(xs)
    if m == 1:
        return _emit_decoder_1(b, prefix, xs[0], n)
    per = []
    for j in range(m):  # j = positional weight
        per.append(_emit_decoder_1(b, f"{prefix}d{j}/", xs[m - 1 - j], n))
    outs = []
    for k in range(n**m):
        ins = [per[j][(k // n**j) % n] for j in range(m - 1, -1, -1)]
        outs.append(b.and_(f"{prefix}and{k}", ins))
    return outs


def _emit_mux_1(b: NetlistBuilder, prefix: str, data: Sequence[str],
                sel: str, n: int) -> str:
    """n-way selector: decode sel, switch data[v] onto one shared output."""
    ctl = _emit_decoder_1(b, f"{prefix}dec/", sel, n)
    y = b.net(n)
    for v in range(n):
        b.switch(f"{prefix}sw{v}", data[v], ctl[v], y)
    return y


def _emit_mux_m(b: NetlistBuilder, prefix: str, data: Sequence[str],
                sels: Sequence[str], n: int, tree: bool) -> str:
    """n^m-way selector over data nets indexed 0..n^m-1 (selects MS-first).

    Tree mode: stage j collapses groups of n using select digit j (the
    least significant digit switches first). Flat mode: one m-digit decoder
    and a single rail of switches.
    """
    m = len(sels)
    if tree:
        layer = list(data)
        for j in range(m):
            s = sels[m - 1 - j]  # stage j consumes digit of weight j
            layer = [
                _emit_mux_1(b, f"{prefix}s{j}m{q}/", layer[q * n:(q + 1) * n], s, n)
                for q in range(len(layer) // n)
            ]
        return layer[0]
    ctl = _emit_decoder_m(b, f"{prefix}dec/", sels, n)
    y = b.net(n)
    for k in range(n**m):
        b.switch(f"{prefix}sw{k}", data[k], ctl[k], y)
    return y


def _emit_table(b: NetlistBuilder, prefix: str, ins: Sequence[str],
                tt: TruthTable, strategy: Strategy,
                shared_decode: Optional[list[str]] = None) -> str:
    """Realize one truth table over existing input nets; returns the output net.

    Decoder strategy groups one-hot lines per output level and switches the
    level constant onto the output; only levels that actually occur get a
    control. Mux strategies feed the table entries as constants into a
    selector driven by the inputs.
    """
    n = tt.radix.n
    if strategy.is_mux:
        data = [b.const(v, n) for v in tt.entries]
        return _emit_mux_m(b, prefix, data, ins, n, strategy.tree)
    lines = shared_decode
    if lines is None:
        lines = _emit_decoder_m(b, f"{prefix}dec/", ins, n)
    y = b.net(n)
    for level in range(n):
        rows = [lines[k] for k, e in enumerate(tt.entries) if e == level]
        if not rows:
            continue
        ctl = b.or_(f"{prefix}or{level}", rows)
        b.switch(f"{prefix}sw{level}", b.const(level, n), ctl, y)
    return y


def _function_inputs(b: NetlistBuilder, n: int, m: int) -> list[str]:
    if m == 1:
        return [b.add_input("x", n)]
    return [b.add_input(f"x{j}", n) for j in range(m - 1, -1, -1)]


# -- public builders ----------------------------------------------------------


def build_decoder_1(radix: RadixLike) -> Netlist:
    """One radix-N input x to N one-hot binary outputs b_0..b_{N-1}."""
    n = as_radix(radix).n
    b = NetlistBuilder()
    x = b.add_input("x", n)
    for k, net in enumerate(_emit_decoder_1(b, "dec/", x, n)):
        b.add_output(f"b{k}", net)
    return b.finish()


def build_decoder_m(radix: RadixLike, m: int) -> Netlist:
    """m radix-N inputs (MS-first) to N^m one-hot outputs; m=1 is build_decoder_1."""
    n = as_radix(radix).n
    if m < 1:
        raise ValueError("m must be >= 1")
    b = NetlistBuilder()
    xs = _function_inputs(b, n, m)
    for k, net in enumerate(_emit_decoder_m(b, "dec/", xs, n)):
        b.add_output(f"b{k}", net)
    return b.finish()


def build_mux_1(radix: RadixLike) -> Netlist:
    """N-to-one selector: output y equals data input i_s for select s."""
    n = as_radix(radix).n
    b = NetlistBuilder()
    data = [b.add_input(f"i{k}", n) for k in range(n - 1, -1, -1)]
    data.reverse()  # i_0 .. i_{n-1}, ports declared MS-first
    s = b.add_input("s", n)
    b.add_output("y", _emit_mux_1(b, "", data, s, n))
    return b.finish()


def build_mux_m(radix: RadixLike, m: int, tree: bool = True) -> Netlist:
    """N^m-to-one selector with m select digits; y = i_k at k = index(selects)."""
    n = as_radix(radix).n
    if m < 1:
        raise ValueError("m must be >= 1")
    b = NetlistBuilder()
    data = [b.add_input(f"i{k}", n) for k in range(n**m - 1, -1, -1)]
    data.reverse()
    sels = [b.add_input(f"s{j}", n) for j in range(m - 1, -1, -1)]
    b.add_output("y", _emit_mux_m(b, "", data, sels, n, tree))
    return b.finish()


def synth_tables(tts: Sequence[TruthTable], strategy: Strategy,
                 share_decoder: bool = True) -> Netlist:
    """Multi-output synthesis over a common input tuple.

    All tables must agree on radix and arity. With the decoder strategy the
    one-hot stage is built once and shared across outputs (share_decoder
    turns that off). Output ports are y0..y{T-1}, or just y for one table.
    """
    if not tts:
        raise ValueError("need at least one table")
    first = tts[0]
    for tt in tts:
        if tt.radix != first.radix or tt.arity != first.arity:
            raise ValueError("tables differ in radix or arity")
    n = first.radix.n
    b = NetlistBuilder()
    ins = _function_inputs(b, n, first.arity)
    shared = None
    if strategy is Strategy.DECODER and share_decoder and len(tts) > 1:
        shared = _emit_decoder_m(b, "dec/", ins, n)
    for t, tt in enumerate(tts):
        prefix = "" if len(tts) == 1 else f"f{t}/"
        y = _emit_table(b, prefix, ins, tt, strategy, shared)
        b.add_output("y" if len(tts) == 1 else f"y{t}", y)
    return b.finish()


def synth_decoder_based(tt: TruthTable) -> Netlist:
    """Realize one table as decode, per-level OR groups, switched constants."""
    return synth_tables([tt], Strategy.DECODER)


def synth_mux_based(tt: TruthTable, tree: bool = True) -> Netlist:
    """Realize one table as a selector with the table entries as constants."""
    return synth_tables([tt], Strategy.MUX_TREE if tree else Strategy.MUX_FLAT)


def build_fabric_decoder(radix: RadixLike, m: int) -> Netlist:
    """Reconfigurable decoder-style block for any radix-N function of m digits.

    Each output level k owns one configuration latch per one-hot line; the
    ORed AND terms form the level control c_k. N^(m+1) latches, ordered
    level-major then line-minor.
    """
    n = as_radix(radix).n
    if m < 1:
        raise ValueError("m must be >= 1")
    b = NetlistBuilder()
    ins = _function_inputs(b, n, m)
    lines = _emit_decoder_m(b, "dec/", ins, n)
    y = b.net(n)
    for k in range(n):
        terms = []
        for i, line in enumerate(lines):
            q = b.config_latch(f"lvl{k}/d{i}")
            terms.append(b.and_(f"lvl{k}/and{i}", [line, q]))
        ctl = b.or_(f"lvl{k}/or", terms)
        b.switch(f"lvl{k}/sw", b.const(k, n), ctl, y)
    b.add_output("y", y)
    b.fabric_kind = "decoder"
    return b.finish()


def build_fabric_mux(radix: RadixLike, m: int, tree: bool = True) -> Netlist:
    """Reconfigurable selector-style block: every selector data input is fed
    by a latch-controlled bank of level constants. N^(m+1) latches, ordered
    input-major then level-minor.
    """
    n = as_radix(radix).n
    if m < 1:
        raise ValueError("m must be >= 1")
    b = NetlistBuilder()
    ins = _function_inputs(b, n, m)
    data = []
    for k in range(n**m):
        net = b.net(n)
        for v in range(n):
            q = b.config_latch(f"selb{k}/d{v}")
            b.switch(f"selb{k}/sw{v}", b.const(v, n), q, net)
        data.append(net)
    b.add_output("y", _emit_mux_m(b, "", data, ins, n, tree))
    b.fabric_kind = "mux"
    return b.finish()


def derive_config(tt: TruthTable, fabric: Union[Netlist, str]) -> ConfigBitstream:
    """Bits programming a fabric to compute tt, aligned to its latch_order.

    Decoder fabric: level k's latch for line i is 1 iff tt maps row i to k.
    Mux fabric: input k's latch for level v is 1 iff tt's row k equals v.
    Accepts the fabric netlist (dimensions are checked) or just its kind.
    """
    n = tt.radix.n
    rows = n**tt.arity
    if isinstance(fabric, str):
        kind = fabric
    else:
        kind = fabric.fabric_kind
        if kind is None:
            raise ValueError("netlist is not a reconfigurable fabric")
        if len(fabric.latch_order) != n * rows:
            raise ValueError(
                f"table needs {n * rows} latches; fabric has "
                f"{len(fabric.latch_order)}")
        if fabric.input_radixes() != [n] * tt.arity:
            raise ValueError("table radix/arity do not match fabric inputs")
    if kind == "decoder":
        bits = [1 if tt.entries[i] == k else 0
                for k in range(n) for i in range(rows)]
    elif kind == "mux":
        bits = [1 if tt.entries[k] == v else 0
                for k in range(rows) for v in range(n)]
    else:
        raise ValueError(f"unknown fabric kind {kind!r}")
    return ConfigBitstream(tuple(bits))


# -- storage elements ---------------------------------------------------------


def _emit_dlatch(b: NetlistBuilder, prefix: str, d: str, load: str,
                 hold: str, n: int, out: Optional[str] = None) -> tuple[str, str]:
    """Level-sensitive store: transparent while `load`=1, holding while
    `hold`=1 (callers pass complementary controls). Returns (output net,
    storage gate id)."""
    m = out if out is not None else b.net(n)
    q = b.nary_dlatch(f"{prefix}lat", m, n)
    b.switch(f"{prefix}sw_d", d, load, m)
    b.switch(f"{prefix}sw_h", q, hold, m)
    return m, f"{prefix}lat"


def build_nary_dlatch(radix: RadixLike) -> Netlist:
    """Radix-N D-latch: q follows d while gate g is nonzero, else holds."""
    n = as_radix(radix).n
    b = NetlistBuilder()
    d = b.add_input("d", n)
    g = b.add_input("g", n)
    en = b.tlg("en_tlg", g, 0)         # binary enable: g > 0
    enb = b.not_("en_not", en)
    q, lat = _emit_dlatch(b, "", d, en, enb, n)
    b.add_state_group([lat])
    b.add_output("q", q)
    return b.finish()


def _emit_dff(b: NetlistBuilder, prefix: str, d: str, en: str, enb: str,
              n: int, out: Optional[str] = None) -> tuple[str, tuple[str, str]]:
    """Master-slave store capturing d when the gate leaves 0.

    Master is transparent while the gate is 0, slave while it is nonzero;
    en/enb are the shared binary gate and its complement. The slave reads
    the master's stored value (identical to its transparent node whenever
    the slave conducts), which keeps feedback paths through the committed
    element rather than through a combinational switch chain.
    """
    _, mlat = _emit_dlatch(b, f"{prefix}m/", d, enb, en, n)
    qm = b.gates[mlat].pins["q"]
    m2, slat = _emit_dlatch(b, f"{prefix}s/", qm, en, enb, n, out)
    return m2, (mlat, slat)


def build_nary_dff(radix: RadixLike) -> Netlist:
    """Radix-N flip-flop: output updates to d only when g rises from 0."""
    n = as_radix(radix).n
    b = NetlistBuilder()
    d = b.add_input("d", n)
    g = b.add_input("g", n)
    en = b.tlg("en_tlg", g, 0)
    enb = b.not_("en_not", en)
    q, lats = _emit_dff(b, "", d, en, enb, n)
    b.add_state_group(lats)
    b.add_output("q", q)
    return b.finish()


# -- state machines -----------------------------------------------------------


def compile_fsm(spec: FsmSpec, strategy: Strategy) -> Netlist:
    """Synthesize an FsmSpec into flip-flops plus next-state logic.

    One flip-flop per state digit (MS-first), clocked by a dedicated net
    that the sequential stepper drives; the next-state and output functions
    see the state digits followed by the machine inputs. With the decoder
    strategy all tables share a single one-hot stage. Outputs are the
    declared output tables, or the state digits themselves.
    """
    n = spec.radix.n
    b = NetlistBuilder()

    state_nets = []
    for i in range(spec.state_arity):
        state_nets.append(b.net(n, nid=f"q{i}"))
    input_nets = [b.add_input(f"i{j}", n)
                  for j in range(spec.input_arity - 1, -1, -1)]
    clk = b.net(n, nid="clk")
    b.add_gate("clk", GateType.INPUT, {"y": clk}, radix=n)
    b.clock = clk
    en = b.tlg("clk_tlg", clk, 0)
    enb = b.not_("clk_not", en)

    combined = state_nets + input_nets
    shared = None
    if strategy is Strategy.DECODER:
        shared = _emit_decoder_m(b, "dec/", combined, n)

    for i, tt in enumerate(spec.transition):
        d = _emit_table(b, f"f{i}/", combined, tt, strategy, shared)
        _, lats = _emit_dff(b, f"dff{i}/", d, en, enb, n, out=state_nets[i])
        b.add_state_group(lats)

    if spec.output is None:
        for i in range(spec.state_arity):
            b.add_output(f"q{i}", state_nets[i])
    else:
        for t, tt in enumerate(spec.output):
            y = _emit_table(b, f"o{t}/", combined, tt, strategy, shared)
            b.add_output(f"y{t}", y)
    return b.finish()


# -- accounting ---------------------------------------------------------------


@dataclass(frozen=True)
class GateStats:
    """Per-kind gate counts for one netlist."""

    tlg_count: int = 0
    and_count: int = 0
    or_count: int = 0
    not_count: int = 0
    switch_count: int = 0
    nary_inverter_count: int = 0
    latch_count: int = 0        # configuration bits
    dlatch_count: int = 0       # radix-N storage
    const_count: int = 0
    input_count: int = 0
    output_count: int = 0

    def lines(self) -> list[str]:
        pairs = [
            ("tlg", self.tlg_count), ("and", self.and_count),
            ("or", self.or_count), ("not", self.not_count),
            ("switch", self.switch_count),
            ("nary_inverter", self.nary_inverter_count),
            ("config_latch", self.latch_count),
            ("nary_dlatch", self.dlatch_count), ("const", self.const_count),
            ("input", self.input_count), ("output", self.output_count),
        ]
        return [f"{name:<14} {count}" for name, count in pairs]


_STAT_FIELDS = {
    GateType.TLG: "tlg_count",
    GateType.AND: "and_count",
    GateType.OR: "or_count",
    GateType.NOT: "not_count",
    GateType.SWITCH: "switch_count",
    GateType.NARY_INVERTER: "nary_inverter_count",
    GateType.CONFIG_LATCH: "latch_count",
    GateType.NARY_DLATCH: "dlatch_count",
    GateType.CONST: "const_count",
    GateType.INPUT: "input_count",
    GateType.OUTPUT: "output_count",
}


def gate_stats(nl: Netlist) -> GateStats:
    counts = {field: 0 for field in _STAT_FIELDS.values()}
    for g in nl.gates.values():
        counts[_STAT_FIELDS[g.kind]] += 1
    return GateStats(**counts)


_MUX_SEG = re.compile(r"s\d+m\d+")


def mux_block_count(nl: Netlist) -> int:
    """Number of distinct selector blocks in a tree-built netlist."""
    blocks = set()
    for gid in nl.gates:
        for seg in gid.split("/"):
            if _MUX_SEG.fullmatch(seg):
                blocks.add(seg)
    return len(blocks)
