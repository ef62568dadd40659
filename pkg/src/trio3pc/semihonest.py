"""Semi-honest three-party evaluation of XOR/AND circuits on XOR shares.

XOR gates are local.  An AND gate costs one ring message per party: ``P_i``
sends its operand shares and a fresh random mask to ``P_{h(i+1)}`` and
combines them with what it receives from ``P_{h(i-1)}`` (see
:func:`and_share`).  All AND gates at the same AND depth share one round, so a
run takes ``and_depth + 2`` rounds: input sharing, one per AND layer, output.

Shares of a wire are held as Python ints of ``width`` bits so that the same
engine evaluates ``s`` independent lanes at once.
"""

from __future__ import annotations

from typing import Sequence

from .bits import BitString
from .circuit import Circuit
from .rand import derive
from .sharing import xor_share_int
from .transport import PARTIES, Adversary, ProtocolAbort, RunResult, Step, h, run_parties


def and_share(a: int, b: int, r: int, a_prev: int, b_prev: int, r_prev: int) -> int:
    """Share of ``a & b`` held by ``P_i``, from its own operand shares and mask
    ``(a, b, r)`` and those of ``P_{h(i-1)}``.  Bitwise, so it works lane-wise."""
    return (a & b) ^ (a & b_prev) ^ (a_prev & b) ^ r ^ r_prev


def pack_fields(fields: Sequence[tuple[int, int]]) -> bytes:
    """Concatenate ``(value, width)`` fields, first field most significant."""
    v = 0
    total = 0
    for value, width in fields:
        v = (v << width) | value
        total += width
    return v.to_bytes((total + 7) // 8, "big")


def unpack_fields(data: bytes, widths: Sequence[int]) -> list[int]:
    total = sum(widths)
    if len(data) != (total + 7) // 8:
        raise ProtocolAbort("malformed", detail=f"expected {(total + 7) // 8} bytes, got {len(data)}")
    v = int.from_bytes(data, "big")
    if v >> total:
        raise ProtocolAbort("malformed", detail="payload has stray high bits")
    out = []
    for width in reversed(widths):
        out.append(v & ((1 << width) - 1))
        v >>= width
    out.reverse()
    return out


def compute_circuit(i: int, circuit: Circuit, wires: list[int], width: int, rng):
    """Evaluate every gate on ``P_i``'s shares in place (generator; yields AND rounds)."""
    succ, pred = h(i + 1), h(i - 1)
    wmask = (1 << width) - 1
    levels = circuit.levels
    for g in levels[0][1]:
        wires[g.out] = wires[g.a] ^ wires[g.b]
    for d in range(1, len(levels)):
        ands, xors = levels[d]
        size = len(ands) * width
        A = B = 0
        for g in ands:
            A = (A << width) | wires[g.a]
            B = (B << width) | wires[g.b]
        R = rng.getrandbits(size)
        inbox = yield Step(f"and:{d}", {succ: pack_fields(((A, size), (B, size), (R, size)))}, (pred,))
        Ap, Bp, Rp = unpack_fields(inbox[pred], (size, size, size))
        Z = and_share(A, B, R, Ap, Bp, Rp)
        for g in reversed(ands):
            wires[g.out] = Z & wmask
            Z >>= width
        for g in xors:
            wires[g.out] = wires[g.a] ^ wires[g.b]


class SemiHonestParty:
    def __init__(self, index: int, circuit: Circuit, x: BitString, rng):
        self.i = index
        self.circuit = circuit
        self.x = x
        self.rng = rng
        self.wires = [0] * (circuit.wires + 1)
        self.output: BitString | None = None

    def input_sharing_phase(self):
        i, c = self.i, self.circuit
        if len(self.x) != c.input_length(i):
            raise ProtocolAbort("input-length", detail=f"P{i} holds {len(self.x)} bits, circuit expects {c.input_length(i)}")
        n_i = len(self.x)
        shares = xor_share_int(self.x.value, n_i, self.rng)
        peers = (h(i + 1), h(i + 2))
        inbox = yield Step("input-share", {j: pack_fields(((shares[j - 1], n_i),)) for j in peers}, peers)
        mine = {i: shares[i - 1]}
        for j in peers:
            (mine[j],) = unpack_fields(inbox[j], (c.input_length(j),))
        for j in PARTIES:
            v = mine[j]
            rng_j = c.party_input_range(j)
            for pos, w in enumerate(rng_j):
                self.wires[w] = (v >> (len(rng_j) - 1 - pos)) & 1

    def circuit_computation(self):
        yield from compute_circuit(self.i, self.circuit, self.wires, 1, self.rng)

    def output_construction(self):
        i, c = self.i, self.circuit
        outs = c.output_wires
        mine = 0
        for w in outs:
            mine = (mine << 1) | self.wires[w]
        peers = (h(i + 1), h(i + 2))
        inbox = yield Step("output", {j: pack_fields(((mine, c.m),)) for j in peers}, peers)
        y = mine
        for j in peers:
            (other,) = unpack_fields(inbox[j], (c.m,))
            y ^= other
        self.output = BitString(y, c.m)
        return self.output

    def program(self):
        yield from self.input_sharing_phase()
        yield from self.circuit_computation()
        return (yield from self.output_construction())


def check_inputs(circuit: Circuit, inputs) -> list[BitString]:
    """Normalise per-party inputs (BitStrings or '0'/'1' strings) and check their lengths."""
    if len(inputs) != 3:
        raise ValueError("need exactly three party inputs")
    out = []
    for i, x in zip(PARTIES, inputs):
        if isinstance(x, str):
            x = BitString.from_str(x)
        if len(x) != circuit.input_length(i):
            raise ValueError(f"P{i} input has {len(x)} bits, circuit expects {circuit.input_length(i)}")
        out.append(x)
    return out


def run_semi_honest(circuit: Circuit, inputs, seed: int = 0, adversary: Adversary | None = None,
                    trace: bool = False, keep_parties: bool = False) -> RunResult:
    xs = check_inputs(circuit, inputs)
    parties = {i: SemiHonestParty(i, circuit, xs[i - 1], derive(seed, "semi-honest", "party", i)) for i in PARTIES}
    result = run_parties({i: p.program() for i, p in parties.items()}, adversary, trace)
    if keep_parties:
        result.parties = parties
    return result
