"""Cut-and-choose compilation of the semi-honest protocol to one malicious corruption.

Each party prepares a random input ``x1`` next to its true input ``x0`` and
hands out XOR shares of ``s`` copies ``(x^sigma_j, x^(1-sigma_j))`` whose order
only it knows.  A jointly shared indicator ``c = [c]_1 ^ [c]_2 ^ [c]_3``
selects, per run ``j``, the true input (``c_j = 0``, output run) or the random
input (``c_j = 1``, verification run) through one shared AND:

    x_ij = (x^sigma ^ x^(1-sigma)) & (c_j ^ sigma_ij)  ^  x^sigma

The circuit is then evaluated once over ``s``-bit lanes, every party commits
to its per-run transcript (input, internal and output segments), and only
then is ``c`` opened.  Verification runs are opened completely and re-executed
in the clear; output runs open their output segments, which must all agree.

Rounds, in order: ``prep``, ``select``, ``and:<d>`` per AND layer,
``tcommit``, ``open-c``, ``open-input`` (other parties' slices of each input
in verification runs), ``open-verify`` (owners' slices, random inputs, internal
and output segments of verification runs) and ``open-output`` (output segments
of output runs).  Rounds with nothing to send are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from operator import itemgetter, rshift
from typing import Sequence

from .bits import BitString
from .circuit import Circuit, Op
from .commitment import (PRODUCTION, CommitmentError, FieldParams, block_count, deal, decode_int, encode_int, pack_columns,
                         unpack_columns, verify_blocks)
from .rand import derive
from .semihonest import and_share, check_inputs, compute_circuit, pack_fields, unpack_fields
from .sharing import xor_share_int
from .transport import PARTIES, Adversary, ProtocolAbort, RunResult, Step, h, run_parties

# commitment kinds, encoded into the 64-bit commitment id
X1, CSHARE, INPUT, INTERNAL, OUTPUT = 1, 2, 3, 4, 5
KIND_NAMES = {X1: "random-input", CSHARE: "indicator-share", INPUT: "input", INTERNAL: "internal", OUTPUT: "output"}


def make_cid(committer: int, kind: int, run: int = 0) -> int:
    return (committer << 48) | (kind << 32) | run


def split_cid(cid: int) -> tuple[int, int, int]:
    return cid >> 48, (cid >> 32) & 0xFFFF, cid & 0xFFFFFFFF


def bit_of(v: int, j: int, s: int) -> int:
    """Bit for run ``j`` (1-based) of an ``s``-bit lane value; run 1 is the leftmost bit."""
    return (v >> (s - j)) & 1


# --------------------------------------------------------------------------
# plaintext views of input preparation and selection


@dataclass(frozen=True)
class PreparedInput:
    x0: BitString
    x1: BitString
    sigma: BitString
    c_share: BitString

    @property
    def s(self) -> int:
        return len(self.sigma)

    @property
    def copies(self) -> list[tuple[BitString, BitString]]:
        """``I_ij = (x^sigma_ij, x^(1 - sigma_ij))`` for ``j = 1..s``."""
        return [(self.x1, self.x0) if b else (self.x0, self.x1) for b in self.sigma]

    def packed(self) -> BitString:
        out = BitString()
        for first, second in self.copies:
            out = out + first + second
        return out


def prepare_input(x0: BitString, s: int, rng) -> PreparedInput:
    if s < 1:
        raise ValueError("s must be at least 1")
    x1 = BitString.random(len(x0), rng)
    sigma = BitString.random(s, rng)
    c_share = BitString.random(s, rng)
    return PreparedInput(x0, x1, sigma, c_share)


def select_plain(x0: BitString, x1: BitString, c: int) -> BitString:
    """Reference selection: ``x_ij = (x0 ^ x1) c_j ^ x0``."""
    t = x0 ^ x1
    return (t if c else BitString.zeros(len(t))) ^ x0


def select_share(first: int, second: int, cbit: int, r: int,
                 t_prev: int, cbit_prev: int, r_prev: int, width: int) -> tuple[int, int]:
    """One party's selection step on width-``width`` operands.

    ``first``/``second`` are its shares of ``x^sigma`` and ``x^(1-sigma)``,
    ``cbit`` its (possibly sigma-folded) indicator share and ``r`` its mask;
    the ``*_prev`` values come from ``P_{h(k-1)}``.  Returns ``([t]_k, [x_ij]_k)``.
    """
    full = (1 << width) - 1
    t = first ^ second
    z = and_share(t, full if cbit else 0, r, t_prev, full if cbit_prev else 0, r_prev)
    return t, z ^ first


# --------------------------------------------------------------------------
# protocol


class Opening:
    """Record columns of one opening round, precomputed per layout and indicator.

    ``entries`` holds ``(key, cid, block range, bit length)``; the values come
    back decoded in the same order.  ``gather`` pulls the announcing party's
    shares out of its flat share store.
    """

    __slots__ = ("phase", "keys", "spans", "cids", "idx", "gather", "lengths", "single", "picks")

    def __init__(self, phase: str, entries: Sequence[tuple[object, int, range, int]], slot: dict[int, int]):
        self.phase = phase
        self.keys = [e[0] for e in entries]
        self.spans = []
        self.lengths = [e[3] for e in entries]
        self.single = all(len(e[2]) == 1 for e in entries)
        # entries of at most one block decode to that block (or 0 when empty)
        self.picks = None if any(len(e[2]) > 1 for e in entries) else []
        cids: list[int] = []
        idx: list[int] = []
        for _, cid, blocks, length in entries:
            if self.picks is not None:
                self.picks.append(len(cids) if len(blocks) else -1)
            self.spans.append((cid, len(cids), len(blocks), length))
            cids += [cid] * len(blocks)
            idx += blocks
        self.cids = tuple(cids)
        self.idx = tuple(idx)
        where = [slot[c] + b for c, b in zip(cids, idx)]
        if len(where) == 1:
            self.gather = lambda flat, w=where[0]: (flat[w],)
        else:
            self.gather = itemgetter(*where)


@dataclass(frozen=True)
class Layout:
    """Block geometry of every commitment in a run; identical at all parties."""

    circuit: Circuit
    s: int
    params: FieldParams
    lengths: tuple[int, int, int, int]
    slice_blocks: tuple[range, range, range, range]
    input_blocks: int
    internal_blocks: int
    output_blocks: int
    x1_blocks: tuple[int, int, int, int]
    c_blocks: int
    _plans: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def build(cls, circuit: Circuit, s: int, params: FieldParams) -> "Layout":
        k = params.k
        lengths = (0,) + tuple(circuit.input_length(i) for i in PARTIES)
        ranges = [range(0)]
        start = 0
        for i in PARTIES:
            nb = block_count(lengths[i], k)
            ranges.append(range(start, start + nb))
            start += nb
        return cls(circuit, s, params, lengths, tuple(ranges), start,
                   block_count(circuit.q - circuit.m, k), block_count(circuit.m, k),
                   (0,) + tuple(block_count(lengths[i], k) for i in PARTIES), block_count(s, k))

    def slots(self) -> tuple[dict[int, int], int]:
        """Where each commitment's shares start in a party's flat share store, and its size.

        The store holds, in order, the ``prep`` records of P1, P2, P3 and then
        their ``tcommit`` records.
        """
        plan = self._plans.get("slots")
        if plan is None:
            slot = {}
            pos = 0
            for phase in ("prep", "tcommit"):
                for m in PARTIES:
                    cids, idx, spans = self.records(phase, m)
                    for cid, start, _ in spans:
                        slot[cid] = pos + start
                    pos += len(cids)
            plan = self._plans["slots"] = (slot, pos)
        return plan

    def records(self, phase: str, sender: int) -> tuple[tuple[int, ...], tuple[int, ...], list[tuple[int, int, int]]]:
        """``(cid column, block column, spans)`` of ``sender``'s commitments in ``phase``."""
        key = (phase, sender)
        plan = self._plans.get(key)
        if plan is None:
            if phase == "prep":
                items = [(make_cid(sender, X1), self.x1_blocks[sender]), (make_cid(sender, CSHARE), self.c_blocks)]
            else:
                items = []
                for j in range(1, self.s + 1):
                    items += [(make_cid(sender, INPUT, j), self.input_blocks), (make_cid(sender, INTERNAL, j), self.internal_blocks),
                              (make_cid(sender, OUTPUT, j), self.output_blocks)]
            cids, idx, spans = [], [], []
            for cid, nb in items:
                spans.append((cid, len(cids), nb))
                cids += [cid] * nb
                idx += range(nb)
            plan = self._plans[key] = (tuple(cids), tuple(idx), spans)
        return plan

    def select_items(self) -> list[tuple[int, int, int, int, int]]:
        """``(owner, run, length, shift into the packed copies, mask)`` in selection order."""
        plan = self._plans.get("select")
        if plan is None:
            plan = self._plans["select"] = [(o, j, self.lengths[o], 2 * (self.s - j) * self.lengths[o], (1 << self.lengths[o]) - 1)
                                            for j in range(1, self.s + 1) for o in PARTIES if self.lengths[o]]
        return plan

    def opening(self, phase: str, indicator: int = 0) -> Opening:
        key = (phase, indicator)
        plan = self._plans.get(key)
        if plan is None:
            plan = self._plans[key] = Opening(phase, self._entries(phase, indicator), self.slots()[0])
        return plan

    def _entries(self, phase: str, indicator: int):
        c, s, L = self.circuit, self.s, self.lengths
        owners = [o for o in PARTIES if L[o]]
        verify_runs = [j for j in range(1, s + 1) if bit_of(indicator, j, s)]
        internal, out = range(self.internal_blocks), range(self.output_blocks)
        if phase == "open-c":
            return [(o, make_cid(o, CSHARE), range(self.c_blocks), s) for o in PARTIES]
        if phase == "open-input":
            return [((m, o, j), make_cid(m, INPUT, j), self.slice_blocks[o], L[o])
                    for j in verify_runs for m in PARTIES for o in owners if o != m]
        if phase == "open-verify":
            entries = [(("x1", o), make_cid(o, X1), range(self.x1_blocks[o]), L[o]) for o in owners]
            for j in verify_runs:
                entries += [(("input", o, j), make_cid(o, INPUT, j), self.slice_blocks[o], L[o]) for o in owners]
                entries += [(("internal", m, j), make_cid(m, INTERNAL, j), internal, c.q - c.m) for m in PARTIES]
                entries += [(("output", m, j), make_cid(m, OUTPUT, j), out, c.m) for m in PARTIES]
            return entries
        if phase == "open-output":
            return [((m, j), make_cid(m, OUTPUT, j), out, c.m)
                    for j in range(1, s + 1) if not bit_of(indicator, j, s) for m in PARTIES]
        raise ValueError(f"no opening round called {phase!r}")


@lru_cache(maxsize=64)
def get_layout(circuit: Circuit, s: int, params: FieldParams) -> Layout:
    return Layout.build(circuit, s, params)


class MaliciousParty:
    def __init__(self, index: int, layout: Layout, x0: BitString, rng, strategy=None, c_share: int | None = None):
        self.i = index
        self.layout = layout
        self.circuit = layout.circuit
        self.s = layout.s
        self.params = layout.params
        self.x0 = x0
        self.rng = rng
        self.strategy = strategy
        self.forced_c_share = c_share
        self.slot, size = layout.slots()
        self.flat = [0] * size  # my share of every commitment block, placed by Layout.slots
        self.I_shares: dict[int, int] = {}
        self.indicator: int | None = None
        self.noticed: list[tuple[str, int | None, str]] = []
        self.output: BitString | None = None

    # -- helpers -------------------------------------------------------

    def _commit_all(self, phase: str, values: Sequence[int]) -> dict[int, bytes]:
        """Commit to this phase's blocks, laid out as in :meth:`Layout.records`.

        Returns the record stream for each peer.
        """
        cids, idx, spans = self.layout.records(phase, self.i)
        d = deal(values, self.rng, self.params.p)
        mine = d[self.i - 1]
        start = self.slot[spans[0][0]]
        self.flat[start:start + len(mine)] = mine
        return {m: pack_columns(cids, idx, d[m - 1]) for m in PARTIES if m != self.i}

    def _receive_commitments(self, data: bytes, phase: str, sender: int) -> None:
        try:
            cids, idx, shares = unpack_columns(data)
        except CommitmentError as exc:
            raise ProtocolAbort("malformed", detail=str(exc)) from None
        want_c, want_b, spans = self.layout.records(phase, sender)
        if cids != want_c or idx != want_b:
            raise ProtocolAbort("malformed", detail=f"commitment records from P{sender} do not match the layout")
        start = self.slot[spans[0][0]]
        self.flat[start:start + len(shares)] = shares

    def share_of(self, cid: int) -> list[int]:
        """My shares of commitment ``cid``."""
        committer, kind, _ = split_cid(cid)
        start = self.slot[cid]
        return self.flat[start:start + self.layout.blocks_of(kind, committer)]

    def _decode(self, cid: int, blocks: Sequence[int], length: int) -> int:
        try:
            return decode_int(blocks, length, self.params.k)
        except ValueError as exc:
            committer, kind, run = split_cid(cid)
            raise ProtocolAbort("commitment", run=run or None, detail=f"P{committer} {KIND_NAMES[kind]}: {exc}") from None

    def _failed(self, code: str, run: int | None = None, detail: str = "") -> None:
        """A verification check failed.  Honest parties abort; a corrupted one
        notes it and carries on, since stopping would only help the others."""
        if self.strategy is None:
            raise ProtocolAbort(code, run, detail)
        self.noticed.append((code, run, detail))

    def _open(self, op: Opening):
        """Uncommit everything in ``op``: announce my shares and check everyone's.

        Generator returning the decoded values in ``op`` order.
        """
        mine = op.gather(self.flat)
        peers = (h(self.i + 1), h(self.i + 2))
        payload = pack_columns(op.cids, op.idx, mine)
        inbox = yield Step(op.phase, {m: payload for m in peers}, peers)
        announced = {self.i: mine}
        for m in peers:
            try:
                rc, rb, rs = unpack_columns(inbox[m])
            except CommitmentError as exc:
                raise ProtocolAbort("malformed", detail=str(exc)) from None
            if rc != op.cids or rb != op.idx:
                raise ProtocolAbort("malformed", detail=f"opening records from P{m} do not match")
            announced[m] = rs
        try:
            values = verify_blocks(announced[1], announced[2], announced[3], self.params.p)
        except CommitmentError as exc:
            committer, kind, run = split_cid(op.cids[exc.block])
            raise ProtocolAbort("commitment", run=run or None,
                                detail=f"P{committer} {KIND_NAMES[kind]} commitment, block {op.idx[exc.block]}: {exc}") from None
        if op.picks is not None:
            out = values if op.single else [values[t] if t >= 0 else 0 for t in op.picks]
            if not any(map(rshift, out, op.lengths)):
                return out
        return [self._decode(cid, values[st:st + nb], length) for cid, st, nb, length in op.spans]

    # -- phases --------------------------------------------------------

    def input_preparation(self):
        i, s, lay = self.i, self.s, self.layout
        L = lay.lengths[i]
        k = self.params.k
        if len(self.x0) != L:
            raise ProtocolAbort("input-length", detail=f"P{i} holds {len(self.x0)} bits, circuit expects {L}")
        rng = self.rng
        self.x1 = rng.getrandbits(L) if L else 0
        self.sigma = rng.getrandbits(s)
        self.c_share = self.forced_c_share if self.forced_c_share is not None else rng.getrandbits(s)
        if self.strategy is not None:
            self.strategy.on_prepare(self)
        x0, x1 = self.x0.value, self.x1
        packed = 0
        for j in range(1, s + 1):
            first, second = (x1, x0) if bit_of(self.sigma, j, s) else (x0, x1)
            packed = (((packed << L) | first) << L) | second
        self.I_packed = packed
        shares = list(xor_share_int(packed, 2 * s * L, rng))
        if self.strategy is not None:
            shares = self.strategy.tamper_shares(self, shares)
        self.I_shares[i] = shares[i - 1]

        peers = (h(i + 1), h(i + 2))
        records = self._commit_all("prep", encode_int(self.x1, L, k) + encode_int(self.c_share, s, k))
        sends = {m: pack_fields(((shares[m - 1], 2 * s * L),)) + records[m] for m in peers}
        inbox = yield Step("prep", sends, peers)
        for m in peers:
            Lm = lay.lengths[m]
            nbytes = (2 * s * Lm + 7) // 8
            data = inbox[m]
            (self.I_shares[m],) = unpack_fields(data[:nbytes], (2 * s * Lm,))
            self._receive_commitments(data[nbytes:], "prep", m)

    def copy_shares(self, owner: int, j: int) -> tuple[int, int]:
        """My shares of ``(x^sigma, x^(1-sigma))`` of ``owner``'s copy ``j``."""
        L = self.layout.lengths[owner]
        mask = (1 << L) - 1
        v = self.I_shares[owner] >> (2 * (self.s - j) * L)
        return (v >> L) & mask, v & mask

    def select_inputs(self):
        i, s, lay = self.i, self.s, self.layout
        succ, pred = h(i + 1), h(i - 1)
        items = lay.select_items()
        strategy = self.strategy
        shares = self.I_shares
        cshare, sigma = self.c_share, self.sigma
        T = R = F = CB = 0
        draw = self.rng.getrandbits
        for o, j, L, shift, mask in items:
            v = shares[o] >> shift
            first = (v >> L) & mask
            t = first ^ (v & mask)
            if strategy is not None:
                t = strategy.on_select(self, o, j, t)
            cb = (cshare >> (s - j)) & 1
            if o == i:
                cb ^= (sigma >> (s - j)) & 1
            T = (T << L) | t
            F = (F << L) | first
            R = (R << L) | draw(L)
            CB = (CB << 1) | cb
        total = s * self.circuit.n
        nb = len(items)
        inbox = yield Step("select", {succ: pack_fields(((T, total), (CB, nb), (R, total)))}, (pred,))
        Tp, CBp, Rp = unpack_fields(inbox[pred], (total, nb, total))
        C = Cp = 0
        shift = nb
        for _, _, L, _, mask in items:
            shift -= 1
            C = (C << L) | (mask if (CB >> shift) & 1 else 0)
            Cp = (Cp << L) | (mask if (CBp >> shift) & 1 else 0)
        # runs laid out in order, each block being T^j_k[1..n]
        self.selected = and_share(T, C, R, Tp, Cp, Rp) ^ F

    def batched_circuit_computation(self):
        c, s = self.circuit, self.s
        n = c.n
        wires = [0] * (c.wires + 1)
        X = self.selected
        nmask = (1 << n) - 1
        for j in range(1, s + 1):
            blk = (X >> (n * (s - j))) & nmask
            lane = 1 << (s - j)
            for w in range(1, n + 1):
                if (blk >> (n - w)) & 1:
                    wires[w] |= lane
        yield from compute_circuit(self.i, c, wires, s, self.rng)
        self.wires = wires
        total = c.wires
        transcripts = [0]
        for j in range(1, s + 1):
            shift = s - j
            t = 0
            for w in range(1, total + 1):
                t = (t << 1) | ((wires[w] >> shift) & 1)
            transcripts.append(t)
        self.transcripts = transcripts
        if self.strategy is not None:
            self.strategy.on_transcript(self)

    def segments(self, j: int) -> tuple[int, int, int]:
        """``(input, internal, output)`` bits of ``T^j_k``."""
        c = self.circuit
        t = self.transcripts[j]
        m, q = c.m, c.q
        return t >> q, (t >> m) & ((1 << (q - m)) - 1), t & ((1 << m) - 1)

    def transcript_commitment(self):
        i, c, lay, k = self.i, self.circuit, self.layout, self.params.k
        peers = (h(i + 1), h(i + 2))
        values = []
        n, q, m = c.n, c.q, c.m
        b = c.bounds
        owners = [(o, lay.lengths[o]) for o in PARTIES if lay.lengths[o]]
        for j in range(1, self.s + 1):
            inp, internal, out = self.segments(j)
            for o, L in owners:
                values += encode_int((inp >> (n - b[o])) & ((1 << L) - 1), L, k)
            values += encode_int(internal, q - m, k)
            values += encode_int(out, m, k)
        inbox = yield Step("tcommit", self._commit_all("tcommit", values), peers)
        for m in peers:
            self._receive_commitments(inbox[m], "tcommit", m)

    def output_generation(self):
        c, s, lay = self.circuit, self.s, self.layout
        n, q, m_out = c.n, c.q, c.m
        L = lay.lengths

        # construct the cut-and-choose indicator
        shares = yield from self._open(lay.opening("open-c"))
        ind = shares[0] ^ shares[1] ^ shares[2]
        self.indicator = ind
        verify_runs = [j for j in range(1, s + 1) if bit_of(ind, j, s)]

        if verify_runs:
            # other parties' slices of every input; each owner checks its own
            op = lay.opening("open-input", ind)
            slices = dict(zip(op.keys, (yield from self._open(op))))
            me = self.i
            if L[me]:
                lo = n - c.bounds[me]
                for j in verify_runs:
                    got = ((self.transcripts[j] >> (q + lo)) & ((1 << L[me]) - 1)) ^ slices[(h(me + 1), me, j)] ^ slices[(h(me + 2), me, j)]
                    if got != self.x1:
                        self._failed("random-input", run=j, detail=f"P{me}'s input in a verification run is not its random input")

            # owners' slices, random inputs, internal and output segments of verification runs
            op = lay.opening("open-verify", ind)
            opened = dict(zip(op.keys, (yield from self._open(op))))
            for j in verify_runs:
                inputs = 0
                for o in PARTIES:
                    if not L[o]:
                        continue
                    others = [slices[(m, o, j)] for m in PARTIES if m != o]
                    value = opened[("input", o, j)] ^ others[0] ^ others[1]
                    if value != opened[("x1", o)]:
                        self._failed("random-input", run=j, detail=f"P{o}'s input is not its committed random input")
                    inputs = (inputs << L[o]) | value
                internal = opened[("internal", 1, j)] ^ opened[("internal", 2, j)] ^ opened[("internal", 3, j)]
                output = opened[("output", 1, j)] ^ opened[("output", 2, j)] ^ opened[("output", 3, j)]
                bad = check_transcript(c, (((inputs << (q - m_out)) | internal) << m_out) | output)
                if bad is not None:
                    self._failed("circuit", run=j, detail=f"wire {bad} inconsistent with its gate")

        if len(verify_runs) == s:
            raise ProtocolAbort("no-output-runs", detail="every run was a verification run")

        # construct outputs
        op = lay.opening("open-output", ind)
        segs = yield from self._open(op)
        ys = [(op.keys[t][1], segs[t] ^ segs[t + 1] ^ segs[t + 2]) for t in range(0, len(segs), 3)]
        first = ys[0][1]
        for j, y in ys[1:]:
            if y != first:
                raise ProtocolAbort("output-mismatch", run=j, detail=f"run {j} disagrees with run {ys[0][0]}")
        self.output = BitString(first, m_out)
        return self.output

    def program(self):
        yield from self.input_preparation()
        yield from self.select_inputs()
        yield from self.batched_circuit_computation()
        yield from self.transcript_commitment()
        return (yield from self.output_generation())


def check_transcript(c: Circuit, full: int) -> int | None:
    """First wire whose value in the plaintext transcript ``full`` (wire 1 leftmost)
    disagrees with its gate, or None."""
    total = c.wires
    vals = [0] * (total + 1)
    for w in range(total, 0, -1):
        vals[w] = full & 1
        full >>= 1
    for g in c.gates:
        expect = vals[g.a] & vals[g.b] if g.op is Op.AND else vals[g.a] ^ vals[g.b]
        if vals[g.out] != expect:
            return g.out
    return None


def run_malicious(circuit: Circuit, inputs, s: int, seed: int = 0, strategy: Adversary | None = None,
                  params: FieldParams = PRODUCTION, indicator: int | BitString | None = None,
                  trace: bool = False, keep_parties: bool = False) -> RunResult:
    """Run the cut-and-choose protocol.

    ``indicator`` pins ``c`` (as an ``s``-bit int or BitString, run 1 leftmost)
    for experiments that enumerate it; the parties' shares of it are still
    uniformly random.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    xs = check_inputs(circuit, inputs)
    layout = get_layout(circuit, s, params)
    c_shares = {i: None for i in PARTIES}
    if indicator is not None:
        value = indicator.value if isinstance(indicator, BitString) else indicator
        if value >> s:
            raise ValueError(f"indicator {value} does not fit in {s} bits")
        c_shares = dict(zip(PARTIES, xor_share_int(value, s, derive(seed, "indicator"))))
    corrupted = strategy.corrupted if strategy is not None else None
    parties = {i: MaliciousParty(i, layout, xs[i - 1], derive(seed, "malicious", "party", i),
                                 strategy if i == corrupted else None, c_shares[i]) for i in PARTIES}
    result = run_parties({i: p.program() for i, p in parties.items()}, strategy, trace)
    if keep_parties:
        result.parties = parties
    return result
