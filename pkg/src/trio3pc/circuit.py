"""Boolean circuits over XOR and AND gates.

Circuits follow the ``C = (n, m, q, F, S, G)`` numbering: input wires are
``1..n``, gate ``g`` drives wire ``g`` for ``g`` in ``n+1..n+q``, and the last
``m`` wires are the outputs.  Every gate satisfies ``F(g) < S(g) < g``.
Party ``i`` owns the input wires ``n_{i-1}+1 .. n_i``.

Text format, one statement per line (blank lines and ``#`` comments are
ignored)::

    circuit <n> <m> <q>
    parties <n1> <n2> <n3>
    <XOR|AND> <a> <b> -> <g>      # q lines, increasing g
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .bits import BitString, concat


class Op(str, enum.Enum):
    XOR = "XOR"
    AND = "AND"


@dataclass(frozen=True)
class Gate:
    out: int
    a: int
    b: int
    op: Op


class CircuitError(ValueError):
    """Malformed circuit text or structure.

    ``kind`` is one of ``"syntax"``, ``"wire-order"``, ``"bounds"`` or
    ``"structure"``; ``line``/``column`` are 1-based when known.
    """

    def __init__(self, message: str, kind: str = "structure", line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.kind = kind
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Circuit:
    n: int
    m: int
    gates: tuple[Gate, ...]
    bounds: tuple[int, int, int, int]

    def __post_init__(self):
        n, m, q = self.n, self.m, len(self.gates)
        if n < 1:
            raise CircuitError("circuit needs at least one input wire")
        if q < 1:
            raise CircuitError("circuit needs at least one gate")
        if not 1 <= m <= q:
            raise CircuitError(f"output count m={m} must satisfy 1 <= m <= q={q}")
        b = self.bounds
        if len(b) != 4 or b[0] != 0 or b[3] != n or not (b[0] <= b[1] <= b[2] <= b[3]):
            raise CircuitError(f"party bounds {b} must be monotone with n0=0 and n3=n={n}", kind="bounds")
        for idx, g in enumerate(self.gates):
            if g.out != n + 1 + idx:
                raise CircuitError(f"gate {idx + 1} drives wire {g.out}, expected {n + 1 + idx}")
            if not 1 <= g.a < g.b < g.out:
                raise CircuitError(f"gate {g.out}: wires must satisfy F(g) < S(g) < g, got {g.a}, {g.b}", kind="wire-order")
            if not isinstance(g.op, Op):
                raise CircuitError(f"gate {g.out}: unknown operation {g.op!r}")

    @property
    def q(self) -> int:
        return len(self.gates)

    @property
    def wires(self) -> int:
        return self.n + self.q

    @property
    def output_wires(self) -> range:
        return range(self.n + self.q - self.m + 1, self.n + self.q + 1)

    @property
    def internal_wires(self) -> range:
        return range(self.n + 1, self.n + self.q - self.m + 1)

    def party_input_range(self, i: int) -> range:
        if i not in (1, 2, 3):
            raise ValueError(f"party index must be 1, 2 or 3, got {i}")
        return range(self.bounds[i - 1] + 1, self.bounds[i] + 1)

    def input_length(self, i: int) -> int:
        return self.bounds[i] - self.bounds[i - 1]

    @cached_property
    def levels(self) -> list[tuple[list[Gate], list[Gate]]]:
        """Gates grouped by AND depth.

        Entry ``d`` holds ``(and_gates, xor_gates)`` whose AND depth is ``d``.
        Entry 0 never has AND gates.  Evaluating, for each ``d``, the AND
        gates first and then the XOR gates in index order respects every data
        dependency.
        """
        depth = [0] * (self.wires + 1)
        for g in self.gates:
            d = max(depth[g.a], depth[g.b])
            depth[g.out] = d + 1 if g.op is Op.AND else d
        top = max(depth[self.n + 1:], default=0)
        levels = [([], []) for _ in range(top + 1)]
        for g in self.gates:
            levels[depth[g.out]][0 if g.op is Op.AND else 1].append(g)
        return levels

    def and_depth(self) -> int:
        return len(self.levels) - 1

    def and_count(self) -> int:
        return sum(1 for g in self.gates if g.op is Op.AND)


def make_circuit(n: int, m: int, gate_specs: Sequence[tuple[str, int, int]], bounds: Sequence[int]) -> Circuit:
    """Build a circuit from ``(op, a, b)`` triples; gate outputs are numbered automatically.

    ``bounds`` may be the cumulative ``(n1, n2, n3)`` or the full ``(0, n1, n2, n3)``.
    """
    bounds = tuple(bounds)
    if len(bounds) == 3:
        bounds = (0,) + bounds
    gates = tuple(Gate(n + 1 + i, a, b, Op(op)) for i, (op, a, b) in enumerate(gate_specs))
    return Circuit(n, m, gates, bounds)


def parse_circuit(text: str) -> Circuit:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, body))
    if len(lines) < 2:
        raise CircuitError("expected 'circuit' and 'parties' header lines", kind="syntax", line=len(lines) + 1, column=1)

    def tokens(lineno: int, body: str) -> list[tuple[str, int]]:
        out = []
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            out.append((tok, col + 1))
            col += len(tok)
        return out

    def number(tok: str, col: int, lineno: int) -> int:
        if not tok.isdigit():
            raise CircuitError(f"expected a non-negative integer, got {tok!r}", kind="syntax", line=lineno, column=col)
        return int(tok)

    lineno, body = lines[0]
    toks = tokens(lineno, body)
    if len(toks) != 4 or toks[0][0] != "circuit":
        raise CircuitError("header must read 'circuit <n> <m> <q>'", kind="syntax", line=lineno, column=toks[0][1])
    n, m, q = (number(t, c, lineno) for t, c in toks[1:])

    lineno, body = lines[1]
    toks = tokens(lineno, body)
    if len(toks) != 4 or toks[0][0] != "parties":
        raise CircuitError("second line must read 'parties <n1> <n2> <n3>'", kind="syntax", line=lineno, column=toks[0][1])
    n1, n2, n3 = (number(t, c, lineno) for t, c in toks[1:])
    if not 0 <= n1 <= n2 <= n3 or n3 != n:
        raise CircuitError(f"party bounds ({n1}, {n2}, {n3}) must be monotone and end at n={n}", kind="bounds", line=lineno, column=toks[1][1])

    gate_lines = lines[2:]
    if len(gate_lines) != q:
        where = gate_lines[q] if len(gate_lines) > q else (lines[-1][0] + 1, "")
        raise CircuitError(f"expected {q} gate lines, found {len(gate_lines)}", kind="syntax", line=where[0], column=1)

    gates = []
    for idx, (lineno, body) in enumerate(gate_lines):
        toks = tokens(lineno, body)
        if len(toks) != 5 or toks[3][0] != "->":
            raise CircuitError("gate line must read '<XOR|AND> <a> <b> -> <g>'", kind="syntax", line=lineno, column=toks[0][1])
        op_tok, op_col = toks[0]
        if op_tok not in ("XOR", "AND"):
            raise CircuitError(f"unknown gate type {op_tok!r}", kind="syntax", line=lineno, column=op_col)
        a, b = number(*toks[1], lineno), number(*toks[2], lineno)
        g = number(*toks[4], lineno)
        expected = n + 1 + idx
        if g != expected:
            raise CircuitError(f"gate output {g} out of order, expected {expected}", kind="syntax", line=lineno, column=toks[4][1])
        if not 1 <= a < b < g:
            bad = toks[1] if not (1 <= a < b) else toks[2]
            raise CircuitError(f"wire-order violation: need F(g) < S(g) < g, got {a} {b} -> {g}", kind="wire-order", line=lineno, column=bad[1])
        gates.append(Gate(g, a, b, Op(op_tok)))
    try:
        return Circuit(n, m, tuple(gates), (0, n1, n2, n3))
    except CircuitError as exc:
        raise CircuitError(str(exc), kind=exc.kind, line=lines[0][0], column=1) from None


def format_circuit(c: Circuit) -> str:
    out = [f"circuit {c.n} {c.m} {c.q}", f"parties {c.bounds[1]} {c.bounds[2]} {c.bounds[3]}"]
    out += [f"{g.op.value} {g.a} {g.b} -> {g.out}" for g in c.gates]
    return "\n".join(out) + "\n"


def _joined(x) -> BitString:
    if isinstance(x, str):
        return BitString.from_str(x)
    if isinstance(x, (list, tuple)):
        return concat(BitString.from_str(v) if isinstance(v, str) else v for v in x)
    return x


def eval_wires(c: Circuit, x) -> list[int]:
    """All wire values; index 0 is unused so that ``values[w]`` is wire ``w``.

    ``x`` is the full ``n``-bit input or the three parties' inputs in order.
    """
    x = _joined(x)
    if len(x) != c.n:
        raise ValueError(f"input has {len(x)} bits, circuit expects {c.n}")
    values = [0] + list(x)
    for g in c.gates:
        if g.op is Op.AND:
            values.append(values[g.a] & values[g.b])
        else:
            values.append(values[g.a] ^ values[g.b])
    return values


def eval_plaintext(c: Circuit, x) -> BitString:
    values = eval_wires(c, x)
    return BitString.from_bits(values[w] for w in c.output_wires)


def party_input_range(c: Circuit, i: int) -> range:
    return c.party_input_range(i)


def and_depth(c: Circuit) -> int:
    return c.and_depth()


# ---------------------------------------------------------------------------
# circuit families used by the tests, benchmarks and the gen-circuit command


def split_bounds(n: int) -> tuple[int, int, int]:
    """Cumulative bounds spreading ``n`` inputs as evenly as possible, P1 first."""
    sizes = [n // 3 + (1 if r < n % 3 else 0) for r in range(3)]
    return sizes[0], sizes[0] + sizes[1], n


def and_gate() -> Circuit:
    return make_circuit(2, 1, [("AND", 1, 2)], (1, 2, 2))


def majority() -> Circuit:
    """maj(x1, x2, x3) = ((x1 ^ x2) & (x1 ^ x3)) ^ x1, one input bit per party."""
    return make_circuit(3, 1, [("XOR", 1, 2), ("XOR", 1, 3), ("AND", 4, 5), ("XOR", 1, 6)], (1, 2, 3))


def and_chain(depth: int) -> Circuit:
    """AND(...AND(AND(x1, x2), x3)..., x_{depth+1}); AND depth equals ``depth``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    n = depth + 1
    specs = [("AND", 1, 2)]
    for k in range(1, depth):
        specs.append(("AND", k + 2, n + k))
    return make_circuit(n, 1, specs, split_bounds(n))


def xor_chain(n: int) -> Circuit:
    if n < 2:
        raise ValueError("need at least two inputs")
    specs = [("XOR", 1, 2)] + [("XOR", k + 2, n + k) for k in range(1, n - 1)]
    return make_circuit(n, 1, specs, split_bounds(n))


def random_circuit(rng, n: int, q: int, m: int = 1, and_fraction: float = 0.5, bounds=None) -> Circuit:
    """Random circuit: each gate picks its two operands uniformly among earlier wires."""
    if n < 2:
        raise ValueError("random circuits need n >= 2")
    specs = []
    for idx in range(q):
        g = n + 1 + idx
        b = rng.randrange(2, g)
        a = rng.randrange(1, b)
        op = "AND" if rng.random() < and_fraction else "XOR"
        specs.append((op, a, b))
    if bounds is None:
        cut1 = rng.randrange(0, n + 1)
        cut2 = rng.randrange(cut1, n + 1)
        bounds = (cut1, cut2, n)
    return make_circuit(n, m, specs, bounds)


def named_circuit(name: str) -> Circuit:
    """Resolve a sample circuit name: ``and``, ``majority``, ``and-chain:<d>``,
    ``xor-chain:<n>`` or ``random:<n>:<q>:<seed>``."""
    head, *args = name.split(":")
    try:
        if head == "and" and not args:
            return and_gate()
        if head == "majority" and not args:
            return majority()
        if head == "and-chain" and len(args) == 1:
            return and_chain(int(args[0]))
        if head == "xor-chain" and len(args) == 1:
            return xor_chain(int(args[0]))
        if head == "random" and len(args) == 3:
            n, q, seed = (int(a) for a in args)
            return random_circuit(random.Random(seed), n, q)
    except ValueError as exc:
        raise ValueError(f"bad circuit name {name!r}: {exc}") from None
    raise ValueError(f"unknown circuit name {name!r}")
