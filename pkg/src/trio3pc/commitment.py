"""Three-party commitments from Shamir sharing with threshold 1.

The committer hides each value block ``d`` as ``f(0)`` of a random line
``f(x) = d + a*x`` over ``F_p`` and hands ``f(j)`` to party ``j``.  To open,
every party announces its share and each checks that the three pairwise
reconstructions from ``(1, 2)``, ``(2, 3)`` and ``(3, 1)`` agree.  A single
party holds one uniformly random point (perfect hiding); the two honest
parties' points pin down the line (perfect binding).

Bit strings longer than ``k`` bits are split into ``k``-bit blocks, read
left to right, each block's bits taken as a big-endian integer.

On the wire a share travels as a 20-byte little-endian record
``(commitment id: u64, block index: u32, share: u64)``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .bits import BitString
from .sharing import interpolate_at_zero, is_prime

PAIRS = ((1, 2), (2, 3), (3, 1))
RECORD = struct.Struct("<QIQ")


class CommitmentError(Exception):
    """An opening failed verification, or a share record was malformed."""

    def __init__(self, message: str, block: int | None = None):
        super().__init__(message)
        self.block = block


@dataclass(frozen=True)
class FieldParams:
    """Prime modulus ``p`` and block width ``k`` with ``p > 3`` and ``p > 2**(k+1)``."""

    p: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("block width must be positive")
        if not (self.p > 3 and self.p > 2 ** (self.k + 1)):
            raise ValueError(f"need p > 3 and p > 2^(k+1); got p={self.p}, k={self.k}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


PRODUCTION = FieldParams(2**61 - 1, 59)
TOY = FieldParams(11, 2)


# --------------------------------------------------------------------------
# encoding


@dataclass(frozen=True)
class ValueEncoding:
    blocks: tuple[int, ...]
    original_len: int


def block_count(length: int, k: int) -> int:
    return -(-length // k)


def encode_int(value: int, length: int, k: int) -> list[int]:
    if length <= k:
        return [value] if length else []
    blocks = []
    for start in range(0, length, k):
        width = min(k, length - start)
        blocks.append((value >> (length - start - width)) & ((1 << width) - 1))
    return blocks


def decode_int(blocks: Sequence[int], length: int, k: int) -> int:
    if len(blocks) != block_count(length, k):
        raise ValueError(f"{len(blocks)} blocks cannot hold {length} bits at k={k}")
    value = 0
    for idx, blk in enumerate(blocks):
        width = min(k, length - idx * k)
        if blk >> width:
            raise ValueError(f"block {idx} value {blk} exceeds {width} bits")
        value = (value << width) | blk
    return value


def encode(value: BitString, params: FieldParams = PRODUCTION) -> ValueEncoding:
    return ValueEncoding(tuple(encode_int(value.value, len(value), params.k)), len(value))


def decode(enc: ValueEncoding, params: FieldParams = PRODUCTION) -> BitString:
    return BitString(decode_int(enc.blocks, enc.original_len, params.k), enc.original_len)


# --------------------------------------------------------------------------
# share arithmetic


def deal(blocks: Sequence[int], rng, p: int) -> tuple[list[int], list[int], list[int]]:
    """Points ``f_b(1), f_b(2), f_b(3)`` for a fresh random line per block."""
    n = len(blocks)
    if not n:
        return [], [], []
    bits = p.bit_length()
    mask = (1 << bits) - 1
    # one draw for all slopes, then rejection of any value >= p
    pool = rng.getrandbits(bits * n)
    slopes = [(pool >> (bits * t)) & mask for t in range(n)]
    for t, a in enumerate(slopes):
        while a >= p:
            a = rng.getrandbits(bits)
        slopes[t] = a
    return ([(v + a) % p for v, a in zip(blocks, slopes)],
            [(v + 2 * a) % p for v, a in zip(blocks, slopes)],
            [(v + 3 * a) % p for v, a in zip(blocks, slopes)])


def pair_reconstructions(d1: int, d2: int, d3: int, p: int) -> tuple[int, int, int]:
    shares = {1: d1, 2: d2, 3: d3}
    return tuple(interpolate_at_zero(pair, (shares[pair[0]], shares[pair[1]]), p) for pair in PAIRS)


def verify_blocks(d1: Sequence[int], d2: Sequence[int], d3: Sequence[int], p: int) -> list[int]:
    """Reconstructed block values, or :class:`CommitmentError` at the first disagreement.

    The three pairwise reconstructions agree exactly when the points
    ``(1, d1), (2, d2), (3, d3)`` lie on one line, i.e. ``d1 - 2 d2 + d3 = 0``.
    """
    if not len(d1) == len(d2) == len(d3):
        raise CommitmentError("share records have different block counts")
    if d1 and not (0 <= min(d1) and 0 <= min(d2) and 0 <= min(d3) and max(d1) < p and max(d2) < p and max(d3) < p):
        b = next(b for b, t in enumerate(zip(d1, d2, d3)) if not all(0 <= x < p for x in t))
        raise CommitmentError(f"block {b}: share outside the field", block=b)
    # with every share reduced, d1 - 2 d2 + d3 = 0 says d3 is the line's value at 3
    if [(2 * y - x) % p for x, y in zip(d1, d2)] != list(d3):
        for b, (x, y, z) in enumerate(zip(d1, d2, d3)):
            if (x - 2 * y + z) % p:
                r12, r23, r31 = pair_reconstructions(x, y, z, p)
                raise CommitmentError(f"block {b}: reconstructions {r12}, {r23}, {r31} disagree", block=b)
    return [(2 * x - y) % p for x, y in zip(d1, d2)]


# --------------------------------------------------------------------------
# in-process commitment objects


@dataclass
class Commitment:
    """A commitment together with every party's share record.

    ``shares[j - 1]`` is party ``j``'s list of block shares.  The protocol
    code never builds this object (each party only sees its own record); it
    is the single-process view used by the library API and its tests.
    """

    committer: int
    length: int
    shares: tuple[list[int], list[int], list[int]]
    params: FieldParams = PRODUCTION
    cid: int = 0
    status: str = "committed"
    opened: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def blocks(self) -> int:
        return len(self.shares[0])


def commit(committer: int, value: BitString, rng, params: FieldParams = PRODUCTION, cid: int = 0) -> Commitment:
    if committer not in (1, 2, 3):
        raise ValueError(f"committer must be 1, 2 or 3, got {committer}")
    d1, d2, d3 = deal(encode(value, params).blocks, rng, params.p)
    return Commitment(committer, len(value), (d1, d2, d3), params, cid)


def open_blocks(c: Commitment, broadcast: Sequence[Sequence[int]] | None = None) -> list[int]:
    """Run the uncommitment check on the announced shares.

    ``broadcast`` replaces the shares the three parties announce (a corrupt
    party may announce something other than its record); by default every
    party announces its record.  A failed check marks the commitment failed
    for good.
    """
    if c.status == "failed":
        raise CommitmentError("commitment already failed to open")
    d1, d2, d3 = broadcast if broadcast is not None else c.shares
    try:
        values = verify_blocks(d1, d2, d3, c.params.p)
    except CommitmentError:
        c.status = "failed"
        raise
    if c.opened is not None and tuple(values) != c.opened:
        c.status = "failed"
        raise CommitmentError("commitment opened to two different values")
    c.status = "opened"
    c.opened = tuple(values)
    return values


def open_commitment(c: Commitment, broadcast: Sequence[Sequence[int]] | None = None) -> BitString:
    values = open_blocks(c, broadcast)
    return BitString(decode_int(values, c.length, c.params.k), c.length)


def _combine(a: Commitment, b: Commitment, sign: int) -> Commitment:
    if a.committer != b.committer or a.blocks != b.blocks or a.params != b.params:
        raise ValueError("commitments differ in committer, block count or field")
    p = a.params.p
    shares = tuple([(x + sign * y) % p for x, y in zip(sa, sb)] for sa, sb in zip(a.shares, b.shares))
    return Commitment(a.committer, a.length, shares, a.params)


def homomorphic_add(a: Commitment, b: Commitment) -> Commitment:
    """Commitment to the blockwise sum mod ``p``; open with :func:`open_blocks`."""
    return _combine(a, b, 1)


def homomorphic_sub(a: Commitment, b: Commitment) -> Commitment:
    return _combine(a, b, -1)


# --------------------------------------------------------------------------
# wire format


def pack_records(records: Iterable[tuple[int, int, int]]) -> bytes:
    return b"".join(RECORD.pack(*r) for r in records)


def unpack_records(data: bytes) -> list[tuple[int, int, int]]:
    if len(data) % RECORD.size:
        raise CommitmentError(f"record stream of {len(data)} bytes is not a multiple of {RECORD.size}")
    return list(RECORD.iter_unpack(data))


@lru_cache(maxsize=1024)
def _records_struct(n: int) -> struct.Struct:
    return struct.Struct("<" + "QIQ" * n)


def pack_columns(cids: Sequence[int], blocks: Sequence[int], shares: Sequence[int]) -> bytes:
    """:func:`pack_records` taking the three record fields as parallel lists."""
    n = len(cids)
    flat = [0] * (3 * n)
    flat[0::3] = cids
    flat[1::3] = blocks
    flat[2::3] = shares
    return _records_struct(n).pack(*flat)


def unpack_columns(data: bytes) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    if len(data) % RECORD.size:
        raise CommitmentError(f"record stream of {len(data)} bytes is not a multiple of {RECORD.size}")
    flat = _records_struct(len(data) // RECORD.size).unpack(data)
    return flat[0::3], flat[1::3], flat[2::3]
