"""Fixed-length bit strings.

A :class:`BitString` is the payload type used for secrets, shares and wire
values.  Bits are indexed left to right starting at 0, and the string ``"101"``
is stored as the integer ``0b101``: the leftmost bit is the most significant
one.  Wire 1 of a circuit is always the leftmost bit.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class BitString:
    __slots__ = ("_value", "_length")

    def __init__(self, value: int = 0, length: int = 0):
        if length < 0:
            raise ValueError("length must be non-negative")
        if value < 0 or value >> length:
            raise ValueError(f"value {value} does not fit in {length} bits")
        self._value = value
        self._length = length

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        value = 0
        length = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit must be 0 or 1, got {b!r}")
            value = (value << 1) | b
            length += 1
        return cls(value, length)

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls(0, length)

    @classmethod
    def random(cls, length: int, rng) -> "BitString":
        return cls(rng.getrandbits(length) if length else 0, length)

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> "BitString":
        return cls(int.from_bytes(data, "big"), length)

    @property
    def value(self) -> int:
        return self._value

    def __len__(self) -> int:
        return self._length

    def __iter__(self) -> Iterator[int]:
        v, n = self._value, self._length
        for i in range(n - 1, -1, -1):
            yield (v >> i) & 1

    def __getitem__(self, idx):
        n = self._length
        if isinstance(idx, slice):
            start, stop, step = idx.indices(n)
            if step != 1:
                raise ValueError("BitString slices must have step 1")
            if stop <= start:
                return BitString(0, 0)
            width = stop - start
            return BitString((self._value >> (n - stop)) & ((1 << width) - 1), width)
        if idx < 0:
            idx += n
        if not 0 <= idx < n:
            raise IndexError("bit index out of range")
        return (self._value >> (n - 1 - idx)) & 1

    def _check(self, other: "BitString") -> None:
        if not isinstance(other, BitString):
            raise TypeError(f"expected BitString, got {type(other).__name__}")
        if other._length != self._length:
            raise ValueError(f"length mismatch: {self._length} vs {other._length}")

    def __xor__(self, other: "BitString") -> "BitString":
        self._check(other)
        return BitString(self._value ^ other._value, self._length)

    def __and__(self, other: "BitString") -> "BitString":
        self._check(other)
        return BitString(self._value & other._value, self._length)

    def __add__(self, other: "BitString") -> "BitString":
        """Concatenation."""
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString((self._value << other._length) | other._value, self._length + other._length)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._value == other._value and self._length == other._length

    def __hash__(self) -> int:
        return hash((self._value, self._length))

    def __str__(self) -> str:
        return format(self._value, f"0{self._length}b") if self._length else ""

    def __repr__(self) -> str:
        return f"BitString('{self}')"

    def to_bytes(self) -> bytes:
        return self._value.to_bytes((self._length + 7) // 8, "big")

    def popcount(self) -> int:
        return bin(self._value).count("1")


def concat(parts: Iterable[BitString]) -> BitString:
    out = BitString()
    for p in parts:
        out = out + p
    return out
