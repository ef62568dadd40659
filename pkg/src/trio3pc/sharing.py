"""XOR 3-of-3 sharing and Shamir threshold sharing over a prime field.

Randomness is always injected.  XOR sharing needs ``getrandbits``; Shamir
sharing needs ``randrange``.  A :class:`random.Random` instance provides both.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .bits import BitString

# --------------------------------------------------------------------------
# XOR sharing


class XorSharing(NamedTuple):
    """Shares ``([x]_1, [x]_2, [x]_3)``; party ``i`` holds ``shares[i - 1]``."""

    s1: BitString
    s2: BitString
    s3: BitString

    def share(self, i: int) -> BitString:
        return self[i - 1]


def xor_share_int(value: int, length: int, rng) -> tuple[int, int, int]:
    """Integer fast path of :func:`xor_share`."""
    r1 = rng.getrandbits(length) if length else 0
    r2 = rng.getrandbits(length) if length else 0
    return r1, r2, value ^ r1 ^ r2


def xor_share(secret: BitString, rng) -> XorSharing:
    """Split ``secret`` into three shares: two drawn from ``rng``, the third forced."""
    n = len(secret)
    s1, s2, s3 = xor_share_int(secret.value, n, rng)
    return XorSharing(BitString(s1, n), BitString(s2, n), BitString(s3, n))


def xor_reconstruct(sh: Sequence[BitString]) -> BitString:
    a, b, c = sh
    return a ^ b ^ c


def xor_add_local(a_i: BitString, b_i: BitString) -> BitString:
    """``[x ^ y]_i = [x]_i ^ [y]_i``; no communication."""
    return a_i ^ b_i


# --------------------------------------------------------------------------
# prime field


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not reduced modulo {self.p}")

    @classmethod
    def of(cls, value: int, p: int) -> "FieldElement":
        return cls(value % p, p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"field mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement((self.value + self._coerce(other)) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement((self.value - self._coerce(other)) % self.p, self.p)

    def __rsub__(self, other):
        return FieldElement((self._coerce(other) - self.value) % self.p, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.p, self.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElement.of(self._coerce(other), self.p).inverse()

    def __int__(self) -> int:
        return self.value


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic for p < 3.3e24
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


# --------------------------------------------------------------------------
# Shamir sharing


@dataclass(frozen=True)
class ShamirShare:
    point: FieldElement
    value: FieldElement


def poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def shamir_share(secret: FieldElement, t: int, n_parties: int, rng) -> list[ShamirShare]:
    """Shares ``(i, f(i))`` for ``i = 1..n_parties`` of a random ``f`` with ``deg f <= t`` and ``f(0) = secret``."""
    p = secret.p
    if not 0 <= t < n_parties:
        raise ValueError(f"need 0 <= t < n_parties, got t={t}, n_parties={n_parties}")
    if p <= n_parties:
        raise ValueError(f"prime {p} must exceed the number of parties {n_parties}")
    coeffs = [secret.value] + [rng.randrange(p) for _ in range(t)]
    return [ShamirShare(FieldElement(i, p), FieldElement(poly_eval(coeffs, i, p), p)) for i in range(1, n_parties + 1)]


@lru_cache(maxsize=256)
def lagrange_coefficients(points: tuple[int, ...], p: int) -> tuple[int, ...]:
    """``theta_i(0)`` for each interpolation point, so that ``f(0) = sum f(a_i) theta_i(0)``."""
    if len(set(points)) != len(points):
        raise ValueError(f"duplicate evaluation points {points}")
    if any(a % p == 0 for a in points):
        raise ValueError("evaluation points must be non-zero")
    coeffs = []
    for i, ai in enumerate(points):
        num, den = 1, 1
        for j, aj in enumerate(points):
            if j != i:
                num = num * (-aj) % p
                den = den * (ai - aj) % p
        coeffs.append(num * pow(den, -1, p) % p)
    return tuple(coeffs)


def interpolate_at_zero(points: Sequence[int], values: Sequence[int], p: int) -> int:
    coeffs = lagrange_coefficients(tuple(points), p)
    return sum(c * v for c, v in zip(coeffs, values)) % p


def lagrange_reconstruct(shares: Sequence[ShamirShare], t: int | None = None) -> FieldElement:
    """``f(0)`` of the polynomial through ``shares``.

    With ``t`` given, at least ``t + 1`` shares are required and only the
    first ``t + 1`` are used; without it, all shares are interpolated.
    """
    if not shares:
        raise ValueError("no shares to reconstruct from")
    p = shares[0].value.p
    if t is not None:
        if len(shares) < t + 1:
            raise ValueError(f"need at least {t + 1} shares, got {len(shares)}")
        shares = shares[: t + 1]
    points = [s.point.value for s in shares]
    return FieldElement(interpolate_at_zero(points, [s.value.value for s in shares], p), p)
