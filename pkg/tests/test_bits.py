import random

import pytest
from hypothesis import given, strategies as st

from trio3pc.bits import BitString, concat


def test_string_round_trip_keeps_leading_zeros():
    b = BitString.from_str("0010")
    assert len(b) == 4
    assert b.value == 2
    assert str(b) == "0010"


def test_wire_one_is_leftmost():
    b = BitString.from_str("100")
    assert b[0] == 1 and b[2] == 0
    assert list(b) == [1, 0, 0]


def test_slicing_and_concat():
    b = BitString.from_str("110100")
    assert str(b[1:4]) == "101"
    assert str(b[4:2]) == ""
    assert str(concat([b[:2], b[2:]])) == "110100"
    assert str(BitString.from_str("1") + BitString.from_str("01")) == "101"


def test_xor_needs_equal_lengths():
    with pytest.raises(ValueError):
        BitString.from_str("10") ^ BitString.from_str("101")


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        BitString.from_str("10a")
    with pytest.raises(ValueError):
        BitString(4, 2)
    with pytest.raises(ValueError):
        BitString.from_bits([0, 2])


def test_empty():
    e = BitString()
    assert len(e) == 0 and str(e) == "" and e.to_bytes() == b""
    assert BitString.random(0, random.Random(1)) == e


@given(st.text(alphabet="01", max_size=200))
def test_round_trip_through_bytes(text):
    b = BitString.from_str(text)
    assert BitString.from_bytes(b.to_bytes(), len(b)) == b
    assert BitString.from_bits(list(b)) == b
    assert b.popcount() == text.count("1")


@given(st.integers(0, 64).flatmap(lambda n: st.tuples(st.integers(0, 2**n - 1), st.integers(0, 2**n - 1), st.just(n))))
def test_xor_and_match_ints(t):
    a, b, n = t
    x, y = BitString(a, n), BitString(b, n)
    assert (x ^ y).value == a ^ b
    assert (x & y).value == a & b
    assert x ^ y ^ y == x
