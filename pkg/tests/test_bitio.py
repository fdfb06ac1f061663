import pytest
from hypothesis import given, strategies as st

from orderlabel.bitio import (
    BitCursor, BitString, BitWriter, DecodingError, EncodingError, append_uint, ceil_log2, read_uint,
)


def test_append_examples():
    b = append_uint(BitString(), 5, 4)
    assert str(b) == "0101" and b.length == 4
    z = append_uint(BitString(), 0, 1)
    assert str(z) == "0" and z.length == 1
    two = append_uint(append_uint(BitString(), 6, 3), 1, 2)
    assert str(two) == "11001" and two.length == 5
    c = two.cursor()
    assert (read_uint(c, 3), read_uint(c, 2)) == (6, 1)
    assert c.inspected == 5


def test_read_examples():
    c = BitString.from_str("0101").cursor()
    assert read_uint(c, 4) == 5 and c.inspected == 4
    c = BitString.from_str("0101").cursor()
    assert read_uint(c, 0) == 0 and c.inspected == 0


def test_out_of_range_value_rejected():
    with pytest.raises(EncodingError):
        append_uint(BitString(), 16, 4)
    with pytest.raises(EncodingError):
        BitWriter().append_uint(-1, 3)


def test_overrun_rejected():
    c = BitString.from_str("101").cursor()
    with pytest.raises(DecodingError):
        c.read_uint(4)


def test_seek_is_free():
    c = BitCursor(BitString.from_str("1100"))
    c.seek(2)
    assert c.inspected == 0
    assert c.read_uint(2) == 0
    assert c.inspected == 2


def test_bytes_round_trip_pads_right():
    b = BitString.from_str("1011001")
    assert b.to_bytes() == bytes([0b10110010])
    assert BitString.from_bytes(b.to_bytes(), 7) == b


def test_from_bools_matches_flags():
    flags = [True, False, False, True, True, False, True, False, True]
    assert str(BitString.from_bools(flags)) == "".join("1" if f else "0" for f in flags)
    assert BitString.from_bools([]) == BitString()


@pytest.mark.parametrize("x,expected", [(0, 0), (1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10), (1025, 11)])
def test_ceil_log2(x, expected):
    assert ceil_log2(x) == expected


fields = st.lists(st.integers(0, 40).flatmap(
    lambda w: st.tuples(st.integers(0, (1 << w) - 1), st.just(w))), max_size=30)


@given(fields)
def test_round_trip(seq):
    w = BitWriter()
    for value, width in seq:
        w.append_uint(value, width)
    bits = w.seal()
    assert bits.length == sum(width for _, width in seq)
    c = bits.cursor()
    assert [c.read_uint(width) for _, width in seq] == [v for v, _ in seq]
    assert c.inspected == bits.length
