"""VLV codec tests: frozen examples, length thresholds, roundtrips, errors."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from midiwire.errors import MalformedVlvError, MidiRangeError, TruncationError
from midiwire.vlv import VLV_MAX, decode_vlv, encode_vlv


def two_byte_decode_table() -> dict[int, bytes]:
    """Independent oracle: exhaustively decode every 2-byte VLV, then invert."""
    table = {}
    for first in range(0x80, 0x100):
        for last in range(0x00, 0x80):
            value = ((first & 0x7F) << 7) | last
            encoding = bytes([first, last])
            # shortest form wins the inversion
            if value not in table or len(encoding) < len(table[value]):
                table[value] = encoding
    for value in range(0x80):  # 1-byte forms shadow the non-canonical 2-byte ones
        table[value] = bytes([value])
    return table


@pytest.mark.parametrize(
    "value,encoded",
    [
        (0, "00"),
        (64, "40"),
        (127, "7F"),
        (128, "81 00"),
        (256, "82 00"),
    ],
)
def test_encode_examples(value, encoded):
    assert encode_vlv(value) == bytes.fromhex(encoded)


def test_encode_matches_exhaustive_two_byte_oracle():
    table = two_byte_decode_table()
    assert encode_vlv(300) == table[300] == bytes.fromhex("82 2C")
    for value in (0, 1, 127, 128, 129, 300, 8191, 16383):
        assert encode_vlv(value) == table[value]


@pytest.mark.parametrize(
    "data,expected",
    [
        ("7F", (127, 1)),
        ("81 00", (128, 2)),
        ("82 00", (256, 2)),
        ("00 FF", (0, 1)),  # stops at the terminator, never reads further
        ("FF FF FF 7F", (VLV_MAX, 4)),
    ],
)
def test_decode_examples(data, expected):
    assert decode_vlv(bytes.fromhex(data)) == expected


def test_decode_at_offset():
    assert decode_vlv(bytes.fromhex("AA 81 00"), 1) == (128, 2)


def test_length_thresholds():
    for value, length in [
        (0, 1),
        (0x7F, 1),
        (0x80, 2),
        (0x3FFF, 2),
        (0x4000, 3),
        (0x1FFFFF, 3),
        (0x200000, 4),
        (VLV_MAX, 4),
    ]:
        assert len(encode_vlv(value)) == length, hex(value)


def test_roundtrip_exhaustive_low_range():
    for value in range(0x4000):
        encoded = encode_vlv(value)
        assert decode_vlv(encoded) == (value, len(encoded))


@given(st.integers(0, VLV_MAX))
def test_roundtrip_property(value):
    encoded = encode_vlv(value)
    assert decode_vlv(encoded) == (value, len(encoded))
    assert len(encoded) == max(1, -(-value.bit_length() // 7))


def test_encode_out_of_range():
    with pytest.raises(MidiRangeError):
        encode_vlv(-1)
    with pytest.raises(MidiRangeError):
        encode_vlv(VLV_MAX + 1)


def test_decode_truncated():
    with pytest.raises(TruncationError):
        decode_vlv(b"")
    with pytest.raises(TruncationError):
        decode_vlv(bytes.fromhex("81"))


def test_decode_unterminated():
    with pytest.raises(MalformedVlvError):
        decode_vlv(bytes.fromhex("FF FF FF FF 7F"))


def test_non_canonical_tolerated_then_rejected_in_strict():
    assert decode_vlv(bytes.fromhex("80 00")) == (0, 2)
    with pytest.raises(MalformedVlvError):
        decode_vlv(bytes.fromhex("80 00"), strict=True)
