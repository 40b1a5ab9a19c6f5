"""Variable-length values: the 1-4 byte integers used for delta times.

A VLV stores an unsigned integer in big-endian groups of 7 bits, one group
per byte. Every byte except the last has its top bit set; the byte with a
clear top bit terminates the value.
"""

from __future__ import annotations

from .errors import MalformedVlvError, MidiRangeError, TruncationError

VLV_MAX = 0x0FFFFFFF  # largest value a 4-byte VLV can carry


def encode_vlv(value: int) -> bytes:
    """Encode ``value`` in shortest form (no redundant leading 0x80 byte)."""
    if not 0 <= value <= VLV_MAX:
        raise MidiRangeError(f"VLV value {value} outside 0..{VLV_MAX:#x}")
    groups = [value & 0x7F]
    value >>= 7
    while value:
        groups.append((value & 0x7F) | 0x80)
        value >>= 7
    return bytes(reversed(groups))


def decode_vlv(data: bytes, offset: int = 0, *, strict: bool = False) -> tuple[int, int]:
    """Decode one VLV starting at ``offset``; return ``(value, bytes_consumed)``.

    Never reads past the terminator byte. Non-canonical encodings such as
    ``80 00`` are accepted unless ``strict`` is set.
    """
    value = 0
    for i in range(4):
        if offset + i >= len(data):
            raise TruncationError("input ended inside a variable-length value", offset + i)
        b = data[offset + i]
        if strict and i == 0 and b == 0x80:
            raise MalformedVlvError("non-canonical VLV (redundant leading 0x80)", offset)
        value = (value << 7) | (b & 0x7F)
        if not b & 0x80:
            return value, i + 1
    raise MalformedVlvError("VLV not terminated within 4 bytes", offset)
