"""Single-message codec: channel-voice and meta messages to and from bytes.

A message is one status byte (top bit set) followed by data bytes (top bit
clear). Meta messages are framed as ``FF <type> <vlv-length> <payload>`` and
their payload bytes are opaque, so they may carry any values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedDataError, MidiRangeError, OrphanDataError, TruncationError
from .vlv import decode_vlv, encode_vlv

NOTE_OFF = 0x80
NOTE_ON = 0x90
POLY_PRESSURE = 0xA0
CONTROL_CHANGE = 0xB0
PROGRAM_CHANGE = 0xC0
CHANNEL_PRESSURE = 0xD0
PITCH_BEND = 0xE0
SYSEX_START = 0xF0
SYSEX_ESCAPE = 0xF7
META_STATUS = 0xFF

META_END_OF_TRACK = 0x2F
META_SET_TEMPO = 0x51
META_TIME_SIGNATURE = 0x58
META_KEY_SIGNATURE = 0x59

# Data bytes following each channel-voice status family.
DATA_BYTE_COUNT = {
    NOTE_OFF: 2,
    NOTE_ON: 2,
    POLY_PRESSURE: 2,
    CONTROL_CHANGE: 2,
    PROGRAM_CHANGE: 1,
    CHANNEL_PRESSURE: 1,
    PITCH_BEND: 2,
}


@dataclass(frozen=True, slots=True)
class NoteOn:
    channel: int
    pitch: int
    velocity: int


@dataclass(frozen=True, slots=True)
class NoteOff:
    channel: int
    pitch: int
    release: int = 0


@dataclass(frozen=True, slots=True)
class ProgramChange:
    channel: int
    program: int


@dataclass(frozen=True, slots=True)
class TimeSignature:
    numerator: int = 4
    denominator_pow2: int = 2
    clocks_per_click: int = 24
    demisemiquavers_per_quarter: int = 8


@dataclass(frozen=True, slots=True)
class KeySignature:
    sharps_flats: int = 0  # -7 (flats) .. +7 (sharps)
    mode: int = 0  # 0 major, 1 minor


@dataclass(frozen=True, slots=True)
class SetTempo:
    microseconds_per_quarter: int = 500_000


@dataclass(frozen=True, slots=True)
class EndOfTrack:
    pass


@dataclass(frozen=True, slots=True)
class RawChannel:
    """Channel-voice message the library carries opaquely (pressure, CC, bend)."""

    status: int
    data: bytes


@dataclass(frozen=True, slots=True)
class RawMeta:
    """Meta message of a type (or payload length) the library does not interpret."""

    type: int
    payload: bytes


@dataclass(frozen=True, slots=True)
class SysEx:
    """System-exclusive block, carried opaquely."""

    status: int  # 0xF0 or 0xF7
    payload: bytes


Message = (
    NoteOn
    | NoteOff
    | ProgramChange
    | TimeSignature
    | KeySignature
    | SetTempo
    | EndOfTrack
    | RawChannel
    | RawMeta
    | SysEx
)


def is_status_byte(b: int) -> bool:
    """True iff the byte has its top bit set (command byte, not data byte)."""
    return b >= 0x80


def is_channel_status(b: int) -> bool:
    return 0x80 <= b <= 0xEF


def channel_status_of(m: Message) -> int | None:
    """The status byte a channel-voice message encodes to; None for meta/sysex."""
    if isinstance(m, NoteOn):
        return NOTE_ON | m.channel
    if isinstance(m, NoteOff):
        return NOTE_OFF | m.channel
    if isinstance(m, ProgramChange):
        return PROGRAM_CHANGE | m.channel
    if isinstance(m, RawChannel):
        return m.status
    return None


def _read_data_bytes(data: bytes, pos: int, count: int) -> bytes:
    if pos + count > len(data):
        raise TruncationError("message truncated", len(data))
    chunk = data[pos : pos + count]
    for i, b in enumerate(chunk):
        if b >= 0x80:
            raise MalformedDataError(f"expected data byte, got {b:#04x}", pos + i)
    return chunk


def _decode_meta(data: bytes, pos: int) -> tuple[Message, int]:
    start = pos
    if pos >= len(data):
        raise TruncationError("meta message truncated before type byte", pos)
    meta_type = data[pos]
    if meta_type >= 0x80:
        raise MalformedDataError(f"meta type byte {meta_type:#04x} has top bit set", pos)
    pos += 1
    length, consumed = decode_vlv(data, pos)
    pos += consumed
    if pos + length > len(data):
        raise TruncationError("meta payload truncated", len(data))
    payload = data[pos : pos + length]
    pos += length

    if meta_type == META_END_OF_TRACK and length == 0:
        return EndOfTrack(), pos - start
    if meta_type == META_SET_TEMPO and length == 3:
        return SetTempo(int.from_bytes(payload, "big")), pos - start
    if meta_type == META_TIME_SIGNATURE and length == 4:
        return TimeSignature(payload[0], payload[1], payload[2], payload[3]), pos - start
    if meta_type == META_KEY_SIGNATURE and length == 2:
        sf = payload[0] - 256 if payload[0] >= 128 else payload[0]
        if -7 <= sf <= 7 and payload[1] in (0, 1):
            return KeySignature(sf, payload[1]), pos - start
    return RawMeta(meta_type, payload), pos - start


def decode_message(
    data: bytes, offset: int = 0, running_status: int | None = None
) -> tuple[Message, int]:
    """Decode one message at ``offset``; return ``(message, bytes_consumed)``.

    If the first byte is a data byte, ``running_status`` must hold the
    channel-voice status to reuse; the status byte then costs no input.
    """
    if offset >= len(data):
        raise TruncationError("expected a message", offset)
    first = data[offset]
    if is_status_byte(first):
        status = first
        pos = offset + 1
    else:
        if running_status is None or not is_channel_status(running_status):
            raise OrphanDataError(f"data byte {first:#04x} with no running status", offset)
        status = running_status
        pos = offset

    if status == META_STATUS:
        msg, consumed = _decode_meta(data, pos)
        return msg, pos + consumed - offset

    if status in (SYSEX_START, SYSEX_ESCAPE):
        length, consumed = decode_vlv(data, pos)
        pos += consumed
        if pos + length > len(data):
            raise TruncationError("sysex payload truncated", len(data))
        return SysEx(status, data[pos : pos + length]), pos + length - offset

    if not is_channel_status(status):
        # 0xF1-0xFE system bytes never appear inside a file stream
        raise MalformedDataError(f"status byte {status:#04x} is not valid in a file", offset)

    family = status & 0xF0
    channel = status & 0x0F
    payload = _read_data_bytes(data, pos, DATA_BYTE_COUNT[family])
    pos += len(payload)

    if family == NOTE_ON:
        msg: Message = NoteOn(channel, payload[0], payload[1])
    elif family == NOTE_OFF:
        msg = NoteOff(channel, payload[0], payload[1])
    elif family == PROGRAM_CHANGE:
        msg = ProgramChange(channel, payload[0])
    else:
        msg = RawChannel(status, payload)
    return msg, pos - offset


def _check(name: str, value: int, lo: int, hi: int) -> int:
    if not isinstance(value, int) or not lo <= value <= hi:
        raise MidiRangeError(f"{name} {value!r} outside {lo}..{hi}")
    return value


def encode_message(m: Message) -> bytes:
    """Encode a message canonically (status byte always present, meta length as VLV)."""
    if isinstance(m, NoteOn):
        return bytes(
            [
                NOTE_ON | _check("channel", m.channel, 0, 15),
                _check("pitch", m.pitch, 0, 127),
                _check("velocity", m.velocity, 0, 127),
            ]
        )
    if isinstance(m, NoteOff):
        return bytes(
            [
                NOTE_OFF | _check("channel", m.channel, 0, 15),
                _check("pitch", m.pitch, 0, 127),
                _check("release", m.release, 0, 127),
            ]
        )
    if isinstance(m, ProgramChange):
        return bytes(
            [
                PROGRAM_CHANGE | _check("channel", m.channel, 0, 15),
                _check("program", m.program, 0, 127),
            ]
        )
    if isinstance(m, TimeSignature):
        return bytes(
            [
                META_STATUS,
                META_TIME_SIGNATURE,
                4,
                _check("numerator", m.numerator, 0, 255),
                _check("denominator_pow2", m.denominator_pow2, 0, 255),
                _check("clocks_per_click", m.clocks_per_click, 0, 255),
                _check("demisemiquavers_per_quarter", m.demisemiquavers_per_quarter, 0, 255),
            ]
        )
    if isinstance(m, KeySignature):
        sf = _check("sharps_flats", m.sharps_flats, -7, 7)
        return bytes([META_STATUS, META_KEY_SIGNATURE, 2, sf & 0xFF, _check("mode", m.mode, 0, 1)])
    if isinstance(m, SetTempo):
        us = _check("microseconds_per_quarter", m.microseconds_per_quarter, 0, 0xFFFFFF)
        return bytes([META_STATUS, META_SET_TEMPO, 3]) + us.to_bytes(3, "big")
    if isinstance(m, EndOfTrack):
        return bytes([META_STATUS, META_END_OF_TRACK, 0])
    if isinstance(m, RawChannel):
        status = m.status
        if not is_channel_status(status):
            raise MidiRangeError(f"raw channel status {status:#04x} outside 0x80..0xEF")
        expected = DATA_BYTE_COUNT[status & 0xF0]
        if len(m.data) != expected:
            raise MidiRangeError(
                f"status {status:#04x} needs {expected} data bytes, got {len(m.data)}"
            )
        for b in m.data:
            _check("data byte", b, 0, 127)
        return bytes([status]) + bytes(m.data)
    if isinstance(m, RawMeta):
        _check("meta type", m.type, 0, 127)
        return bytes([META_STATUS, m.type]) + encode_vlv(len(m.payload)) + bytes(m.payload)
    if isinstance(m, SysEx):
        if m.status not in (SYSEX_START, SYSEX_ESCAPE):
            raise MidiRangeError(f"sysex status {m.status:#04x} must be 0xF0 or 0xF7")
        return bytes([m.status]) + encode_vlv(len(m.payload)) + bytes(m.payload)
    raise MidiRangeError(f"cannot encode {m!r}")


def normalize_note_off(m: Message) -> Message:
    """Map note-on with velocity 0 to the equivalent note-off; pass everything else through."""
    if isinstance(m, NoteOn) and m.velocity == 0:
        return NoteOff(m.channel, m.pitch, 0)
    return m
