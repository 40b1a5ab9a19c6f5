"""Event streams: delta-timed messages, serialization, note-span extraction.

A track is an ordered list of ``{delta-ticks, message}`` pairs. Parsing walks
alternating VLV delta times and messages, honouring running status, until the
input is exhausted or an End-of-Track meta event appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import MidiDecodeError, MidiRangeError
from .messages import (
    EndOfTrack,
    Message,
    NoteOff,
    NoteOn,
    channel_status_of,
    decode_message,
    encode_message,
    normalize_note_off,
)
from .vlv import VLV_MAX, decode_vlv, encode_vlv

NoteOffStyle = Literal["keep", "on0", "off"]
PairingMode = Literal["mono", "poly"]


@dataclass(frozen=True, slots=True)
class TrackEvent:
    delta: int
    message: Message


@dataclass(frozen=True)
class Track:
    events: tuple[TrackEvent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        for ev in self.events[:-1]:
            if isinstance(ev.message, EndOfTrack):
                raise MidiRangeError("End of Track must be the last event of a track")

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


@dataclass(frozen=True, slots=True)
class NoteSpan:
    """A sounding note reconstructed from an on/off pair (one notegram row)."""

    channel: int
    pitch: int
    velocity: int
    on_tick: int
    off_tick: int


def _parse_events(data: bytes, *, strict: bool = False) -> tuple[list[TrackEvent], int, bool]:
    """Shared scanner; returns (events, bytes_consumed, saw_end_of_track)."""
    events: list[TrackEvent] = []
    pos = 0
    running: int | None = None
    while pos < len(data):
        delta, consumed = decode_vlv(data, pos, strict=strict)
        pos += consumed
        msg, consumed = decode_message(data, pos, running)
        pos += consumed
        events.append(TrackEvent(delta, msg))
        running = channel_status_of(msg)  # meta/sysex clear running status
        if isinstance(msg, EndOfTrack):
            return events, pos, True
    return events, pos, False


def parse_event_stream(data: bytes, *, strict: bool = False) -> Track:
    """Parse a headerless event stream. Bytes after End-of-Track are ignored.

    In strict mode, non-canonical VLVs, trailing bytes and a missing
    End-of-Track all raise instead of being tolerated.
    """
    events, pos, saw_eot = _parse_events(data, strict=strict)
    if strict:
        if not saw_eot and events:
            raise MidiDecodeError("stream does not end with End of Track", len(data))
        if pos < len(data):
            raise MidiDecodeError(f"{len(data) - pos} bytes left after End of Track", pos)
    return Track(tuple(events))


def _apply_noteoff_style(m: Message, style: NoteOffStyle) -> Message:
    if style == "on0":
        if isinstance(m, NoteOff) and m.release == 0:
            return NoteOn(m.channel, m.pitch, 0)
    elif style == "off":
        if isinstance(m, NoteOn) and m.velocity == 0:
            return NoteOff(m.channel, m.pitch, 0)
    elif style != "keep":
        raise MidiRangeError(f"unknown note-off style {style!r}")
    return m


def serialize_event_stream(
    track: Track,
    *,
    use_running_status: bool = False,
    noteoff_style: NoteOffStyle = "keep",
) -> bytes:
    """Concatenated VLV delta + message bytes.

    ``noteoff_style`` rewrites note terminations: ``on0`` emits zero-release
    note-offs as note-ons with velocity 0, ``off`` does the reverse, ``keep``
    writes every message exactly as stored.
    """
    out = bytearray()
    running: int | None = None
    for ev in track.events:
        if not 0 <= ev.delta <= VLV_MAX:
            raise MidiRangeError(f"delta {ev.delta} outside 0..{VLV_MAX:#x}")
        msg = _apply_noteoff_style(ev.message, noteoff_style)
        raw = encode_message(msg)
        status = channel_status_of(msg)
        out += encode_vlv(ev.delta)
        if use_running_status and status is not None and status == running:
            out += raw[1:]
        else:
            out += raw
        running = status
    return bytes(out)


def absolute_timeline(track: Track) -> list[tuple[int, Message]]:
    """Running-sum of deltas: ``(absolute_tick, message)`` in stream order."""
    out = []
    tick = 0
    for ev in track.events:
        tick += ev.delta
        out.append((tick, ev.message))
    return out


def final_tick(track: Track) -> int:
    return sum(ev.delta for ev in track.events)


def _pair_note_spans(track: Track, mode: PairingMode) -> tuple[list[NoteSpan], list[str]]:
    if mode not in ("mono", "poly"):
        raise MidiRangeError(f"unknown pairing mode {mode!r}")
    warnings: list[str] = []
    spans: list[NoteSpan] = []
    # (channel, pitch) -> FIFO of (on_tick, velocity); insertion order doubles
    # as the mono-mode closing order.
    open_notes: dict[tuple[int, int], list[tuple[int, int]]] = {}
    tick = 0
    for ev in track.events:
        tick += ev.delta
        msg = normalize_note_off(ev.message)
        if isinstance(msg, NoteOn):
            if mode == "mono":
                # A new note terminates whatever still sounds on this channel.
                for (ch, pitch), queue in open_notes.items():
                    if ch != msg.channel:
                        continue
                    for on_tick, velocity in queue:
                        spans.append(NoteSpan(ch, pitch, velocity, on_tick, tick))
                    queue.clear()
            open_notes.setdefault((msg.channel, msg.pitch), []).append((tick, msg.velocity))
        elif isinstance(msg, NoteOff):
            queue = open_notes.get((msg.channel, msg.pitch))
            if queue:
                on_tick, velocity = queue.pop(0)  # FIFO: earliest matching note
                spans.append(NoteSpan(msg.channel, msg.pitch, velocity, on_tick, tick))
            else:
                warnings.append(
                    f"note-off at tick {tick} (channel {msg.channel}, pitch {msg.pitch})"
                    " matches no sounding note"
                )
    for (ch, pitch), queue in open_notes.items():
        for on_tick, velocity in queue:
            warnings.append(
                f"unclosed note (channel {ch}, pitch {pitch}) started at tick {on_tick};"
                f" closed at stream end ({tick})"
            )
            spans.append(NoteSpan(ch, pitch, velocity, on_tick, tick))
    spans.sort(key=lambda s: (s.on_tick, s.pitch))
    return spans, warnings


def to_note_spans(track: Track, mode: PairingMode = "poly", *, strict: bool = False) -> list[NoteSpan]:
    """Reconstruct sounding notes, sorted by (on_tick, pitch).

    Poly mode pairs each note-on with the next matching termination (FIFO for
    stacked same-pitch notes); mono mode also closes anything still open on a
    channel when a new note starts there. Unclosed notes are closed at the
    final tick, as a warning, or an error when ``strict``.
    """
    spans, warnings = _pair_note_spans(track, mode)
    if strict and warnings:
        raise MidiDecodeError("; ".join(warnings))
    return spans


def extract_note_spans(track: Track, mode: PairingMode = "poly") -> tuple[list[NoteSpan], list[str]]:
    """Like :func:`to_note_spans` but returning the pairing warnings too."""
    return _pair_note_spans(track, mode)


def validate_track(track: Track) -> list[str]:
    """Findings for a decoded track: missing End-of-Track, pairing problems."""
    findings: list[str] = []
    if not any(isinstance(ev.message, EndOfTrack) for ev in track.events):
        findings.append("missing End of Track meta event")
    _, warnings = _pair_note_spans(track, "poly")
    findings.extend(warnings)
    return findings


def validate_stream(data: bytes, *, strict: bool = False) -> list[str]:
    """Findings for raw stream bytes; decode errors become findings, not raises."""
    try:
        events, pos, _ = _parse_events(data, strict=strict)
    except MidiDecodeError as err:
        return [str(err)]
    findings = validate_track(Track(tuple(events)))
    if pos < len(data):
        findings.append(f"{len(data) - pos} trailing bytes after End of Track")
    return findings


def track_from_events(events: Iterable[tuple[int, Message]]) -> Track:
    """Convenience constructor from ``(delta, message)`` pairs."""
    return Track(tuple(TrackEvent(delta, msg) for delta, msg in events))
