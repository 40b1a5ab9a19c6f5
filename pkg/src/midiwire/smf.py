"""SMF container: ``MThd``/``MTrk`` chunk framing around event streams.

The header payload is six bytes — format, track count, division — all
big-endian. Only ticks-per-quarter divisions are supported; SMPTE divisions
(top bit set) are rejected.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import BadChunkError, MidiDecodeError, MidiRangeError, TruncationError
from .messages import EndOfTrack, SetTempo
from .theory import DEFAULT_TEMPO_US, tempo_to_bpm
from .track import (
    NoteOffStyle,
    Track,
    TrackEvent,
    final_tick,
    parse_event_stream,
    serialize_event_stream,
    to_note_spans,
    validate_stream,
)

HEADER_MAGIC = b"MThd"
TRACK_MAGIC = b"MTrk"
DEFAULT_PPQ = 128


@dataclass(frozen=True)
class SmfFile:
    format: int = 0
    division_ppq: int = DEFAULT_PPQ
    tracks: tuple[Track, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tracks", tuple(self.tracks))
        if self.format not in (0, 1, 2):
            raise MidiRangeError(f"format {self.format} must be 0, 1 or 2")
        if not 1 <= self.division_ppq <= 0x7FFF:
            raise MidiRangeError(f"division {self.division_ppq} outside 1..32767")
        if self.format == 0 and len(self.tracks) != 1:
            raise MidiRangeError(f"format 0 requires exactly one track, got {len(self.tracks)}")


def split_chunks(data: bytes) -> tuple[bytes, list[tuple[int, bytes]], list[str]]:
    """Split a file into the 6-byte header payload and ``(offset, payload)``
    per MTrk chunk. Unknown chunk types are skipped with a warning."""
    warnings: list[str] = []
    if len(data) < 8:
        raise TruncationError("file too short for a chunk header", len(data))
    if data[:4] != HEADER_MAGIC:
        raise BadChunkError("not a Standard MIDI File (missing MThd)", 0)
    (header_len,) = struct.unpack_from(">I", data, 4)
    if header_len != 6:
        raise BadChunkError(f"MThd payload length {header_len}, expected 6", 4)
    if len(data) < 14:
        raise TruncationError("header chunk truncated", len(data))
    header = data[8:14]

    chunks: list[tuple[int, bytes]] = []
    pos = 14
    while pos < len(data):
        if pos + 8 > len(data):
            raise TruncationError("trailing bytes too short for a chunk header", pos)
        magic = data[pos : pos + 4]
        (length,) = struct.unpack_from(">I", data, pos + 4)
        body_start = pos + 8
        if body_start + length > len(data):
            raise TruncationError(
                f"chunk at byte {pos} declares {length} bytes, only "
                f"{len(data) - body_start} available",
                pos,
            )
        if magic == TRACK_MAGIC:
            chunks.append((body_start, data[body_start : body_start + length]))
        else:
            warnings.append(f"skipping unknown chunk type {magic!r} at byte {pos}")
        pos = body_start + length
    return header, chunks, warnings


def parse_smf(data: bytes, *, strict: bool = False) -> SmfFile:
    """Decode a complete file. Raises a structured error on any framing problem."""
    header, chunks, warnings = split_chunks(data)
    fmt, ntracks, division = struct.unpack(">HHH", header)
    if fmt not in (0, 1, 2):
        raise BadChunkError(f"unknown format {fmt}", 8)
    if division & 0x8000:
        raise BadChunkError("SMPTE division not supported", 12)
    if division == 0:
        raise BadChunkError("division must be at least 1 tick per quarter", 12)
    if len(chunks) < ntracks:
        raise TruncationError(
            f"header declares {ntracks} tracks, found {len(chunks)}", len(data)
        )
    if strict and (warnings or len(chunks) > ntracks):
        raise BadChunkError("; ".join(warnings) or "more track chunks than declared")
    tracks = []
    for offset, payload in chunks[:ntracks]:
        try:
            tracks.append(parse_event_stream(payload, strict=strict))
        except MidiDecodeError as err:
            raise err.shifted(offset) from None
    return SmfFile(fmt, division, tuple(tracks))


def ensure_end_of_track(track: Track) -> Track:
    if track.events and isinstance(track.events[-1].message, EndOfTrack):
        return track
    return Track(track.events + (TrackEvent(0, EndOfTrack()),))


def write_smf(
    f: SmfFile,
    *,
    use_running_status: bool = False,
    noteoff_style: NoteOffStyle = "keep",
) -> bytes:
    """Encode a file; every track is terminated with exactly one End-of-Track."""
    out = bytearray(struct.pack(">4sIHHH", HEADER_MAGIC, 6, f.format, len(f.tracks), f.division_ppq))
    for track in f.tracks:
        payload = serialize_event_stream(
            ensure_end_of_track(track),
            use_running_status=use_running_status,
            noteoff_style=noteoff_style,
        )
        out += TRACK_MAGIC + struct.pack(">I", len(payload)) + payload
    return bytes(out)


@dataclass(frozen=True)
class FileSummary:
    format: int
    division_ppq: int
    track_count: int
    event_count: int
    tempo_us: int
    tempo_bpm: float
    tempo_is_default: bool
    span_count: int
    duration_ticks: int
    duration_seconds: float


def summarize(f: SmfFile) -> FileSummary:
    """Counts, tempo and wall-clock duration (first tempo event, else 120 bpm)."""
    tempo_us = None
    for track in f.tracks:
        for ev in track.events:
            if isinstance(ev.message, SetTempo):
                tempo_us = ev.message.microseconds_per_quarter
                break
        if tempo_us is not None:
            break
    tempo_is_default = tempo_us is None
    if tempo_us is None:
        tempo_us = DEFAULT_TEMPO_US
    event_count = sum(len(t.events) for t in f.tracks)
    span_count = sum(len(to_note_spans(t)) for t in f.tracks)
    duration_ticks = max((final_tick(t) for t in f.tracks), default=0)
    duration_seconds = duration_ticks / f.division_ppq * tempo_us / 1_000_000
    return FileSummary(
        format=f.format,
        division_ppq=f.division_ppq,
        track_count=len(f.tracks),
        event_count=event_count,
        tempo_us=tempo_us,
        tempo_bpm=tempo_to_bpm(tempo_us),
        tempo_is_default=tempo_is_default,
        span_count=span_count,
        duration_ticks=duration_ticks,
        duration_seconds=duration_seconds,
    )


def validate_file(data: bytes, *, strict: bool = False) -> list[str]:
    """Findings for raw file bytes; framing and decode errors become findings."""
    try:
        header, chunks, warnings = split_chunks(data)
        fmt, ntracks, division = struct.unpack(">HHH", header)
    except MidiDecodeError as err:
        return [str(err)]
    findings = list(warnings)
    if fmt not in (0, 1, 2):
        findings.append(f"unknown format {fmt}")
    if division & 0x8000:
        findings.append("SMPTE division not supported")
    if len(chunks) != ntracks:
        findings.append(f"header declares {ntracks} tracks, found {len(chunks)}")
    for i, (_, payload) in enumerate(chunks):
        findings.extend(
            f"track {i + 1}: {finding}"
            for finding in validate_stream(payload, strict=strict)
        )
    return findings
