"""Textual score DSL: assemble scores into files, disassemble bytes into listings.

Grammar (line-oriented, ``#`` comments, directives before the first voice):

    ppq N                   ticks per quarter note (default 128)
    tempo BPM               emit a tempo meta event
    timesig N/M [CC [BB]]   emit a time signature (CC clocks/click, default 24;
                            BB demisemiquavers/quarter, default 8)
    keysig K major|minor    emit a key signature, K = -7..7 sharps
    noteoff on0|off         note termination style (default on0: note-on, velocity 0)
    eot on|off              append the End-of-Track event (default on)
    voice chK [program P]:  start a voice on 1-based channel K (1..16)

Voice items, one per line:

    PITCH[+PITCH...] P/Q [dynamic|vNN] [rNN]    note or chord; rNN sets the
                                                note-off release (style off)
    R P/Q                                       rest

Within one voice items are sequential; simultaneity comes from chords and
from multiple voices (which may share a channel).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import MidiError, ScoreError
from .messages import (
    EndOfTrack,
    KeySignature,
    Message,
    NoteOff,
    NoteOn,
    ProgramChange,
    RawChannel,
    RawMeta,
    SetTempo,
    SysEx,
    TimeSignature,
    encode_message,
)
from .smf import DEFAULT_PPQ, SmfFile
from .theory import (
    DYNAMICS,
    bpm_to_tempo,
    dynamic_to_velocity,
    duration_to_ticks,
    name_to_pitch,
    pitch_to_name,
    tempo_to_bpm,
    ticks_to_duration_name,
)
from .track import Track, TrackEvent, extract_note_spans
from .vlv import encode_vlv

DEFAULT_VELOCITY = DYNAMICS["mf"]


@dataclass(frozen=True, slots=True)
class NoteItem:
    pitches: tuple[int, ...]
    value: Fraction
    velocity: int = DEFAULT_VELOCITY
    release: int = 0


@dataclass(frozen=True, slots=True)
class RestItem:
    value: Fraction


@dataclass(frozen=True)
class Voice:
    channel: int  # encoded 0-based
    items: tuple[NoteItem | RestItem, ...] = ()


@dataclass(frozen=True)
class Score:
    ppq: int = DEFAULT_PPQ
    tempo_bpm: float | None = None
    timesig: tuple[int, int] | None = None
    timesig_clocks: int = 24
    timesig_demis: int = 8
    keysig: tuple[int, int] | None = None
    noteoff_style: str = "on0"
    emit_end_of_track: bool = True
    bindings: tuple[tuple[int, int], ...] = ()  # (channel, program) in declaration order
    voices: tuple[Voice, ...] = ()


_VOICE_RE = re.compile(r"^voice\s+ch(\d+)(?:\s+program\s+(\d+))?\s*:$", re.IGNORECASE)
_FRACTION_RE = re.compile(r"^(\d+)(?:/(\d+))?$")
_VELOCITY_RE = re.compile(r"^v(\d+)$")
_RELEASE_RE = re.compile(r"^r(\d+)$")


def _parse_fraction(token: str, lineno: int, col: int) -> Fraction:
    m = _FRACTION_RE.match(token)
    if not m:
        raise ScoreError(f"bad fraction {token!r}", lineno, col)
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) else 1
    if p < 1 or q < 1:
        raise ScoreError(f"fraction {token!r} must have positive terms", lineno, col)
    return Fraction(p, q)


def _column(line: str, token: str) -> int:
    idx = line.find(token)
    return idx + 1 if idx >= 0 else 1


def _parse_item(line: str, lineno: int) -> NoteItem | RestItem:
    tokens = line.split()
    if tokens[0].upper() == "R":
        if len(tokens) != 2:
            raise ScoreError("rest takes exactly one duration", lineno, 1)
        return RestItem(_parse_fraction(tokens[1], lineno, _column(line, tokens[1])))
    if len(tokens) < 2:
        raise ScoreError("note item needs a pitch and a duration", lineno, 1)
    pitches = []
    for part in tokens[0].split("+"):
        try:
            pitches.append(name_to_pitch(part))
        except MidiError as err:
            raise ScoreError(str(err), lineno, _column(line, tokens[0])) from None
    if len(set(pitches)) != len(pitches):
        raise ScoreError("chord pitches must be distinct", lineno, _column(line, tokens[0]))
    value = _parse_fraction(tokens[1], lineno, _column(line, tokens[1]))
    velocity = DEFAULT_VELOCITY
    release = 0
    for token in tokens[2:]:
        col = _column(line, token)
        if token in DYNAMICS:
            velocity = dynamic_to_velocity(token)
        elif m := _VELOCITY_RE.match(token):
            velocity = int(m.group(1))
            if not 1 <= velocity <= 127:
                raise ScoreError(f"velocity {velocity} outside 1..127", lineno, col)
        elif m := _RELEASE_RE.match(token):
            release = int(m.group(1))
            if not 0 <= release <= 127:
                raise ScoreError(f"release {release} outside 0..127", lineno, col)
        else:
            raise ScoreError(f"unexpected token {token!r}", lineno, col)
    return NoteItem(tuple(pitches), value, velocity, release)


def parse_score(text: str) -> Score:
    """Parse DSL text; raises :class:`ScoreError` with line/column diagnostics."""
    score = Score()
    voices: list[tuple[int, list[NoteItem | RestItem]]] = []
    bindings: list[tuple[int, int]] = []
    bound: dict[int, int] = {}

    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].lower()

        if head == "voice":
            m = _VOICE_RE.match(line)
            if not m:
                raise ScoreError("malformed voice header", lineno, 1)
            channel = int(m.group(1))
            if not 1 <= channel <= 16:
                raise ScoreError(f"channel {channel} outside 1..16", lineno, 1)
            channel -= 1
            if m.group(2) is not None:
                program = int(m.group(2))
                if not 0 <= program <= 127:
                    raise ScoreError(f"program {program} outside 0..127", lineno, 1)
                if channel in bound and bound[channel] != program:
                    raise ScoreError(
                        f"channel {channel + 1} bound to two programs", lineno, 1
                    )
                if channel not in bound:
                    bound[channel] = program
                    bindings.append((channel, program))
            voices.append((channel, []))
            continue

        if not voices:
            directive = head
            args = tokens[1:]
            if directive == "ppq" and len(args) == 1 and args[0].isdigit():
                ppq = int(args[0])
                if not 1 <= ppq <= 0x7FFF:
                    raise ScoreError(f"ppq {ppq} outside 1..32767", lineno, 1)
                score = replace(score, ppq=ppq)
            elif directive == "tempo" and len(args) == 1:
                try:
                    bpm = float(args[0])
                except ValueError:
                    raise ScoreError(f"bad tempo {args[0]!r}", lineno, 1) from None
                if bpm <= 0:
                    raise ScoreError("tempo must be positive", lineno, 1)
                score = replace(score, tempo_bpm=bpm)
            elif directive == "timesig" and 1 <= len(args) <= 3:
                m = re.match(r"^(\d+)/(\d+)$", args[0])
                if not m:
                    raise ScoreError(f"bad time signature {args[0]!r}", lineno, 1)
                num, den = int(m.group(1)), int(m.group(2))
                if den < 1 or den & (den - 1):
                    raise ScoreError("time signature denominator must be a power of two", lineno, 1)
                extras = [int(a) if a.isdigit() else -1 for a in args[1:]]
                if any(not 0 <= x <= 255 for x in extras):
                    raise ScoreError("timesig extras must be 0..255", lineno, 1)
                score = replace(
                    score,
                    timesig=(num, den),
                    timesig_clocks=extras[0] if len(extras) > 0 else score.timesig_clocks,
                    timesig_demis=extras[1] if len(extras) > 1 else score.timesig_demis,
                )
            elif directive == "keysig" and len(args) == 2:
                try:
                    sharps = int(args[0])
                except ValueError:
                    raise ScoreError(f"bad key signature {args[0]!r}", lineno, 1) from None
                mode = {"major": 0, "minor": 1}.get(args[1].lower())
                if mode is None or not -7 <= sharps <= 7:
                    raise ScoreError("keysig takes -7..7 and major|minor", lineno, 1)
                score = replace(score, keysig=(sharps, mode))
            elif directive == "noteoff" and len(args) == 1 and args[0] in ("on0", "off"):
                score = replace(score, noteoff_style=args[0])
            elif directive == "eot" and len(args) == 1 and args[0] in ("on", "off"):
                score = replace(score, emit_end_of_track=args[0] == "on")
            else:
                raise ScoreError(f"unknown directive {line!r}", lineno, 1)
            continue

        voices[-1][1].append(_parse_item(line, lineno))

    if not voices:
        raise ScoreError("score has no voices")
    for channel, items in voices:
        if not items:
            raise ScoreError(f"voice on channel {channel + 1} has no items")
    return replace(
        score,
        bindings=tuple(bindings),
        voices=tuple(Voice(ch, tuple(items)) for ch, items in voices),
    )


# Sort keys for simultaneous events: metas, then note-offs (latest-started
# note closes first, ties in voice order), then program changes, then
# note-ons in voice order. This matches how the reference listings interleave.
_KIND_META = 0
_KIND_OFF = 1
_KIND_PROGRAM = 2
_KIND_ON = 3


def assemble(score: Score) -> SmfFile:
    """Build a single-track format-0 file from a score."""
    records: list[tuple[int, tuple, Message]] = []
    if score.timesig:
        num, den = score.timesig
        records.append(
            (
                0,
                (_KIND_META, 0),
                TimeSignature(num, den.bit_length() - 1, score.timesig_clocks, score.timesig_demis),
            )
        )
    if score.keysig:
        records.append((0, (_KIND_META, 1), KeySignature(*score.keysig)))
    if score.tempo_bpm is not None:
        records.append((0, (_KIND_META, 2), SetTempo(bpm_to_tempo(score.tempo_bpm))))
    for bi, (channel, program) in enumerate(score.bindings):
        records.append((0, (_KIND_PROGRAM, bi), ProgramChange(channel, program)))

    for vi, voice in enumerate(score.voices):
        cursor = 0
        for ii, item in enumerate(voice.items):
            ticks = duration_to_ticks(item.value, score.ppq)
            if isinstance(item, NoteItem):
                for pi, pitch in enumerate(item.pitches):
                    records.append(
                        (cursor, (_KIND_ON, vi, ii, pi), NoteOn(voice.channel, pitch, item.velocity))
                    )
                    if score.noteoff_style == "on0" and item.release == 0:
                        off: Message = NoteOn(voice.channel, pitch, 0)
                    else:
                        off = NoteOff(voice.channel, pitch, item.release)
                    records.append((cursor + ticks, (_KIND_OFF, -cursor, vi, ii, pi), off))
            cursor += ticks

    records.sort(key=lambda r: (r[0], r[1]))
    events = []
    previous = 0
    for tick, _, message in records:
        events.append(TrackEvent(tick - previous, message))
        previous = tick
    if score.emit_end_of_track:
        events.append(TrackEvent(0, EndOfTrack()))
    return SmfFile(0, score.ppq, (Track(tuple(events)),))


def _annotate(msg: Message) -> str:
    if isinstance(msg, NoteOn) and msg.velocity > 0:
        return f"Start of {pitch_to_name(msg.pitch)} note, pitch={msg.pitch}"
    if isinstance(msg, NoteOn) or isinstance(msg, NoteOff):
        return f"End of {pitch_to_name(msg.pitch)} note, pitch={msg.pitch}"
    if isinstance(msg, ProgramChange):
        return f"Program change: channel {msg.channel + 1}, program {msg.program}"
    if isinstance(msg, TimeSignature):
        return f"Time signature {msg.numerator}/{2 ** msg.denominator_pow2}"
    if isinstance(msg, KeySignature):
        kind = "sharps" if msg.sharps_flats >= 0 else "flats"
        mode = "major" if msg.mode == 0 else "minor"
        return f"Key signature: {abs(msg.sharps_flats)} {kind}, {mode}"
    if isinstance(msg, SetTempo):
        return f"Tempo {tempo_to_bpm(msg.microseconds_per_quarter):g} bpm"
    if isinstance(msg, EndOfTrack):
        return "End of Track"
    if isinstance(msg, RawChannel):
        return f"Channel message 0x{msg.status:02X} on channel {(msg.status & 0x0F) + 1}"
    if isinstance(msg, RawMeta):
        return f"Meta 0x{msg.type:02X}, {len(msg.payload)} bytes"
    if isinstance(msg, SysEx):
        return f"SysEx, {len(msg.payload)} bytes"
    return repr(msg)


def disassemble(track: Track, ppq: int = DEFAULT_PPQ) -> str:
    """Annotated listing, one event per line: delta hex, message hex, meaning.

    Stripped of the parenthesised annotations, each line re-parses in the
    hex-token format to the event's exact bytes.
    """
    lines = []
    for ev in track.events:
        delta_hex = encode_vlv(ev.delta).hex(" ").upper()
        msg_hex = encode_message(ev.message).hex(" ").upper()
        note = _annotate(ev.message)
        duration = ticks_to_duration_name(ev.delta, ppq)
        if duration:
            note = f"{note}; after a {duration}"
        lines.append(f"{delta_hex:<6} {msg_hex:<21} ({note})")
    return "\n".join(lines) + ("\n" if lines else "")


def _spans_to_voice_items(
    groups: list[tuple[int, int, int, tuple[int, ...]]], ppq: int
) -> list[NoteItem | RestItem]:
    """Chord groups ``(on, off, velocity, pitches)`` -> sequential items with rests."""
    items: list[NoteItem | RestItem] = []
    cursor = 0
    for on, off, velocity, pitches in groups:
        if on > cursor:
            items.append(RestItem(Fraction(on - cursor, 4 * ppq)))
        items.append(NoteItem(pitches, Fraction(off - on, 4 * ppq), velocity))
        cursor = off
    return items


def to_score(f: SmfFile) -> str:
    """Best-effort score text for a file: re-assembling it preserves note spans.

    Notes on one channel are split greedily into as few sequential voices as
    possible; same-interval same-velocity notes merge into chords.
    """
    ppq = f.division_ppq
    lines = [f"ppq {ppq}"]
    programs: dict[int, int] = {}
    tempo_line = timesig_line = keysig_line = None
    spans = []
    for track in f.tracks:
        spans.extend(extract_note_spans(track)[0])
        tick = 0
        for ev in track.events:
            tick += ev.delta
            msg = ev.message
            if isinstance(msg, ProgramChange) and msg.channel not in programs:
                programs[msg.channel] = msg.program
            elif isinstance(msg, SetTempo) and tempo_line is None:
                tempo_line = f"tempo {tempo_to_bpm(msg.microseconds_per_quarter):g}"
            elif isinstance(msg, TimeSignature) and timesig_line is None:
                timesig_line = (
                    f"timesig {msg.numerator}/{2 ** msg.denominator_pow2}"
                    f" {msg.clocks_per_click} {msg.demisemiquavers_per_quarter}"
                )
            elif isinstance(msg, KeySignature) and keysig_line is None:
                mode = "major" if msg.mode == 0 else "minor"
                keysig_line = f"keysig {msg.sharps_flats} {mode}"
    lines.extend(line for line in (timesig_line, keysig_line, tempo_line) if line)

    if not spans:
        lines.append("# no notes: nothing to transcribe")
        return "\n".join(lines) + "\n"

    for channel in sorted({s.channel for s in spans}):
        channel_spans = sorted(
            (s for s in spans if s.channel == channel),
            key=lambda s: (s.on_tick, s.off_tick, s.pitch),
        )
        # chord = same interval, same velocity; zero-length spans are dropped
        grouped: dict[tuple[int, int, int], list[int]] = {}
        order: list[tuple[int, int, int]] = []
        for s in channel_spans:
            if s.off_tick == s.on_tick:
                lines.append(f"# dropped zero-length note: pitch {s.pitch} at tick {s.on_tick}")
                continue
            key = (s.on_tick, s.off_tick, s.velocity)
            if key not in grouped:
                grouped[key] = []
                order.append(key)
            grouped[key].append(s.pitch)

        voices: list[list[tuple[int, int, int, tuple[int, ...]]]] = []
        ends: list[int] = []
        for on, off, velocity in order:
            pitches = tuple(sorted(grouped[(on, off, velocity)]))
            for vi, end in enumerate(ends):
                if end <= on:
                    voices[vi].append((on, off, velocity, pitches))
                    ends[vi] = off
                    break
            else:
                voices.append([(on, off, velocity, pitches)])
                ends.append(off)

        first = True
        for groups in voices:
            header = f"voice ch{channel + 1}"
            if first and channel in programs:
                header += f" program {programs[channel]}"
            first = False
            lines.append(header + ":")
            for item in _spans_to_voice_items(groups, ppq):
                if isinstance(item, RestItem):
                    lines.append(f"R {item.value.numerator}/{item.value.denominator}")
                else:
                    names = "+".join(str(pitch_to_name(p)) for p in item.pitches)
                    lines.append(
                        f"{names} {item.value.numerator}/{item.value.denominator} v{item.velocity}"
                    )
    return "\n".join(lines) + "\n"
