"""Event-stream tests: parsing, serialization styles, timelines, note spans."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from midiwire.errors import MidiDecodeError, MidiRangeError, OrphanDataError
from midiwire.messages import (
    EndOfTrack,
    KeySignature,
    NoteOff,
    NoteOn,
    ProgramChange,
    SetTempo,
    TimeSignature,
    normalize_note_off,
)
from midiwire.hexio import parse_hex_text
from midiwire.track import (
    NoteSpan,
    Track,
    TrackEvent,
    absolute_timeline,
    extract_note_spans,
    final_tick,
    parse_event_stream,
    serialize_event_stream,
    to_note_spans,
    track_from_events,
    validate_stream,
    validate_track,
)

# Deltas of the complete single-voice stream, read straight off the listing.
# Summing them is the independent oracle for the final End-of-Track tick.
MONO_DELTAS = [
    0, 0, 0, 128, 0, 128, 0, 128, 0, 128, 0, 128, 0, 128, 0, 256,
    0, 128, 0, 128, 0, 64, 64, 64, 64, 64, 64, 64, 64, 256, 0,
]


def test_parse_two_event_opening():
    track = parse_event_stream(parse_hex_text("00 90 3C 28 81 00 90 3C 00"))
    assert track.events == (
        TrackEvent(0, NoteOn(0, 0x3C, 0x28)),
        TrackEvent(128, NoteOn(0, 0x3C, 0)),
    )


def test_parse_end_of_track_only():
    track = parse_event_stream(parse_hex_text("00 FF 2F 00"))
    assert track.events == (TrackEvent(0, EndOfTrack()),)


def test_parse_empty_input():
    assert parse_event_stream(b"").events == ()


def test_parse_stops_at_end_of_track():
    track = parse_event_stream(parse_hex_text("00 FF 2F 00 00 90 3C 28"))
    assert len(track.events) == 1
    with pytest.raises(MidiDecodeError):
        parse_event_stream(parse_hex_text("00 FF 2F 00 00 90 3C 28"), strict=True)


def test_parse_running_status():
    track = parse_event_stream(parse_hex_text("00 90 3C 28 10 3C 00 10 3E 50"))
    assert track.events == (
        TrackEvent(0, NoteOn(0, 0x3C, 0x28)),
        TrackEvent(16, NoteOn(0, 0x3C, 0)),
        TrackEvent(16, NoteOn(0, 0x3E, 0x50)),
    )


def test_meta_clears_running_status():
    with pytest.raises(OrphanDataError):
        parse_event_stream(parse_hex_text("00 90 3C 28 00 FF 01 00 00 3C 00"))


def test_parse_error_carries_offset():
    with pytest.raises(MidiDecodeError) as exc_info:
        parse_event_stream(parse_hex_text("00 90 3C 28 00 C0"))
    assert exc_info.value.offset == 6


def test_end_of_track_must_be_last():
    with pytest.raises(MidiRangeError):
        Track((TrackEvent(0, EndOfTrack()), TrackEvent(0, NoteOn(0, 60, 1))))


def test_serialize_styles():
    track = parse_event_stream(parse_hex_text("00 90 3C 28 81 00 90 3C 00"))
    on0 = serialize_event_stream(track, noteoff_style="on0")
    assert on0 == parse_hex_text("00 90 3C 28 81 00 90 3C 00")
    off = serialize_event_stream(track, noteoff_style="off")
    assert off == parse_hex_text("00 90 3C 28 81 00 80 3C 00")
    # parse-equivalence oracle: both byte forms carry the same notes
    assert to_note_spans(parse_event_stream(off)) == to_note_spans(track)


def test_serialize_keep_preserves_release():
    track = track_from_events([(0, NoteOn(0, 60, 64)), (128, NoteOff(0, 60, 0x40))])
    raw = serialize_event_stream(track)
    assert raw == parse_hex_text("00 90 3C 40 81 00 80 3C 40")
    # on0 cannot carry a non-zero release, so the message stays a note-off
    assert serialize_event_stream(track, noteoff_style="on0") == raw


def test_serialize_empty():
    assert serialize_event_stream(Track()) == b""


def test_serialize_running_status():
    track = parse_event_stream(parse_hex_text("00 90 3C 28 81 00 90 3C 00"))
    raw = serialize_event_stream(track, use_running_status=True)
    assert raw == parse_hex_text("00 90 3C 28 81 00 3C 00")
    assert parse_event_stream(raw) == track


def test_absolute_timeline():
    track = track_from_events(
        [(0, NoteOn(0, 60, 1)), (128, NoteOn(0, 60, 0)), (0, NoteOn(0, 62, 1)), (128, NoteOn(0, 62, 0))]
    )
    assert [tick for tick, _ in absolute_timeline(track)] == [0, 128, 128, 256]
    zeros = track_from_events([(0, NoteOn(0, 60, 1))] * 3)
    assert [tick for tick, _ in absolute_timeline(zeros)] == [0, 0, 0]


def test_mono_stream_final_tick_matches_delta_sum(mono_stream):
    track = parse_event_stream(mono_stream)
    assert [ev.delta for ev in track.events] == MONO_DELTAS
    assert final_tick(track) == sum(MONO_DELTAS) == 2048
    assert absolute_timeline(track)[-1] == (2048, EndOfTrack())


def test_mono_stream_byte_roundtrip(mono_stream):
    track = parse_event_stream(mono_stream)
    assert serialize_event_stream(track, noteoff_style="on0") == mono_stream
    assert serialize_event_stream(track) == mono_stream


def test_poly_stream_byte_roundtrip(poly_stream):
    track = parse_event_stream(poly_stream)
    assert serialize_event_stream(track) == poly_stream
    assert serialize_event_stream(track, noteoff_style="off") == poly_stream


def test_trio_stream_byte_roundtrip(trio_stream):
    track = parse_event_stream(trio_stream)
    assert serialize_event_stream(track) == trio_stream
    assert serialize_event_stream(track, noteoff_style="on0") == trio_stream


POLY_SPANS = [
    NoteSpan(0, 64, 64, 0, 256),
    NoteSpan(0, 67, 64, 0, 128),
    NoteSpan(0, 69, 64, 128, 256),
    NoteSpan(0, 60, 64, 256, 512),
    NoteSpan(0, 71, 64, 256, 384),
    NoteSpan(0, 72, 64, 384, 512),
]


def test_poly_spans(poly_stream):
    track = parse_event_stream(poly_stream)
    assert to_note_spans(track, "poly") == POLY_SPANS


def test_mono_spans_pitch_sequence(mono_stream):
    track = parse_event_stream(mono_stream)
    spans = to_note_spans(track, "mono")
    assert [s.pitch for s in spans] == [60, 60, 67, 67, 69, 69, 67, 65, 65, 64, 64, 62, 62, 60]
    assert [s.off_tick - s.on_tick for s in spans] == [
        128, 128, 128, 128, 128, 128, 256, 128, 128, 64, 64, 64, 64, 256,
    ]
    # every note is explicitly terminated, so poly agrees
    assert to_note_spans(track, "poly") == spans


def test_empty_track_spans():
    assert to_note_spans(Track()) == []


def test_fifo_pairing_for_stacked_same_pitch():
    track = track_from_events(
        [
            (0, NoteOn(0, 60, 10)),
            (10, NoteOn(0, 60, 20)),
            (10, NoteOff(0, 60, 0)),
            (10, NoteOff(0, 60, 0)),
        ]
    )
    assert to_note_spans(track) == [
        NoteSpan(0, 60, 10, 0, 20),
        NoteSpan(0, 60, 20, 10, 30),
    ]


def test_mono_mode_closes_previous_note():
    track = track_from_events(
        [
            (0, NoteOn(0, 60, 10)),
            (100, NoteOn(0, 62, 20)),
            (100, NoteOn(0, 64, 30)),
            (100, NoteOff(0, 64, 0)),
        ]
    )
    assert to_note_spans(track, "mono") == [
        NoteSpan(0, 60, 10, 0, 100),
        NoteSpan(0, 62, 20, 100, 200),
        NoteSpan(0, 64, 30, 200, 300),
    ]
    # poly mode leaves the first two notes open until stream end
    spans, warnings = extract_note_spans(track, "poly")
    assert len(warnings) == 2
    assert spans == [
        NoteSpan(0, 60, 10, 0, 300),
        NoteSpan(0, 62, 20, 100, 300),
        NoteSpan(0, 64, 30, 200, 300),
    ]


def test_mono_mode_is_per_channel():
    track = track_from_events(
        [
            (0, NoteOn(0, 60, 10)),
            (50, NoteOn(1, 62, 20)),
            (50, NoteOff(0, 60, 0)),
            (50, NoteOff(1, 62, 0)),
        ]
    )
    assert to_note_spans(track, "mono") == [
        NoteSpan(0, 60, 10, 0, 100),
        NoteSpan(1, 62, 20, 50, 150),
    ]


def test_unclosed_note_warning_and_strict():
    track = track_from_events([(0, NoteOn(0, 60, 10)), (100, NoteOn(0, 62, 20))])
    spans, warnings = extract_note_spans(track, "poly")
    assert spans == [NoteSpan(0, 60, 10, 0, 100), NoteSpan(0, 62, 20, 100, 100)]
    assert len(warnings) == 2
    with pytest.raises(MidiDecodeError):
        to_note_spans(track, strict=True)


def test_orphan_note_off_warning():
    track = track_from_events([(0, NoteOff(0, 60, 0))])
    spans, warnings = extract_note_spans(track)
    assert spans == []
    assert "matches no sounding note" in warnings[0]


def test_spans_invariant_under_normalize(poly_stream):
    track = parse_event_stream(poly_stream)
    normalized = Track(
        tuple(TrackEvent(ev.delta, normalize_note_off(ev.message)) for ev in track.events)
    )
    assert to_note_spans(normalized) == to_note_spans(track)


def test_validate_track_missing_eot(poly_stream):
    findings = validate_track(parse_event_stream(poly_stream))
    assert findings == ["missing End of Track meta event"]


def test_validate_stream_reports_decode_errors():
    findings = validate_stream(parse_hex_text("00 90 3C 90"))
    assert len(findings) == 1 and "data byte" in findings[0]
    findings = validate_stream(parse_hex_text("00 FF 2F 00 AA BB"))
    assert any("trailing bytes" in f for f in findings)


def test_open_note_multiset_matches_spans(poly_stream):
    """At every tick, notes the stream keeps open == spans covering that tick."""
    track = parse_event_stream(poly_stream)
    spans = to_note_spans(track)
    open_now: list[int] = []
    tick = 0
    events = list(track.events)
    for i, ev in enumerate(events):
        tick += ev.delta
        msg = normalize_note_off(ev.message)
        if isinstance(msg, NoteOn):
            open_now.append(msg.pitch)
        elif isinstance(msg, NoteOff) and msg.pitch in open_now:
            open_now.remove(msg.pitch)
        # compare after the last event at this tick
        if i + 1 < len(events) and events[i + 1].delta == 0:
            continue
        covering = sorted(s.pitch for s in spans if s.on_tick <= tick < s.off_tick)
        assert sorted(open_now) == covering


deltas = st.integers(0, 0x3FFF)
channels = st.integers(0, 15)
data7 = st.integers(0, 127)
stream_messages = st.one_of(
    st.builds(NoteOn, channels, data7, data7),
    st.builds(NoteOff, channels, data7, data7),
    st.builds(ProgramChange, channels, data7),
    st.builds(SetTempo, st.integers(0, (1 << 24) - 1)),
    st.builds(TimeSignature, *(st.integers(0, 255),) * 4),
    st.builds(KeySignature, st.integers(-7, 7), st.integers(0, 1)),
)


@given(st.lists(st.tuples(deltas, stream_messages), max_size=30), st.booleans())
def test_track_roundtrip_property(pairs, with_eot):
    events = [TrackEvent(d, m) for d, m in pairs]
    if with_eot:
        events.append(TrackEvent(0, EndOfTrack()))
    track = Track(tuple(events))
    for style in ("keep", "on0", "off"):
        raw = serialize_event_stream(track, noteoff_style=style)
        reparsed = parse_event_stream(raw)
        # styles rewrite note terminations, so compare modulo normalization
        lhs = [(ev.delta, normalize_note_off(ev.message)) for ev in reparsed.events]
        rhs = [(ev.delta, normalize_note_off(ev.message)) for ev in track.events]
        assert lhs == rhs
        if style == "keep":
            assert reparsed == track
    rs = serialize_event_stream(track, use_running_status=True)
    assert parse_event_stream(rs) == track
