"""midiwire: a Standard MIDI File codec.

Parse and write SMF containers and headerless event streams, reconstruct
note spans, assemble a small text score DSL into byte-exact streams,
disassemble streams into annotated listings, and render piano-roll SVGs.
"""

from .errors import (
    BadChunkError,
    HexFormatError,
    MalformedDataError,
    MalformedVlvError,
    MidiDecodeError,
    MidiError,
    MidiRangeError,
    OrphanDataError,
    ScoreError,
    TruncationError,
)
from .hexio import format_hex, parse_hex_text
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
    decode_message,
    encode_message,
    is_status_byte,
    normalize_note_off,
)
from .notegram import NotegramLayout, render_notegram
from .score import NoteItem, RestItem, Score, Voice, assemble, disassemble, parse_score, to_score
from .smf import DEFAULT_PPQ, FileSummary, SmfFile, parse_smf, summarize, validate_file, write_smf
from .theory import (
    DYNAMICS,
    PitchName,
    bpm_to_tempo,
    duration_to_ticks,
    dynamic_to_velocity,
    name_to_pitch,
    parse_pitch_name,
    pitch_to_name,
    tempo_to_bpm,
    ticks_to_duration_name,
)
from .track import (
    NoteSpan,
    Track,
    TrackEvent,
    absolute_timeline,
    extract_note_spans,
    parse_event_stream,
    serialize_event_stream,
    to_note_spans,
    validate_stream,
    validate_track,
)
from .vlv import VLV_MAX, decode_vlv, encode_vlv

__version__ = "0.1.0"

__all__ = [
    "BadChunkError",
    "DEFAULT_PPQ",
    "DYNAMICS",
    "EndOfTrack",
    "FileSummary",
    "HexFormatError",
    "KeySignature",
    "MalformedDataError",
    "MalformedVlvError",
    "Message",
    "MidiDecodeError",
    "MidiError",
    "MidiRangeError",
    "NotegramLayout",
    "NoteItem",
    "NoteOff",
    "NoteOn",
    "NoteSpan",
    "OrphanDataError",
    "PitchName",
    "ProgramChange",
    "RawChannel",
    "RawMeta",
    "RestItem",
    "Score",
    "ScoreError",
    "SetTempo",
    "SmfFile",
    "SysEx",
    "TimeSignature",
    "Track",
    "TrackEvent",
    "TruncationError",
    "VLV_MAX",
    "Voice",
    "absolute_timeline",
    "assemble",
    "bpm_to_tempo",
    "decode_message",
    "decode_vlv",
    "disassemble",
    "duration_to_ticks",
    "dynamic_to_velocity",
    "encode_message",
    "encode_vlv",
    "extract_note_spans",
    "format_hex",
    "is_status_byte",
    "name_to_pitch",
    "normalize_note_off",
    "parse_event_stream",
    "parse_hex_text",
    "parse_pitch_name",
    "parse_score",
    "parse_smf",
    "pitch_to_name",
    "render_notegram",
    "serialize_event_stream",
    "summarize",
    "tempo_to_bpm",
    "ticks_to_duration_name",
    "to_note_spans",
    "to_score",
    "validate_file",
    "validate_stream",
    "validate_track",
    "write_smf",
]
