"""Musical arithmetic: pitch names, note values, tempo and dynamics.

Octave convention: C4 = MIDI pitch 60 (so A4 = 69, C5 = 72). Note values are
exact fractions of a whole note, converted to ticks against a ticks-per-quarter
division; ties round half up.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import MidiRangeError

_LETTER_SEMITONE = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_SHARP_SPELLING = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")
_PITCH_RE = re.compile(r"^([A-Ga-g])([#b]?)(-?\d+)$")

# Velocity per dynamic mark. ppp anchors the quiet end at 20 and fff the loud
# end at 127; the interior steps are an even-ish ramp and can be overridden.
DYNAMICS = {
    "ppp": 20,
    "pp": 31,
    "p": 42,
    "mp": 53,
    "mf": 64,
    "f": 80,
    "ff": 96,
    "fff": 127,
}
DYNAMIC_MARKS = tuple(DYNAMICS)

DEFAULT_TEMPO_US = 500_000  # 120 bpm


@dataclass(frozen=True, slots=True)
class PitchName:
    letter: str
    accidental: int = 0  # -1 flat, 0 natural, +1 sharp
    octave: int = 4

    def __str__(self) -> str:
        acc = {0: "", 1: "#", -1: "b"}[self.accidental]
        return f"{self.letter}{acc}{self.octave}"


def parse_pitch_name(text: str) -> PitchName:
    m = _PITCH_RE.match(text.strip())
    if not m:
        raise MidiRangeError(f"cannot parse pitch name {text!r}")
    letter, acc, octave = m.groups()
    accidental = {"": 0, "#": 1, "b": -1}[acc]
    return PitchName(letter.upper(), accidental, int(octave))


def name_to_pitch(name: PitchName | str) -> int:
    if isinstance(name, str):
        name = parse_pitch_name(name)
    if name.letter not in _LETTER_SEMITONE:
        raise MidiRangeError(f"unknown pitch letter {name.letter!r}")
    pitch = 12 * (name.octave + 1) + _LETTER_SEMITONE[name.letter] + name.accidental
    if not 0 <= pitch <= 127:
        raise MidiRangeError(f"pitch {name} maps to {pitch}, outside 0..127")
    return pitch


def pitch_to_name(pitch: int) -> PitchName:
    """Canonical (naturals/sharps) spelling of a MIDI pitch."""
    if not 0 <= pitch <= 127:
        raise MidiRangeError(f"pitch {pitch} outside 0..127")
    spelled = _SHARP_SPELLING[pitch % 12]
    return PitchName(spelled[0], 1 if spelled.endswith("#") else 0, pitch // 12 - 1)


def _round_half_up(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def duration_to_ticks(value: Fraction, ppq: int) -> int:
    """Ticks for a note value (fraction of a whole note) at ``ppq`` ticks per quarter."""
    if ppq < 1:
        raise MidiRangeError(f"ppq {ppq} must be >= 1")
    value = Fraction(value)
    if value <= 0:
        raise MidiRangeError(f"note value {value} must be positive")
    return _round_half_up(4 * ppq * value)


def bpm_to_tempo(bpm: float) -> int:
    """Microseconds per quarter note for a metronome speed in beats per minute."""
    if bpm <= 0:
        raise MidiRangeError(f"bpm {bpm} must be positive")
    exact = Fraction(str(bpm)) if isinstance(bpm, float) else Fraction(bpm)
    return _round_half_up(Fraction(60_000_000) / exact)


def tempo_to_bpm(tempo_us: int) -> float:
    if tempo_us <= 0:
        raise MidiRangeError(f"tempo {tempo_us} must be positive")
    return 60_000_000 / tempo_us


def dynamic_to_velocity(mark: str, table: dict[str, int] | None = None) -> int:
    table = DYNAMICS if table is None else table
    try:
        return table[mark]
    except KeyError:
        raise MidiRangeError(f"unknown dynamic mark {mark!r}") from None


_DURATION_NAMES = {
    Fraction(2, 1): "breve",
    Fraction(1, 1): "whole note",
    Fraction(3, 4): "dotted half note",
    Fraction(1, 2): "half note",
    Fraction(3, 8): "dotted quarter note",
    Fraction(1, 4): "quarter note",
    Fraction(3, 16): "dotted eighth note",
    Fraction(1, 8): "eighth note",
    Fraction(1, 16): "sixteenth note",
    Fraction(1, 32): "thirty-second note",
    Fraction(1, 64): "sixty-fourth note",
}


def ticks_to_duration_name(ticks: int, ppq: int) -> str | None:
    """Name of the note value ``ticks`` spans at this division, if it has one."""
    if ticks <= 0 or ppq < 1:
        return None
    return _DURATION_NAMES.get(Fraction(ticks, 4 * ppq))
