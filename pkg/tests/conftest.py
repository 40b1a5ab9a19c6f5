"""Shared fixtures: the three golden hex streams and their score sources.

MONO_HEX is a complete single-voice stream (time signature, key signature,
14 notes ended by note-on-velocity-0, End-of-Track). POLY_HEX interleaves two
simultaneous voices on one channel using 0x80 note-offs and carries no
End-of-Track. TRIO_HEX plays three instruments (three program changes up
front, drum channel 10) with note-on-velocity-0 terminations and no
End-of-Track.
"""

from __future__ import annotations

import pytest

from midiwire.hexio import parse_hex_text

MONO_HEX = """
00 FF 58 04 04 02 30 08
00 FF 59 02 00 00
00 90 3C 28
81 00 90 3C 00
00 90 3C 1E
81 00 90 3C 00
00 90 43 2D
81 00 90 43 00
00 90 43 32
81 00 90 43 00
00 90 45 2D
81 00 90 45 00
00 90 45 32
81 00 90 45 00
00 90 43 23
82 00 90 43 00
00 90 41 32
81 00 90 41 00
00 90 41 2D
81 00 90 41 00
00 90 40 32
40 90 40 00
40 90 40 28
40 90 40 00
40 90 3E 2D
40 90 3E 00
40 90 3E 32
40 90 3E 00
40 90 3C 1E
82 00 90 3C 00
00 FF 2F 00
"""

POLY_HEX = """
00 90 40 40
00 90 43 40
81 00 80 43 00
00 90 45 40
81 00 80 45 00
00 80 40 00
00 90 3C 40
00 90 47 40
81 00 80 47 00
00 90 48 40
81 00 80 48 00
00 80 3C 40
"""

TRIO_HEX = """
00 C0 41
00 C1 00
00 C9 00
00 90 48 40
00 91 3C 40
00 91 43 40
00 91 4C 40
00 99 23 40
81 00 90 48 00
00 99 23 00
00 90 4A 40
81 00 90 4A 00
00 90 4C 40
00 99 23 40
81 00 90 4C 00
00 99 23 00
00 90 4F 40
81 00 90 4F 00
00 91 3C 00
00 91 43 00
00 91 4C 00
"""

# Score sources that assemble byte-exactly to the streams above.

TWINKLE_SCORE = """\
ppq 128
timesig 4/4 48 8
keysig 0 major
voice ch1:
C4 1/4 v40
C4 1/4 v30
G4 1/4 v45
G4 1/4 v50
A4 1/4 v45
A4 1/4 v50
G4 1/2 v35
F4 1/4 v50
F4 1/4 v45
E4 1/8 v50
R 1/8
E4 1/8 v40
R 1/8
D4 1/8 v45
R 1/8
D4 1/8 v50
R 1/8
C4 1/2 v30
"""

TWO_VOICE_SCORE = """\
ppq 128
noteoff off
eot off
voice ch1:
E4 1/2
C4 1/2 r64
voice ch1:
G4 1/4
A4 1/4
B4 1/4
C5 1/4
"""

TRIO_SCORE = """\
ppq 128
eot off
voice ch1 program 65:
C5 1/4
D5 1/4
E5 1/4
G5 1/4
voice ch2 program 0:
C4+G4+E5 1/1
voice ch10 program 0:
B1 1/4
R 1/4
B1 1/4
"""


@pytest.fixture(scope="session")
def mono_stream() -> bytes:
    return parse_hex_text(MONO_HEX)


@pytest.fixture(scope="session")
def poly_stream() -> bytes:
    return parse_hex_text(POLY_HEX)


@pytest.fixture(scope="session")
def trio_stream() -> bytes:
    return parse_hex_text(TRIO_HEX)
