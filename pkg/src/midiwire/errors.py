"""Exception types raised across the codec."""

from __future__ import annotations


class MidiError(Exception):
    """Base class for every error this library raises deliberately."""


class MidiDecodeError(MidiError):
    """Malformed input bytes. Carries the byte offset where decoding failed."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.message = message
        self.offset = offset

    def __str__(self) -> str:
        if self.offset is None:
            return self.message
        return f"{self.message} (byte {self.offset})"

    def shifted(self, base: int) -> "MidiDecodeError":
        """Same error with the offset rebased, e.g. chunk-relative to file-absolute."""
        return type(self)(self.message, None if self.offset is None else base + self.offset)


class TruncationError(MidiDecodeError):
    """Input ended in the middle of a value, message or chunk."""


class MalformedVlvError(MidiDecodeError):
    """Variable-length value not terminated within 4 bytes, or non-canonical in strict mode."""


class MalformedDataError(MidiDecodeError):
    """A data byte had its top bit set, or a status byte is invalid in this position."""


class OrphanDataError(MidiDecodeError):
    """A data byte appeared with no running status to attach it to."""


class BadChunkError(MidiDecodeError):
    """File-level framing problem: bad magic, bad length, unsupported division."""


class HexFormatError(MidiError):
    """A token in a hex listing is not a two-digit hex byte."""


class MidiRangeError(MidiError, ValueError):
    """A field value is out of range or violates a structural invariant."""


class ScoreError(MidiError):
    """Score text that cannot be parsed or assembled. Carries line/column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)
