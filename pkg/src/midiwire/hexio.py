"""Hex-token text streams: whitespace-separated two-digit byte listings.

This is the headerless listing format used throughout the docs: bytes as
case-insensitive hex pairs separated by whitespace. Per line, anything from
a ``(`` (annotation) or ``#`` (comment) onward is ignored, so disassembler
output feeds straight back in.
"""

from __future__ import annotations

from .errors import HexFormatError

_HEX_DIGITS = set("0123456789abcdefABCDEF")


def parse_hex_text(text: str) -> bytes:
    out = bytearray()
    for lineno, line in enumerate(text.splitlines(), 1):
        for marker in ("(", "#"):
            cut = line.find(marker)
            if cut != -1:
                line = line[:cut]
        for token in line.split():
            if len(token) != 2 or not set(token) <= _HEX_DIGITS:
                raise HexFormatError(f"bad hex token {token!r} on line {lineno}")
            out.append(int(token, 16))
    return bytes(out)


def format_hex(data: bytes, per_line: int = 16) -> str:
    """Uppercase hex dump, ``per_line`` bytes per line, trailing newline when non-empty."""
    lines = [
        data[i : i + per_line].hex(" ").upper() for i in range(0, len(data), per_line)
    ]
    return "\n".join(lines) + ("\n" if lines else "")
