"""Command-line front end. All logic lives in the library modules.

Exit codes: 0 success, 1 validation findings (``check`` only), 2 parse or
usage errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .errors import MidiError
from .hexio import format_hex, parse_hex_text
from .notegram import NotegramLayout, render_notegram
from .score import assemble, disassemble, parse_score
from .smf import DEFAULT_PPQ, SmfFile, parse_smf, summarize, validate_file, write_smf
from .track import parse_event_stream, serialize_event_stream, to_note_spans, validate_stream


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _read_text(path: str) -> str:
    return _read_bytes(path).decode("utf-8")


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _write_text(path: str, text: str) -> None:
    _write_bytes(path, text.encode("utf-8"))


def _load_file(args) -> SmfFile:
    """Input as an SmfFile: true SMF bytes, or a hex listing wrapped at --ppq."""
    if args.hex:
        track = parse_event_stream(parse_hex_text(_read_text(args.input)), strict=args.strict)
        return SmfFile(0, args.ppq, (track,))
    return parse_smf(_read_bytes(args.input), strict=args.strict)


def cmd_disasm(args) -> int:
    f = _load_file(args)
    pieces = []
    for i, track in enumerate(f.tracks):
        if len(f.tracks) > 1:
            pieces.append(f"# track {i + 1} of {len(f.tracks)}\n")
        pieces.append(disassemble(track, f.division_ppq))
    _write_text(args.output, "".join(pieces))
    return 0


def cmd_asm(args) -> int:
    score = parse_score(_read_text(args.input))
    if args.noteoff_style:
        score = replace(score, noteoff_style=args.noteoff_style)
    f = assemble(score)
    if args.hex:
        stream = serialize_event_stream(f.tracks[0])
        _write_text(args.output, format_hex(stream))
    else:
        _write_bytes(args.output, write_smf(f))
    return 0


def cmd_info(args) -> int:
    f = _load_file(args)
    s = summarize(f)
    tempo_note = "default" if s.tempo_is_default else "from tempo event"
    lines = [
        f"format: {s.format}",
        f"ticks_per_quarter: {s.division_ppq}",
        f"tracks: {s.track_count}",
        f"events: {s.event_count}",
        f"tempo: {s.tempo_bpm:g} bpm ({s.tempo_us} us per quarter, {tempo_note})",
        f"note_spans: {s.span_count}",
        f"duration_ticks: {s.duration_ticks}",
        f"duration_seconds: {s.duration_seconds:.3f}",
    ]
    _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_notegram(args) -> int:
    f = _load_file(args)
    spans = [span for track in f.tracks for span in to_note_spans(track)]
    layout = NotegramLayout(
        ticks_per_unit=args.ticks_per_unit,
        pitch_row_height=args.row_height,
        tick_label_step=args.tick_label_step,
        color_by=args.color_by,
    )
    _write_text(args.output, render_notegram(spans, layout))
    return 0


def cmd_check(args) -> int:
    if args.hex:
        findings = validate_stream(parse_hex_text(_read_text(args.input)), strict=args.strict)
    else:
        findings = validate_file(_read_bytes(args.input), strict=args.strict)
    if not findings:
        _write_text(args.output, "ok\n")
        return 0
    _write_text(args.output, "".join(f"violation: {f}\n" for f in findings))
    return 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("midiwire.service.app:app", host=args.host, port=args.port)
    return 0


def _add_io_arguments(p: argparse.ArgumentParser, *, reads_stream: bool) -> None:
    p.add_argument("input", help="input path, or - for stdin")
    p.add_argument("-o", "--output", default="-", help="output path, or - for stdout")
    if reads_stream:
        p.add_argument("--strict", action="store_true", help="reject tolerated oddities")
        p.add_argument(
            "--hex", action="store_true", help="input is a headerless hex-token listing"
        )
        p.add_argument(
            "--ppq", type=int, default=DEFAULT_PPQ,
            help="ticks per quarter assumed for hex input (default %(default)s)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="midiwire", description="Standard MIDI File codec and score assembler"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disasm", help="annotated listing of a file or hex stream")
    _add_io_arguments(p, reads_stream=True)
    p.set_defaults(func=cmd_disasm)

    p = sub.add_parser("asm", help="assemble a score into SMF bytes (or hex with --hex)")
    _add_io_arguments(p, reads_stream=False)
    p.add_argument("--hex", action="store_true", help="emit the headerless event stream as hex")
    p.add_argument(
        "--noteoff-style", choices=("on0", "off"), default=None,
        help="override the score's note termination style",
    )
    p.set_defaults(func=cmd_asm)

    p = sub.add_parser("info", help="summary: format, division, events, tempo, duration")
    _add_io_arguments(p, reads_stream=True)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("notegram", help="render note spans as a piano-roll SVG")
    _add_io_arguments(p, reads_stream=True)
    p.add_argument("--ticks-per-unit", type=int, default=4)
    p.add_argument("--row-height", type=int, default=10)
    p.add_argument("--tick-label-step", type=int, default=128)
    p.add_argument("--color-by", choices=("pitch", "channel"), default="pitch")
    p.set_defaults(func=cmd_notegram)

    p = sub.add_parser("check", help="validate a file or hex stream; exit 1 on findings")
    _add_io_arguments(p, reads_stream=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MidiError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
