"""FastAPI application wrapping the codec library."""

from __future__ import annotations

import base64
import binascii
from dataclasses import replace

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import MidiError
from ..hexio import format_hex, parse_hex_text
from ..notegram import NotegramLayout, render_notegram
from ..score import assemble, disassemble, parse_score
from ..smf import SmfFile, parse_smf, summarize, validate_file, write_smf
from ..track import parse_event_stream, serialize_event_stream, to_note_spans, validate_stream
from .schemas import (
    AssembleRequest,
    AssembleResponse,
    CheckResponse,
    DisassembleResponse,
    HealthResponse,
    InfoResponse,
    NotegramRequest,
    NotegramResponse,
    StreamPayload,
)


def _payload_bytes(payload: StreamPayload) -> bytes:
    if payload.smf_base64 is not None:
        try:
            return base64.b64decode(payload.smf_base64, validate=True)
        except (binascii.Error, ValueError) as err:
            raise HTTPException(status_code=400, detail=f"bad base64: {err}") from None
    return parse_hex_text(payload.hex_stream or "")


def _load(payload: StreamPayload) -> SmfFile:
    data = _payload_bytes(payload)
    if payload.smf_base64 is not None:
        return parse_smf(data, strict=payload.strict)
    track = parse_event_stream(data, strict=payload.strict)
    return SmfFile(0, payload.ppq, (track,))


def create_app() -> FastAPI:
    app = FastAPI(
        title="midiwire",
        version=__version__,
        description="Standard MIDI File codec: assemble, disassemble, inspect, validate, render.",
    )

    @app.exception_handler(MidiError)
    async def _midi_error(_, err: MidiError):
        return JSONResponse(status_code=400, content={"detail": str(err)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/assemble", response_model=AssembleResponse)
    def assemble_score(req: AssembleRequest) -> AssembleResponse:
        score = parse_score(req.score)
        if req.noteoff_style:
            score = replace(score, noteoff_style=req.noteoff_style)
        f = assemble(score)
        events = sum(len(t.events) for t in f.tracks)
        if req.output == "hex":
            stream = serialize_event_stream(f.tracks[0])
            return AssembleResponse(hex_stream=format_hex(stream), events=events)
        raw = write_smf(f)
        return AssembleResponse(smf_base64=base64.b64encode(raw).decode("ascii"), events=events)

    @app.post("/disassemble", response_model=DisassembleResponse)
    def disassemble_stream(payload: StreamPayload) -> DisassembleResponse:
        f = _load(payload)
        pieces = []
        for i, track in enumerate(f.tracks):
            if len(f.tracks) > 1:
                pieces.append(f"# track {i + 1} of {len(f.tracks)}\n")
            pieces.append(disassemble(track, f.division_ppq))
        return DisassembleResponse(listing="".join(pieces))

    @app.post("/info", response_model=InfoResponse)
    def info(payload: StreamPayload) -> InfoResponse:
        s = summarize(_load(payload))
        return InfoResponse(
            format=s.format,
            ticks_per_quarter=s.division_ppq,
            tracks=s.track_count,
            events=s.event_count,
            tempo_bpm=s.tempo_bpm,
            tempo_us=s.tempo_us,
            tempo_is_default=s.tempo_is_default,
            note_spans=s.span_count,
            duration_ticks=s.duration_ticks,
            duration_seconds=s.duration_seconds,
        )

    @app.post("/notegram", response_model=NotegramResponse)
    def notegram(req: NotegramRequest) -> NotegramResponse:
        f = _load(req)
        spans = [span for track in f.tracks for span in to_note_spans(track)]
        layout = NotegramLayout(
            ticks_per_unit=req.ticks_per_unit,
            pitch_row_height=req.pitch_row_height,
            tick_label_step=req.tick_label_step,
            color_by=req.color_by,
        )
        return NotegramResponse(svg=render_notegram(spans, layout), spans=len(spans))

    @app.post("/check", response_model=CheckResponse)
    def check(payload: StreamPayload) -> CheckResponse:
        if payload.smf_base64 is not None:
            findings = validate_file(_payload_bytes(payload), strict=payload.strict)
        else:
            findings = validate_stream(_payload_bytes(payload), strict=payload.strict)
        return CheckResponse(clean=not findings, findings=findings)

    return app


app = create_app()
