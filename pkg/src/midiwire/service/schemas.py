"""Pydantic request/response models for the HTTP API.

Byte streams travel as JSON: complete files base64-encoded, headerless
streams as hex-token listings. Exactly one of the two must be supplied.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator


class StreamPayload(BaseModel):
    smf_base64: str | None = None
    hex_stream: str | None = None
    ppq: int = Field(default=128, ge=1, le=32767, description="division assumed for hex input")
    strict: bool = False

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.smf_base64 is None) == (self.hex_stream is None):
            raise ValueError("provide exactly one of smf_base64 or hex_stream")
        return self


class AssembleRequest(BaseModel):
    score: str
    output: Literal["smf", "hex"] = "smf"
    noteoff_style: Literal["on0", "off"] | None = None


class AssembleResponse(BaseModel):
    smf_base64: str | None = None
    hex_stream: str | None = None
    events: int


class DisassembleResponse(BaseModel):
    listing: str


class InfoResponse(BaseModel):
    format: int
    ticks_per_quarter: int
    tracks: int
    events: int
    tempo_bpm: float
    tempo_us: int
    tempo_is_default: bool
    note_spans: int
    duration_ticks: int
    duration_seconds: float


class NotegramRequest(StreamPayload):
    ticks_per_unit: int = Field(default=4, ge=1)
    pitch_row_height: int = Field(default=10, ge=1)
    tick_label_step: int = Field(default=128, ge=1)
    color_by: Literal["pitch", "channel"] = "pitch"


class NotegramResponse(BaseModel):
    svg: str
    spans: int


class CheckResponse(BaseModel):
    clean: bool
    findings: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str
