"""Notegram rendering tests: geometry, determinism, colors, empty input."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from midiwire.errors import MidiRangeError
from midiwire.notegram import NotegramLayout, render_notegram, _fmt
from midiwire.track import NoteSpan, parse_event_stream, to_note_spans

SVG_NS = "{http://www.w3.org/2000/svg}"


def rects_of(svg: str) -> list[ET.Element]:
    return list(ET.fromstring(svg).iter(SVG_NS + "rect"))


def test_single_span():
    svg = render_notegram([NoteSpan(0, 60, 64, 0, 128)])
    rects = rects_of(svg)
    assert len(rects) == 1
    r = rects[0]
    assert r.get("data-pitch") == "60"
    assert float(r.get("width")) == 128 / 4  # default 4 ticks per unit
    assert "C4" in (r.find(SVG_NS + "title").text or "")


def test_six_spans_with_exact_width_ratios(poly_stream):
    spans = to_note_spans(parse_event_stream(poly_stream))
    svg = render_notegram(spans)
    rects = rects_of(svg)
    assert len(rects) == 6
    by_pitch = {r.get("data-pitch"): r for r in rects}
    w_g4 = Fraction(by_pitch["67"].get("width"))
    w_e4 = Fraction(by_pitch["64"].get("width"))
    w_c4 = Fraction(by_pitch["60"].get("width"))
    assert w_e4 == 2 * w_g4
    assert w_c4 == 2 * w_g4
    # horizontal positions preserve tick ratios
    x0 = Fraction(by_pitch["64"].get("x"))
    x_a4 = Fraction(by_pitch["69"].get("x"))
    x_c5 = Fraction(by_pitch["72"].get("x"))
    assert (x_c5 - x0) == 3 * (x_a4 - x0)


def test_higher_pitch_sits_higher():
    svg = render_notegram(
        [NoteSpan(0, 60, 64, 0, 128), NoteSpan(0, 72, 64, 0, 128)]
    )
    by_pitch = {r.get("data-pitch"): float(r.get("y")) for r in rects_of(svg)}
    assert by_pitch["72"] < by_pitch["60"]


def test_deterministic_output(poly_stream):
    spans = to_note_spans(parse_event_stream(poly_stream))
    assert render_notegram(spans) == render_notegram(spans)
    # span order must not matter either
    assert render_notegram(list(reversed(spans))) == render_notegram(spans)


def test_empty_spans_render_axes_only():
    svg = render_notegram([])
    assert svg.startswith("<svg")
    assert rects_of(svg) == []
    assert svg.count("<line") >= 2
    ET.fromstring(svg)  # well-formed


def test_axis_labels(poly_stream):
    spans = to_note_spans(parse_event_stream(poly_stream))
    svg = render_notegram(spans)
    assert ">E4<" in svg and ">C5<" in svg  # pitch names on the left
    assert ">0<" in svg and ">128<" in svg and ">512<" in svg  # tick labels


def test_color_modes():
    spans = [NoteSpan(0, 60, 64, 0, 128), NoteSpan(9, 60, 64, 0, 128)]
    by_pitch = render_notegram(spans, NotegramLayout(color_by="pitch"))
    by_channel = render_notegram(spans, NotegramLayout(color_by="channel"))
    pitch_fills = {r.get("fill") for r in rects_of(by_pitch)}
    channel_fills = {r.get("fill") for r in rects_of(by_channel)}
    assert len(pitch_fills) == 1  # same pitch class, one hue
    assert len(channel_fills) == 2  # different channels, two hues


def test_layout_validation():
    with pytest.raises(MidiRangeError):
        NotegramLayout(ticks_per_unit=0)
    with pytest.raises(MidiRangeError):
        NotegramLayout(color_by="velocity")


def test_fmt_is_exact_and_stable():
    assert _fmt(Fraction(3)) == "3"
    assert _fmt(Fraction(1, 2)) == "0.5"
    assert _fmt(Fraction(1, 3)) == "0.333"
    assert _fmt(Fraction(2, 3)) == "0.667"
    assert _fmt(Fraction(1, 1000)) == "0.001"
