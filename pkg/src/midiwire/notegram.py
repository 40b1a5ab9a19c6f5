"""Piano-roll ("notegram") rendering of note spans as an SVG document.

One rectangle per span: x grows with the start tick, width with the duration,
and higher pitches sit higher on the page. Geometry is computed in exact
rationals and formatted with fixed rounding, so identical input yields
byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .errors import MidiRangeError
from .theory import pitch_to_name
from .track import NoteSpan


@dataclass(frozen=True)
class NotegramLayout:
    ticks_per_unit: int = 4  # horizontal ticks per SVG unit
    pitch_row_height: int = 10
    margin_left: int = 48
    margin_top: int = 16
    margin_right: int = 16
    margin_bottom: int = 32
    tick_label_step: int = 128
    color_by: Literal["pitch", "channel"] = "pitch"

    def __post_init__(self):
        for name in ("ticks_per_unit", "pitch_row_height", "tick_label_step"):
            if getattr(self, name) <= 0:
                raise MidiRangeError(f"{name} must be positive")
        if self.color_by not in ("pitch", "channel"):
            raise MidiRangeError(f"color_by must be 'pitch' or 'channel', got {self.color_by!r}")


def _fmt(value: Fraction | int) -> str:
    """Exact decimal with up to three places, ties up, no trailing zeros."""
    fr = Fraction(value)
    scaled = fr * 1000
    q = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    whole, milli = divmod(q, 1000)
    if milli == 0:
        return str(whole)
    return f"{whole}.{milli:03d}".rstrip("0")


def _fill(span: NoteSpan, color_by: str) -> str:
    if color_by == "pitch":
        hue = (span.pitch % 12) * 30
    else:
        hue = (span.channel * 360) // 16
    return f"hsl({hue}, 70%, 55%)"


def render_notegram(spans: Iterable[NoteSpan], layout: NotegramLayout | None = None) -> str:
    layout = layout or NotegramLayout()
    spans = sorted(spans, key=lambda s: (s.on_tick, s.pitch, s.off_tick, s.channel))

    if spans:
        lo_pitch = max(0, min(s.pitch for s in spans) - 1)
        hi_pitch = min(127, max(s.pitch for s in spans) + 1)
        max_tick = max(max(s.off_tick for s in spans), layout.tick_label_step)
    else:
        lo_pitch, hi_pitch = 60, 71
        max_tick = layout.tick_label_step

    rows = hi_pitch - lo_pitch + 1
    plot_w = Fraction(max_tick, layout.ticks_per_unit)
    plot_h = rows * layout.pitch_row_height
    width = layout.margin_left + plot_w + layout.margin_right
    height = layout.margin_top + plot_h + layout.margin_bottom
    x0 = layout.margin_left
    y0 = layout.margin_top

    def x_at(tick: int) -> Fraction:
        return x0 + Fraction(tick, layout.ticks_per_unit)

    def row_top(pitch: int) -> int:
        return y0 + (hi_pitch - pitch) * layout.pitch_row_height

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1"'
        f' width="{_fmt(width)}" height="{_fmt(height)}"'
        f' viewBox="0 0 {_fmt(width)} {_fmt(height)}"'
        ' font-family="monospace" font-size="8">',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y0 + plot_h}" stroke="#222"/>',
        f'<line x1="{x0}" y1="{y0 + plot_h}" x2="{_fmt(x0 + plot_w)}" y2="{y0 + plot_h}"'
        ' stroke="#222"/>',
    ]

    if spans:
        for pitch in range(lo_pitch, hi_pitch + 1):
            y_mid = row_top(pitch) + Fraction(layout.pitch_row_height, 2)
            parts.append(
                f'<text x="{x0 - 4}" y="{_fmt(y_mid + 2)}" text-anchor="end">'
                f"{pitch_to_name(pitch)}</text>"
            )

    tick = 0
    while tick <= max_tick:
        x = x_at(tick)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{y0 + plot_h}" x2="{_fmt(x)}"'
            f' y2="{y0 + plot_h + 4}" stroke="#222"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{y0 + plot_h + 14}" text-anchor="middle">{tick}</text>'
        )
        tick += layout.tick_label_step

    for span in spans:
        x = x_at(span.on_tick)
        w = Fraction(span.off_tick - span.on_tick, layout.ticks_per_unit)
        parts.append(
            f'<rect x="{_fmt(x)}" y="{row_top(span.pitch) + 1}"'
            f' width="{_fmt(w)}" height="{layout.pitch_row_height - 2}"'
            f' fill="{_fill(span, layout.color_by)}" stroke="#333" stroke-width="0.5"'
            f' data-pitch="{span.pitch}" data-channel="{span.channel}"'
            f' data-on="{span.on_tick}" data-off="{span.off_tick}">'
            f"<title>{pitch_to_name(span.pitch)} ch{span.channel + 1}"
            f" v{span.velocity} [{span.on_tick},{span.off_tick})</title></rect>"
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
