"""Minimal deterministic SVG charts.

Output depends only on the data: fixed canvas, no fonts, no timestamps,
coordinates rounded to two decimals.
"""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 320
MARGIN = 32
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _fmt(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" '
        'stroke="#000000" stroke-width="1"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" '
        'stroke="#000000" stroke-width="1"/>',
    ]


def line_chart(series: dict[str, Sequence[float | None]], title: str = "") -> str:
    """One polyline per named series, one point per bin; ``None`` plots as 0."""
    n = max((len(v) for v in series.values()), default=0)
    top = max((x or 0 for v in series.values() for x in v), default=0) or 1
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
    step = plot_w / (n - 1) if n > 1 else 0
    out = _header(title)
    for i, (name, values) in enumerate(series.items()):
        pts = " ".join(
            f"{_fmt(MARGIN + j * step)},{_fmt(HEIGHT - MARGIN - (v or 0) / top * plot_h)}"
            for j, v in enumerate(values)
        )
        out.append(
            f'<polyline data-series="{escape(name)}" points="{pts}" fill="none" '
            f'stroke="{COLORS[i % len(COLORS)]}" stroke-width="1.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def bar_chart(bars: Sequence[tuple[str, float | None]], title: str = "") -> str:
    top = max((v or 0 for _, v in bars), default=0) or 1
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
    slot = plot_w / len(bars) if bars else 0
    out = _header(title)
    for i, (name, v) in enumerate(bars):
        h = (v or 0) / top * plot_h
        out.append(
            f'<rect data-label="{escape(name)}" x="{_fmt(MARGIN + i * slot + slot * 0.15)}" '
            f'y="{_fmt(HEIGHT - MARGIN - h)}" width="{_fmt(slot * 0.7)}" height="{_fmt(h)}" '
            f'fill="{COLORS[i % len(COLORS)]}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
