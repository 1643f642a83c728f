"""Minimal SVG line plots.

Output is plain SVG 1.1 text built with fixed formatting rules (two
decimal places, a fixed palette, ticks chosen from the 1/2/5 ladder),
so the same data always produces byte-identical files. That keeps
rendered artifacts diffable and testable without an image rasterizer.
"""

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .eef import Series

__all__ = ["PlotSpec", "write_plot_svg", "PALETTE"]

PALETTE = ("#1f6fb2", "#d94f2a", "#3a9e4f", "#8c5bb0", "#b08c2a", "#4f5d66")

_MARGIN_LEFT = 64.0
_MARGIN_RIGHT = 16.0
_MARGIN_TOP = 40.0
_MARGIN_BOTTOM = 44.0


@dataclass(frozen=True)
class PlotSpec:
    """A titled set of labeled series to draw on shared axes."""

    title: str
    series: tuple
    width: int = 960
    height: int = 480

    def __post_init__(self):
        if not self.series:
            raise ValueError("nothing to plot")
        for entry in self.series:
            label, data = entry
            if not isinstance(data, Series):
                raise TypeError(f"series {label!r} is not a Series")
        if self.width < 100 or self.height < 100:
            raise ValueError("canvas too small")


def _nice_ticks(lo, hi, target=6):
    """Tick positions at a 1/2/5-ladder step covering [lo, hi]."""
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    magnitude = 10.0 ** np.floor(np.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * magnitude
        if raw <= step:
            break
    first = np.ceil(lo / step) * step
    ticks = np.arange(first, hi + step * 0.5, step)
    # crush -0.0 and float fuzz at the origin
    ticks[np.abs(ticks) < step * 1e-9] = 0.0
    return ticks, step


def _fmt_tick(value, step):
    if step >= 1.0:
        decimals = 0
    else:
        decimals = int(np.ceil(-np.log10(step)))
    return f"{value:.{decimals}f}"


def _num(value):
    return f"{value:.2f}"


def write_plot_svg(spec, path):
    """Render a PlotSpec to an SVG file at ``path``."""
    from .formats import atomic_write_bytes

    xs = np.concatenate([data.times for _, data in spec.series])
    ys = np.concatenate([data.values for _, data in spec.series])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    if y_hi <= y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    if x_hi <= x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    plot_w = spec.width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = spec.height - _MARGIN_TOP - _MARGIN_BOTTOM

    def sx(x):
        return _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y):
        return _MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
        f'<text x="{_num(spec.width / 2)}" y="24" font-family="sans-serif" '
        f'font-size="16" text-anchor="middle">{escape(spec.title)}</text>',
    ]

    x_ticks, x_step = _nice_ticks(x_lo, x_hi)
    y_ticks, y_step = _nice_ticks(y_lo, y_hi)
    for tick in x_ticks:
        px = sx(tick)
        parts.append(
            f'<line x1="{_num(px)}" y1="{_num(_MARGIN_TOP)}" x2="{_num(px)}" '
            f'y2="{_num(_MARGIN_TOP + plot_h)}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_num(px)}" y="{_num(_MARGIN_TOP + plot_h + 18)}" '
            f'font-family="sans-serif" font-size="11" text-anchor="middle">'
            f"{_fmt_tick(tick, x_step)}</text>"
        )
    for tick in y_ticks:
        py = sy(tick)
        parts.append(
            f'<line x1="{_num(_MARGIN_LEFT)}" y1="{_num(py)}" '
            f'x2="{_num(_MARGIN_LEFT + plot_w)}" y2="{_num(py)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_num(_MARGIN_LEFT - 8)}" y="{_num(py + 4)}" '
            f'font-family="sans-serif" font-size="11" text-anchor="end">'
            f"{_fmt_tick(tick, y_step)}</text>"
        )
    parts.append(
        f'<rect x="{_num(_MARGIN_LEFT)}" y="{_num(_MARGIN_TOP)}" '
        f'width="{_num(plot_w)}" height="{_num(plot_h)}" '
        f'fill="none" stroke="#333333" stroke-width="1"/>'
    )

    for i, (label, data) in enumerate(spec.series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(
            f"{_num(sx(t))},{_num(sy(v))}" for t, v in zip(data.times, data.values)
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )
        lx = _MARGIN_LEFT + 10 + 150 * i
        ly = _MARGIN_TOP - 10
        parts.append(
            f'<line x1="{_num(lx)}" y1="{_num(ly)}" x2="{_num(lx + 20)}" '
            f'y2="{_num(ly)}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{_num(lx + 26)}" y="{_num(ly + 4)}" font-family="sans-serif" '
            f'font-size="12">{escape(str(label))}</text>'
        )

    parts.append("</svg>")
    atomic_write_bytes(path, ("\n".join(parts) + "\n").encode("utf-8"))
