"""Minimal dependency-free SVG rendering: axes, polylines, bars, heat maps.

Figures are inspection aids; the CSV files next to them are the ground
truth.  Nothing here aims at publication quality.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["render_xy", "render_heatmap"]

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 58, 16, 20, 42
_PW, _PH = _W - _ML - _MR, _H - _MT - _MB


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(
        (s for s in (1 * mag, 2 * mag, 2.5 * mag, 5 * mag, 10 * mag) if s >= raw),
        default=raw,
    )
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-12 * abs(step):
        out.append(round(t, 12))
        t += step
    return out


class _Frame:
    def __init__(self, xlim, ylim):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0

    def px(self, x):
        return _ML + (x - self.x0) / (self.x1 - self.x0) * _PW

    def py(self, y):
        return _MT + (1.0 - (y - self.y0) / (self.y1 - self.y0)) * _PH


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.0f}" y="14" text-anchor="middle" font-size="13">{title}</text>',
    ]


def _axes(fr: _Frame) -> list[str]:
    parts = [
        f'<rect x="{_ML}" y="{_MT}" width="{_PW}" height="{_PH}" fill="none" stroke="black"/>'
    ]
    for t in _ticks(fr.x0, fr.x1):
        x = fr.px(t)
        parts.append(
            f'<line x1="{x:.1f}" y1="{_MT + _PH}" x2="{x:.1f}" y2="{_MT + _PH + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{_MT + _PH + 16}" text-anchor="middle">{t:g}</text>'
        )
    for t in _ticks(fr.y0, fr.y1):
        y = fr.py(t)
        parts.append(
            f'<line x1="{_ML - 4}" y1="{y:.1f}" x2="{_ML}" y2="{y:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_ML - 7}" y="{y + 3.5:.1f}" text-anchor="end">{t:g}</text>'
        )
    return parts


def render_xy(
    path,
    *,
    title: str = "",
    lines=(),
    bars=None,
    points=(),
) -> None:
    """Write one SVG chart.

    lines: iterable of (x_array, y_array, color); bars: (edges, heights,
    color) or None; points: iterable of (x_array, y_array, color).
    """
    xs_all, ys_all = [], []
    for x, y, _ in lines:
        xs_all.append(np.asarray(x, dtype=float))
        ys_all.append(np.asarray(y, dtype=float))
    for x, y, _ in points:
        xs_all.append(np.asarray(x, dtype=float))
        ys_all.append(np.asarray(y, dtype=float))
    if bars is not None:
        edges, heights, _ = bars
        xs_all.append(np.asarray(edges, dtype=float))
        ys_all.append(np.asarray(heights, dtype=float))
    x_lo = min(float(np.min(v)) for v in xs_all if v.size)
    x_hi = max(float(np.max(v)) for v in xs_all if v.size)
    y_hi = max(float(np.max(v)) for v in ys_all if v.size)
    y_lo = min(0.0, min(float(np.min(v)) for v in ys_all if v.size))
    fr = _Frame((x_lo, x_hi), (y_lo, 1.08 * y_hi if y_hi > 0 else 1.0))
    parts = _header(title)
    if bars is not None:
        edges, heights, color = bars
        for lo, hi, h in zip(edges[:-1], edges[1:], heights):
            x = fr.px(lo)
            w = max(fr.px(hi) - x, 0.3)
            y = fr.py(h)
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" '
                f'height="{fr.py(0) - y:.2f}" fill="{color}" fill-opacity="0.55"/>'
            )
    for x, y, color in lines:
        pts = " ".join(
            f"{fr.px(a):.2f},{fr.py(b):.2f}" for a, b in zip(x, y) if math.isfinite(b)
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.6"/>'
        )
    for x, y, color in points:
        for a, b in zip(x, y):
            parts.append(
                f'<circle cx="{fr.px(a):.2f}" cy="{fr.py(b):.2f}" r="3" fill="{color}"/>'
            )
    parts.extend(_axes(fr))
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))


def _heat_color(v: float) -> str:
    # black -> red -> yellow -> white ramp
    v = min(max(v, 0.0), 1.0)
    r = min(1.0, 3.0 * v)
    g = min(1.0, max(0.0, 3.0 * v - 1.0))
    b = min(1.0, max(0.0, 3.0 * v - 2.0))
    return f"rgb({int(255 * r)},{int(255 * g)},{int(255 * b)})"


def render_heatmap(path, x, y, z, *, title: str = "") -> None:
    """Color-map a 2D field z[j, i] over grid (x[i], y[j])."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    fr = _Frame((float(x[0]), float(x[-1])), (float(y[0]), float(y[-1])))
    zmax = float(np.max(z)) or 1.0
    parts = _header(title)
    dx = _PW / max(len(x) - 1, 1)
    dy = _PH / max(len(y) - 1, 1)
    for j in range(len(y)):
        for i in range(len(x)):
            v = z[j, i] / zmax
            if v <= 0.0:
                continue
            parts.append(
                f'<rect x="{fr.px(x[i]) - dx / 2:.2f}" y="{fr.py(y[j]) - dy / 2:.2f}" '
                f'width="{dx + 0.5:.2f}" height="{dy + 0.5:.2f}" fill="{_heat_color(v)}"/>'
            )
    parts.extend(_axes(fr))
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
