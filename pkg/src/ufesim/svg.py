"""Tiny self-contained SVG charts for the stats outputs.

Plot-ready CSVs are the primary artifact; these renderings exist so a
run can be eyeballed without any plotting stack installed.
"""
from __future__ import annotations

from typing import Sequence

_WIDTH = 640
_HEIGHT = 400
_MARGIN = 50


def _scale(values: Sequence[float], lo: float, hi: float, out_lo: float, out_hi: float):
    span = hi - lo or 1.0
    return [out_lo + (v - lo) / span * (out_hi - out_lo) for v in values]


def _frame(title: str, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">'
    )
    parts = [
        head,
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        *body,
        "</svg>",
    ]
    return "\n".join(parts)


def line_chart(points: Sequence[tuple[float, float]], title: str = "") -> str:
    """One polyline through (x, y) pairs with simple axis labels."""
    if not points:
        return _frame(title, [])
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(0.0, min(ys)), max(ys)
    px = _scale(xs, x_lo, x_hi, _MARGIN, _WIDTH - _MARGIN)
    py = _scale(ys, y_lo, y_hi, _HEIGHT - _MARGIN, _MARGIN)
    path = " ".join(f"{x:.1f},{y:.1f}" for x, y in zip(px, py))
    body = [
        f'<polyline points="{path}" fill="none" stroke="steelblue" stroke-width="2"/>',
        f'<line x1="{_MARGIN}" y1="{_HEIGHT - _MARGIN}" x2="{_WIDTH - _MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" y2="{_HEIGHT - _MARGIN}" '
        f'stroke="black"/>',
        f'<text x="{_MARGIN}" y="{_HEIGHT - _MARGIN + 20}" text-anchor="middle">{x_lo:g}</text>',
        f'<text x="{_WIDTH - _MARGIN}" y="{_HEIGHT - _MARGIN + 20}" '
        f'text-anchor="middle">{x_hi:g}</text>',
        f'<text x="{_MARGIN - 8}" y="{_HEIGHT - _MARGIN}" text-anchor="end">{y_lo:g}</text>',
        f'<text x="{_MARGIN - 8}" y="{_MARGIN + 4}" text-anchor="end">{y_hi:g}</text>',
    ]
    for x, y in zip(px, py):
        body.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3" fill="steelblue"/>')
    return _frame(title, body)


def bar_chart(bins: Sequence[tuple[float, float, int]], title: str = "") -> str:
    """Histogram bars from (low, high, count) bins."""
    if not bins:
        return _frame(title, [])
    top = max(count for _, _, count in bins) or 1
    x_lo, x_hi = bins[0][0], bins[-1][1]
    body = [
        f'<line x1="{_MARGIN}" y1="{_HEIGHT - _MARGIN}" x2="{_WIDTH - _MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<text x="{_MARGIN}" y="{_HEIGHT - _MARGIN + 20}" text-anchor="middle">{x_lo:g}</text>',
        f'<text x="{_WIDTH - _MARGIN}" y="{_HEIGHT - _MARGIN + 20}" '
        f'text-anchor="middle">{x_hi:g}</text>',
        f'<text x="{_MARGIN - 8}" y="{_MARGIN + 4}" text-anchor="end">{top}</text>',
    ]
    span = (x_hi - x_lo) or 1.0
    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = _HEIGHT - 2 * _MARGIN
    for lo, hi, count in bins:
        x = _MARGIN + (lo - x_lo) / span * plot_w
        w = (hi - lo) / span * plot_w
        h = count / top * plot_h
        y = _HEIGHT - _MARGIN - h
        body.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{max(w - 1, 1):.1f}" height="{h:.1f}" '
            f'fill="darkseagreen" stroke="none"/>'
        )
    return _frame(title, body)
