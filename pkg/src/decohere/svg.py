"""Minimal static line plots as SVG markup (no plotting dependency)."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

_COLORS = ("#000000", "#1f5fbf", "#bf3f1f", "#2f8f2f")
_DASHES = ("", "6,4", "2,3", "8,3,2,3")


def line_plot(x, series: dict, xlabel: str, ylabel: str, width: int = 640, height: int = 420) -> str:
    """Render ``series`` (label -> y array) against ``x``."""
    x = np.asarray(x, dtype=float)
    ys = [np.asarray(v, dtype=float) for v in series.values()]
    left, right, top, bottom = 70, 20, 20, 50
    pw, ph = width - left - right, height - top - bottom
    x0, x1 = float(x.min()), float(x.max())
    y0 = min(0.0, min(float(np.nanmin(y)) for y in ys))
    y1 = max(float(np.nanmax(y)) for y in ys)
    if y1 <= y0:
        y1 = y0 + 1.0
    sx = lambda v: left + (v - x0) / (x1 - x0) * pw  # noqa: E731
    sy = lambda v: top + ph - (v - y0) / (y1 - y0) * ph  # noqa: E731

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
    ]
    for frac in np.linspace(0, 1, 5):
        xv = x0 + frac * (x1 - x0)
        yv = y0 + frac * (y1 - y0)
        out.append(f'<text x="{sx(xv):.1f}" y="{top + ph + 16}" text-anchor="middle">{xv:.4g}</text>')
        out.append(f'<text x="{left - 6}" y="{sy(yv) + 4:.1f}" text-anchor="end">{yv:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    for i, (label, y) in enumerate(zip(series, ys)):
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y) if np.isfinite(b))
        dash = _DASHES[i % len(_DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        color = _COLORS[i % len(_COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.3"{dash_attr} points="{pts}"/>')
        ly = top + 16 + 16 * i
        out.append(
            f'<line x1="{left + pw - 130}" y1="{ly - 4}" x2="{left + pw - 100}" y2="{ly - 4}" '
            f'stroke="{color}"{dash_attr}/>'
        )
        out.append(f'<text x="{left + pw - 94}" y="{ly}">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
