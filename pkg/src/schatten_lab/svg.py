"""Self-contained SVG line charts."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def line_chart(series, width: int = 800, height: int = 600, xlabel: str = "t", ylabel: str = "gap", title: str = "") -> str:
    """``series`` maps a label to ``(xs, ys)``; non-finite ``y`` values break the line."""
    ml, mr, mt, mb = 80, 150, 40, 60
    pw, ph = width - ml - mr, height - mt - mb
    xs = [x for xs_, _ in series.values() for x in xs_]
    ys = [y for _, ys_ in series.values() for y in ys_ if math.isfinite(y)]
    x0, x1 = (min(xs), max(xs)) if xs else (0.0, 1.0)
    y0, y1 = (min(ys + [0.0]), max(ys + [0.0])) if ys else (-1.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def X(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def Y(y):
        return mt + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{escape(title)}</text>')
    for tx in _ticks(x0, x1):
        out.append(f'<line x1="{X(tx):.2f}" y1="{mt + ph}" x2="{X(tx):.2f}" y2="{mt + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X(tx):.2f}" y="{mt + ph + 20}" text-anchor="middle" font-family="sans-serif" font-size="12">{tx:.3g}</text>')
    for ty in _ticks(y0, y1):
        out.append(f'<line x1="{ml - 5}" y1="{Y(ty):.2f}" x2="{ml}" y2="{Y(ty):.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 8}" y="{Y(ty) + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="12">{ty:.3g}</text>')
    out.append(f'<line x1="{ml}" y1="{Y(0.0):.2f}" x2="{ml + pw}" y2="{Y(0.0):.2f}" stroke="gray" stroke-dasharray="4 3" class="zero-line"/>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 15}" text-anchor="middle" font-family="sans-serif" font-size="14">{escape(xlabel)}</text>')
    out.append(
        f'<text x="20" y="{mt + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 20 {mt + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    for idx, (label, (sx, sy)) in enumerate(series.items()):
        color = PALETTE[idx % len(PALETTE)]
        runs, cur = [], []
        for x, y in zip(sx, sy):
            if math.isfinite(y):
                cur.append(f"{X(x):.2f},{Y(y):.2f}")
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        for run in runs:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(run)}"/>')
        ly = mt + 20 * idx + 10
        out.append(f'<line x1="{ml + pw + 15}" y1="{ly}" x2="{ml + pw + 40}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 45}" y="{ly + 4}" font-family="sans-serif" font-size="12">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
