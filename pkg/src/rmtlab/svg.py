"""Deterministic SVG emission for eigenvalue clouds and tail curves.

Hand-rolled SVG so the output bytes depend only on the data: fixed
800x800 viewport, fixed float formatting, no timestamps.  Scatter
markers are deduplicated at 3-decimal precision to bound file size for
large clouds.
"""

from __future__ import annotations

import numpy as np

WIDTH = HEIGHT = 800
MARGIN = 60


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _axes(x_label: str, y_label: str, xlim, ylim) -> list[str]:
    x0, x1 = MARGIN, WIDTH - MARGIN
    y0, y1 = HEIGHT - MARGIN, MARGIN
    parts = [
        f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" '
        f'fill="none" stroke="black" stroke-width="1"/>',
        f'<text x="{(x0 + x1) // 2}" y="{HEIGHT - 15}" '
        f'text-anchor="middle" font-size="16">{x_label}</text>',
        f'<text x="20" y="{(y0 + y1) // 2}" text-anchor="middle" '
        f'font-size="16" transform="rotate(-90 20 {(y0 + y1) // 2})">'
        f'{y_label}</text>',
        f'<text x="{x0}" y="{HEIGHT - 35}" text-anchor="middle" '
        f'font-size="12">{_fmt(xlim[0])}</text>',
        f'<text x="{x1}" y="{HEIGHT - 35}" text-anchor="middle" '
        f'font-size="12">{_fmt(xlim[1])}</text>',
        f'<text x="{x0 - 10}" y="{y0}" text-anchor="end" '
        f'font-size="12">{_fmt(ylim[0])}</text>',
        f'<text x="{x0 - 10}" y="{y1 + 5}" text-anchor="end" '
        f'font-size="12">{_fmt(ylim[1])}</text>',
    ]
    return parts


class _Mapper:
    def __init__(self, xlim, ylim):
        self.xlim, self.ylim = xlim, ylim

    def x(self, v: float) -> float:
        x0, x1 = self.xlim
        return MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def y(self, v: float) -> float:
        y0, y1 = self.ylim
        return HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)


def _document(body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def emit_scatter_svg(eigenvalues, path: str, unit_circle: bool = True) -> None:
    """One marker per eigenvalue in the complex plane, Re/Im axes."""
    lam = np.asarray(eigenvalues, dtype=complex)
    lim = max(1.0, float(np.max(np.abs(lam))) if lam.size else 1.0) * 1.1
    m = _Mapper((-lim, lim), (-lim, lim))
    body = _axes("Re", "Im", (-lim, lim), (-lim, lim))
    if unit_circle:
        r = m.x(1.0) - m.x(0.0)
        body.append(f'<circle cx="{_fmt(m.x(0.0))}" cy="{_fmt(m.y(0.0))}" '
                    f'r="{_fmt(r)}" fill="none" stroke="blue" '
                    f'stroke-width="1"/>')
    seen = set()
    for z in lam:
        key = (round(z.real, 3), round(z.imag, 3))
        if key in seen:
            continue
        seen.add(key)
        body.append(f'<circle cx="{_fmt(m.x(key[0]))}" '
                    f'cy="{_fmt(m.y(key[1]))}" r="2" fill="black"/>')
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_document(body))


def emit_curve_svg(rows, path: str, x_label: str = "x",
                   y_label: str = "y") -> None:
    """Polyline through (x, y) rows with an optional CI band.

    ``rows`` is a sequence of (x, y) or (x, y, ci_lo, ci_hi) tuples.
    """
    rows = [tuple(float(v) for v in r) for r in rows]
    if not rows:
        raise ValueError("no data rows")
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    lo = [r[2] if len(r) > 3 else r[1] for r in rows]
    hi = [r[3] if len(r) > 3 else r[1] for r in rows]
    xpad = (max(xs) - min(xs)) * 0.05 or 1.0
    ylo, yhi = min(lo), max(hi)
    ypad = (yhi - ylo) * 0.05 or 1.0
    m = _Mapper((min(xs) - xpad, max(xs) + xpad), (ylo - ypad, yhi + ypad))
    body = _axes(x_label, y_label, m.xlim, m.ylim)
    if any(len(r) > 3 for r in rows):
        band = [f"{_fmt(m.x(x))},{_fmt(m.y(v))}" for x, v in zip(xs, lo)]
        band += [f"{_fmt(m.x(x))},{_fmt(m.y(v))}"
                 for x, v in zip(reversed(xs), reversed(hi))]
        body.append(f'<polygon points="{" ".join(band)}" fill="lightgray" '
                    f'stroke="none"/>')
    pts = " ".join(f"{_fmt(m.x(x))},{_fmt(m.y(y))}" for x, y in zip(xs, ys))
    body.append(f'<polyline points="{pts}" fill="none" stroke="black" '
                f'stroke-width="1.5"/>')
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_document(body))
