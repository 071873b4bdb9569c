"""Deterministic SVG line plots and grayscale heatmaps.

Output depends only on the input numbers: coordinates are printed with a
fixed precision and no timestamps or ids are embedded.
"""

from xml.sax.saxutils import escape

import numpy as np

from .husimi import QGrid

WIDTH, HEIGHT = 720, 360
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 130, 30, 40
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _n(x):
    return f"{x:.2f}"


def _ticks(lo, hi, count=5):
    if hi == lo:
        return [lo]
    return list(np.linspace(lo, hi, count))


def render_series_svg(tau, columns, title=""):
    """Line plot of one or more columns against ``tau``."""
    tau = np.asarray(tau, dtype=float)
    if tau.size == 0 or not columns:
        raise ValueError("cannot render an empty series")
    ys = {k: np.asarray(v, dtype=float) for k, v in columns.items()}
    for name, y in ys.items():
        if y.shape != tau.shape:
            raise ValueError(f"column {name!r} does not match tau")
    x0, x1 = float(tau.min()), float(tau.max())
    if x1 == x0:
        x1 = x0 + 1.0
    y0 = min(float(y.min()) for y in ys.values())
    y1 = max(float(y.max()) for y in ys.values())
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN_T + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{MARGIN_L}" y="18" font-family="sans-serif" font-size="13">{escape(title)}</text>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{_n(sx(t))}" y="{HEIGHT - MARGIN_B + 16}" font-family="sans-serif" '
                   f'font-size="10" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{MARGIN_L - 6}" y="{_n(sy(t) + 3)}" font-family="sans-serif" '
                   f'font-size="10" text-anchor="end">{t:.3g}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.1f}" y="{HEIGHT - 6}" font-family="sans-serif" '
               f'font-size="11" text-anchor="middle">tau</text>')
    for k, (name, y) in enumerate(ys.items()):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{_n(sx(a))},{_n(sy(b))}" for a, b in zip(tau, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{pts}"/>')
        ly = MARGIN_T + 14 + 16 * k
        lx = WIDTH - MARGIN_R + 10
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 24}" y="{ly}" font-family="sans-serif" font-size="11">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_grid_svg(grid, title="", size=402):
    """Grayscale heatmap of a Q grid; brighter means larger Q.

    The real axis runs left to right and the imaginary axis bottom to top.
    Runs of equal gray level along a row are merged into one rectangle.
    """
    v = np.asarray(grid.values, dtype=float)
    if v.size == 0:
        raise ValueError("cannot render an empty grid")
    nx, ny = v.shape
    vmax = float(v.max())
    levels = np.zeros_like(v, dtype=int) if vmax <= 0 else np.rint(255 * v / vmax).astype(int)
    cw, ch = size / nx, size / ny
    top = 30
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 20}" height="{size + top + 30}" '
        f'viewBox="0 0 {size + 20} {size + top + 30}">',
        f'<rect width="{size + 20}" height="{size + top + 30}" fill="white"/>',
        f'<text x="10" y="18" font-family="sans-serif" font-size="13">{escape(title)}</text>',
        f'<rect x="10" y="{top}" width="{size}" height="{size}" fill="black"/>',
    ]
    for iy in range(ny):
        y = top + (ny - 1 - iy) * ch
        ix = 0
        while ix < nx:
            lvl = levels[ix, iy]
            end = ix + 1
            while end < nx and levels[end, iy] == lvl:
                end += 1
            if lvl > 0:
                out.append(f'<rect x="{_n(10 + ix * cw)}" y="{_n(y)}" width="{_n((end - ix) * cw)}" '
                           f'height="{_n(ch)}" fill="rgb({lvl},{lvl},{lvl})"/>')
            ix = end
    out.append(f'<text x="10" y="{size + top + 18}" font-family="sans-serif" font-size="10">'
               f'Re in [{grid.re_min:.4g}, {grid.re_max:.4g}], Im in [{grid.im_min:.4g}, {grid.im_max:.4g}], '
               f'max Q = {vmax:.4g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(data, title=""):
    """Render a :class:`QGrid` as a heatmap or a column mapping with ``tau`` as a line plot."""
    if isinstance(data, QGrid):
        return render_grid_svg(data, title)
    data = dict(data)
    if "tau" not in data:
        raise ValueError("series needs a 'tau' column")
    tau = data.pop("tau")
    return render_series_svg(tau, data, title)
