"""Marching-squares contours of f_n = 0 and tau_n = 0, written as SVG 1.1.

The two zero sets are drawn as separate path groups with distinct stroke
classes, and the non-acyclic diagonal points are marked with circles.
"""

from __future__ import annotations

import numpy as np

from .charlocus import nonacyclic_roots
from .errors import TwistorError
from .families import f_poly, tau_poly

# cell-edge pairs crossed for each of the 16 sign patterns; edges are
# 0: bottom, 1: right, 2: top, 3: left (corner order SW, SE, NE, NW)
_EDGE_TABLE = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)],
    5: [(3, 2), (0, 1)], 6: [(0, 2)], 7: [(3, 2)],
    8: [(3, 2)], 9: [(0, 2)], 10: [(3, 0), (1, 2)],
    11: [(1, 2)], 12: [(3, 1)], 13: [(0, 1)], 14: [(3, 0)],
}


def _interp(p0, p1, v0, v1):
    t = 0.5 if v0 == v1 else v0 / (v0 - v1)
    t = min(max(t, 0.0), 1.0)
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def marching_squares(values, xs, ys):
    """Zero-contour segments of a scalar grid values[i, j] at (xs[i], ys[j])."""
    segments = []
    ni, nj = values.shape
    for i in range(ni - 1):
        for j in range(nj - 1):
            corners = [
                ((xs[i], ys[j]), values[i, j]),
                ((xs[i + 1], ys[j]), values[i + 1, j]),
                ((xs[i + 1], ys[j + 1]), values[i + 1, j + 1]),
                ((xs[i], ys[j + 1]), values[i, j + 1]),
            ]
            idx = 0
            for k, (_, v) in enumerate(corners):
                if v < 0:
                    idx |= 1 << k
            if idx in (0, 15):
                continue
            edge_pts = {}
            edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
            for e, (k0, k1) in enumerate(edges):
                (pt0, v0), (pt1, v1) = corners[k0], corners[k1]
                if (v0 < 0) != (v1 < 0):
                    edge_pts[e] = _interp(pt0, pt1, v0, v1)
            for e0, e1 in _EDGE_TABLE.get(idx, []):
                if e0 in edge_pts and e1 in edge_pts:
                    segments.append((edge_pts[e0], edge_pts[e1]))
    return segments


def _grid_values(poly, xs, ys):
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    if poly.is_zero():
        return np.zeros_like(X) + 1.0  # empty zero set for the zero... never hit
    return np.asarray(poly.evaluate(X, Y), dtype=float)


def _path_data(segments, to_px):
    parts = []
    for (x0, y0), (x1, y1) in segments:
        px0, py0 = to_px(x0, y0)
        px1, py1 = to_px(x1, y1)
        parts.append(f"M{px0:.2f} {py0:.2f}L{px1:.2f} {py1:.2f}")
    return "".join(parts)


def plot_curves(n, window, resolution, out_path, size=640):
    """Write an SVG with the contours f_n = 0 (class f-curve) and tau_n = 0
    (class tau-curve) over ``window`` = (x0, y0, x1, y1), plus markers at the
    non-acyclic points inside the window.  Returns a small summary dict."""
    if resolution < 64:
        raise TwistorError("resolution must be at least 64")
    x0, y0, x1, y1 = window
    if not (x1 > x0 and y1 > y0):
        raise TwistorError("empty plot window")
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)

    f = f_poly(n)
    tau = tau_poly(n)
    f_segments = [] if f.deg_x == 0 and f.deg_y == 0 else marching_squares(
        _grid_values(f, xs, ys), xs, ys
    )
    tau_segments = [] if tau.is_zero() or (tau.deg_x == 0 and tau.deg_y == 0) else (
        marching_squares(_grid_values(tau, xs, ys), xs, ys)
    )

    def to_px(x, y):
        return (
            (x - x0) / (x1 - x0) * size,
            size - (y - y0) / (y1 - y0) * size,
        )

    markers = [
        d for d in (nonacyclic_roots(n) if n not in (0, 1) else [])
        if x0 <= d.x <= x1 and y0 <= d.x <= y1
    ]
    marker_svg = "".join(
        '<circle class="nonacyclic" cx="{:.2f}" cy="{:.2f}" r="4"/>'.format(
            *to_px(d.x, d.x)
        )
        for d in markers
    )
    svg = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
        "<style>.f-curve{stroke:#1f6fd6;stroke-width:1.4;fill:none}"
        ".tau-curve{stroke:#e0862c;stroke-width:1.4;fill:none}"
        ".nonacyclic{fill:#111}</style>\n"
        f'<g class="f-curve"><path d="{_path_data(f_segments, to_px)}"/></g>\n'
        f'<g class="tau-curve"><path d="{_path_data(tau_segments, to_px)}"/></g>\n'
        f"<g>{marker_svg}</g>\n"
        "</svg>\n"
    )
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise TwistorError(f"cannot write SVG: {exc}") from exc
    return {
        "n": n,
        "out": str(out_path),
        "f_segments": len(f_segments),
        "tau_segments": len(tau_segments),
        "markers": len(markers),
    }
