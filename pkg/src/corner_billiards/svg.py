"""Static SVG renderings of tables, reduced tables and centre trajectories."""

from __future__ import annotations

import math

import numpy as np

from .geometry import Table


def _path(components, flip) -> str:
    parts = []
    for c in components:
        x0, y0 = flip(c.start_point)
        parts.append(f"M {x0:.6f} {y0:.6f}")
        x1, y1 = flip(c.end_point)
        if c.kind == "segment":
            parts.append(f"L {x1:.6f} {y1:.6f}")
        elif c.is_full_circle:
            xm, ym = flip(c.point(0.5))
            r = c.radius
            sweep_flag = 0 if c.ccw else 1  # y is flipped on screen
            parts.append(f"A {r:.6f} {r:.6f} 0 0 {sweep_flag} {xm:.6f} {ym:.6f}")
            parts.append(f"A {r:.6f} {r:.6f} 0 0 {sweep_flag} {x1:.6f} {y1:.6f}")
        else:
            large = 1 if abs(c.sweep) > math.pi else 0
            sweep_flag = 0 if c.ccw else 1
            parts.append(f"A {c.radius:.6f} {c.radius:.6f} 0 {large} {sweep_flag} {x1:.6f} {y1:.6f}")
    return " ".join(parts)


def render(table: Table, reduced=None, trajectory: np.ndarray | None = None, size: int = 600) -> str:
    """Original boundary solid, reduced boundary dashed, centre path as a polyline."""
    xmin, ymin, xmax, ymax = table.bounds
    span = max(xmax - xmin, ymax - ymin) or 1.0
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def flip(p):
        return ((p[0] - xmin + pad) * scale, (ymax + pad - p[1]) * scale)

    width = (xmax - xmin + 2 * pad) * scale
    height = (ymax - ymin + 2 * pad) * scale
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
           f'viewBox="0 0 {width:.3f} {height:.3f}">',
           f'<path d="{_path(table.components, flip)}" fill="none" stroke="black" stroke-width="2"/>']
    if reduced is not None:
        out.append(f'<path d="{_path([p.curve for p in reduced.pieces], flip)}" fill="none" '
                   'stroke="steelblue" stroke-width="1.5" stroke-dasharray="6 4"/>')
    if trajectory is not None and len(trajectory) > 1:
        pts = " ".join("{:.6f},{:.6f}".format(*flip(p)) for p in trajectory)
        out.append(f'<polyline points="{pts}" fill="none" stroke="crimson" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
