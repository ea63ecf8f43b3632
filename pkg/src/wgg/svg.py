"""SVG rendering of instances and drawings.

Fixed styling: vertices are filled black markers, witnesses are white
markers with a black stroke, edges are black segments, and optional
diametral disks render as translucent gray. Elements carry class
attributes (vertex, witness, edge, disk) so output is structurally
checkable by counting.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .geometry import as_points
from .graphs import Edge

__all__ = ["render_svg", "write_svg"]


def render_svg(
    vertices,
    witnesses=None,
    edges: frozenset[Edge] | set[Edge] | None = None,
    show_disks: bool = False,
    size: int = 640,
) -> str:
    verts = as_points(vertices)
    wits = as_points(witnesses) if witnesses is not None else np.empty((0, 2))
    edges = sorted(edges) if edges else []

    pts = [verts] if len(verts) else []
    if len(wits):
        pts.append(wits)
    allpts = np.vstack(pts) if pts else np.zeros((1, 2))
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    if show_disks:
        for i, j in edges:
            r = math.dist(verts[i], verts[j]) / 2.0
            c = (verts[i] + verts[j]) / 2.0
            lo = np.minimum(lo, c - r)
            hi = np.maximum(hi, c + r)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    pad = 0.06 * span
    lo = lo - pad
    span += 2.0 * pad
    scale = size / span

    def sx(x: float) -> float:
        return (x - lo[0]) * scale

    def sy(y: float) -> float:
        return size - (y - lo[1]) * scale  # flip to screen coordinates

    marker = max(2.5, size / 160.0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if show_disks:
        for i, j in edges:
            c = (verts[i] + verts[j]) / 2.0
            r = math.dist(verts[i], verts[j]) / 2.0 * scale
            parts.append(
                f'<circle class="disk" cx="{sx(c[0]):.3f}" cy="{sy(c[1]):.3f}" '
                f'r="{r:.3f}" fill="#888888" fill-opacity="0.15" stroke="none"/>'
            )
    for i, j in edges:
        parts.append(
            f'<line class="edge" x1="{sx(verts[i][0]):.3f}" y1="{sy(verts[i][1]):.3f}" '
            f'x2="{sx(verts[j][0]):.3f}" y2="{sy(verts[j][1]):.3f}" '
            f'stroke="black" stroke-width="1.5"/>'
        )
    for x, y in verts:
        parts.append(
            f'<circle class="vertex" cx="{sx(x):.3f}" cy="{sy(y):.3f}" '
            f'r="{marker:.2f}" fill="black"/>'
        )
    for x, y in wits:
        parts.append(
            f'<circle class="witness" cx="{sx(x):.3f}" cy="{sy(y):.3f}" '
            f'r="{marker:.2f}" fill="white" stroke="black" stroke-width="1.2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path, *args, **kwargs) -> None:
    Path(path).write_text(render_svg(*args, **kwargs), encoding="utf-8", newline="\n")
