"""Minimal deterministic SVG plot of a numerical-range boundary."""

from __future__ import annotations

import math

import numpy as np

SIZE = 512
MARGIN = 0.05


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_boundary(zeta, *, flat_segments=(), d: int | None = None,
                    phi: float = 0.0, title: str | None = None) -> str:
    """SVG text for the closed curve through ``zeta``.

    The square ``[-R, R]^2`` with ``R = max |zeta|`` fills the canvas minus a
    5% margin.  Flat segments are stroked in red; when ``d`` is given, the
    symmetry axes at ``phi + k pi/d`` are drawn dashed.
    """
    z = np.asarray(zeta, dtype=complex)
    R = float(np.max(np.abs(z))) if z.size else 1.0
    R = R if R > 0 else 1.0
    inner = SIZE * (1 - 2 * MARGIN)
    half = SIZE / 2

    def xy(w: complex) -> tuple[str, str]:
        return _fmt(half + w.real / R * inner / 2), _fmt(half - w.imag / R * inner / 2)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>']
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f"<title>{safe}</title>")
    if d:
        for k in range(d):
            ang = phi + k * math.pi / d
            x1, y1 = xy(-R * complex(math.cos(ang), math.sin(ang)))
            x2, y2 = xy(R * complex(math.cos(ang), math.sin(ang)))
            out.append(f'<line class="axis" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                       'stroke="gray" stroke-width="0.8" stroke-dasharray="6,4"/>')
    pts = " ".join(",".join(xy(w)) for w in z)
    out.append(f'<polygon class="boundary" points="{pts}" fill="none" stroke="black" '
               'stroke-width="1.5"/>')
    for seg in flat_segments:
        x1, y1 = xy(seg.endpoint_minus)
        x2, y2 = xy(seg.endpoint_plus)
        out.append(f'<line class="flat" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   'stroke="red" stroke-width="3"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
