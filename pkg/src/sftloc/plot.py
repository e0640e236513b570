"""Static SVG rendering of a scenario and its two optima."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .experiment import CaseReport
from .scenario import Scenario, atomic_write
from .sets import Box, Disk

WIND_SCALE = 50.0  # wind is in m/s, the map in m; stretch the arrow so it shows
_SIZE = 600.0
_PAD = 40.0


def _frame(s: Scenario, report: CaseReport):
    pts = [report.x_neglected, report.x_included]
    for t in s.targets:
        o = t.region
        h = np.array(o.half_extent) if isinstance(o, Box) else np.array([o.radius, o.radius])
        pts += [np.array(o.center) - h, np.array(o.center) + h]
    P = np.array(pts, dtype=float)
    lo, hi = P.min(axis=0), P.max(axis=0)
    span = max(float(np.max(hi - lo)), 1.0)
    k = (_SIZE - 2 * _PAD) / span

    def to_px(x):
        # flip the second axis: SVG y grows downward
        return _PAD + k * (x[0] - lo[0]), _SIZE - _PAD - k * (x[1] - lo[1])

    return to_px, k


def _marker(kind, cx, cy, label):
    d = 7.0
    if kind == "neglected":
        pts = f"{cx - d},{cy - d} {cx + d},{cy - d} {cx + d},{cy + d} {cx - d},{cy + d}"
        color = "#888888"
    else:
        pts = f"{cx},{cy - d * 1.3} {cx + d},{cy + d} {cx - d},{cy + d}"
        color = "#d62728"
    return (
        f'<polygon class="marker {kind}" points="{pts}" fill="{color}" stroke="black"/>'
        f'<text x="{cx + 10:.2f}" y="{cy - 10:.2f}" font-size="12">{escape(label)}</text>'
    )


def render_svg(s: Scenario, report: CaseReport) -> str:
    to_px, k = _frame(s, report)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE:g}" height="{_SIZE:g}" '
        f'viewBox="0 0 {_SIZE:g} {_SIZE:g}">',
        f"<title>{escape(s.name)} case {escape(report.case_id)}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for i, t in enumerate(s.targets):
        o = t.region
        if isinstance(o, Disk):
            cx, cy = to_px(o.center)
            out.append(
                f'<circle class="target" cx="{cx:.2f}" cy="{cy:.2f}" r="{k * o.radius:.2f}" '
                'fill="#9ecae1" stroke="#08519c"/>'
            )
        else:
            (c1, c2), (h1, h2) = o.center, o.half_extent
            corners = [(c1 - h1, c2 - h2), (c1 + h1, c2 - h2), (c1 + h1, c2 + h2), (c1 - h1, c2 + h2)]
            px = [to_px(p) for p in corners]
            d = "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in px) + " Z"
            out.append(f'<path class="target" d="{d}" fill="#9ecae1" stroke="#08519c"/>')
        lx, ly = to_px(o.center)
        out.append(f'<text x="{lx + 8:.2f}" y="{ly + 16:.2f}" font-size="11">Ω{i + 1} (r={t.speed:g})</text>')
    xn, xi = report.x_neglected, report.x_included
    out.append(_marker("neglected", *to_px(xn), f"neglected ({xn[0]:.0f},{xn[1]:.0f}) Z_N={report.Z_N:.0f}"))
    out.append(_marker("included", *to_px(xi), f"included ({xi[0]:.0f},{xi[1]:.0f}) Z_I={report.Z_I:.0f}"))
    w = np.array(s.wind)
    if np.hypot(*w) > 0:
        # anchored at the top-left corner, length in map units = WIND_SCALE * |wind|
        x0, y0 = _PAD + 20, _PAD + 20
        x1, y1 = x0 + k * WIND_SCALE * w[0], y0 - k * WIND_SCALE * w[1]
        ang = math.atan2(y1 - y0, x1 - x0)
        hx = [x1 - 10 * math.cos(ang - 0.4), x1 - 10 * math.cos(ang + 0.4)]
        hy = [y1 - 10 * math.sin(ang - 0.4), y1 - 10 * math.sin(ang + 0.4)]
        out.append(
            f'<path class="wind-arrow" d="M {x0:.2f} {y0:.2f} L {x1:.2f} {y1:.2f} '
            f'M {hx[0]:.2f} {hy[0]:.2f} L {x1:.2f} {y1:.2f} L {hx[1]:.2f} {hy[1]:.2f}" '
            'stroke="black" stroke-width="2" fill="none"/>'
        )
        out.append(f'<text x="{x0:.2f}" y="{y0 - 8:.2f}" font-size="11">wind ({w[0]:g},{w[1]:g}) x{WIND_SCALE:g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(s: Scenario, report: CaseReport, out) -> str:
    text = render_svg(s, report)
    atomic_write(out, text)
    return text
