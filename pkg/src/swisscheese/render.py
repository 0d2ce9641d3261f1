"""Static SVG rendering of cheeses.

The outer disc is a filled circle and each removed disc is a hole-coloured
circle drawn on top, so the document holds exactly one ``circle`` per disc.
The y axis points up (coordinates are negated on output) and every number
is written with six decimals.
"""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .cheese import SwissCheese
from .errors import InvalidInputError

OUTER_STROKE = "#1f4e9c"
HOLE_STROKE = "#b22222"


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 800
    margin_frac: float = 0.05
    fill_color: str = "#f2c14e"
    hole_color: str = "#ffffff"
    show_boundary_chain: bool = False

    def __post_init__(self):
        if self.width_px < 64:
            raise InvalidInputError("width_px must be >= 64")
        if not 0.0 <= self.margin_frac < 1.0:
            raise InvalidInputError("margin_frac must lie in [0, 1)")


def _f(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _circles(c: SwissCheese, opts: RenderOptions, dx: float, dy: float, stroke_w: float):
    # dx, dy: offset added before the y flip
    o = c.outer
    chain = opts.show_boundary_chain
    lines = []
    extra = (f' stroke="{OUTER_STROKE}" stroke-width="{_f(stroke_w)}"' if chain else "")
    lines.append(f'<circle cx="{_f(o.center.x + dx)}" cy="{_f(-(o.center.y + dy))}" '
                 f'r="{_f(o.radius)}" fill={quoteattr(opts.fill_color)}{extra}/>')
    extra = (f' stroke="{HOLE_STROKE}" stroke-width="{_f(stroke_w)}"' if chain else "")
    for x, y, r in c.xyr.tolist():
        lines.append(f'<circle cx="{_f(x + dx)}" cy="{_f(-(y + dy))}" r="{_f(r)}" '
                     f'fill={quoteattr(opts.hole_color)}{extra}/>')
    return lines


def _document(view, width, height, title, body):
    vx, vy, vw, vh = view
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="{_f(vx)} {_f(vy)} {_f(vw)} {_f(vh)}">',
        f"<title>{escape(title)}</title>",
    ]
    return "\n".join(head + body + ["</svg>", ""])


def render_svg(c: SwissCheese, opts: RenderOptions = RenderOptions()) -> str:
    o = c.outer
    side = 2.0 * o.radius
    pad = opts.margin_frac * side
    view = (o.center.x - o.radius - pad, -o.center.y - o.radius - pad, side + 2 * pad, side + 2 * pad)
    body = ["<g>"] + _circles(c, opts, 0.0, 0.0, side / 400.0) + ["</g>"]
    return _document(view, opts.width_px, opts.width_px,
                     f"Swiss cheese with {len(c)} removed discs", body)


def render_comparison(before: SwissCheese, after: SwissCheese,
                      opts: RenderOptions = RenderOptions()) -> str:
    """Two panels side by side on a common scale (left: before, right: after)."""
    radius = max(before.outer.radius, after.outer.radius)
    side = 2.0 * radius
    pad = opts.margin_frac * side
    panel = side + 2 * pad
    body = []
    for k, c in enumerate((before, after)):
        o = c.outer
        # move the outer centre to the middle of panel k
        dx = (k + 0.5) * panel - o.center.x
        dy = -0.5 * panel - o.center.y
        label = "before" if k == 0 else "after"
        body.append(f'<g id="{label}">')
        body.append(f"<title>{label}: {len(c)} removed discs</title>")
        body.extend(_circles(c, opts, dx, dy, side / 400.0))
        body.append("</g>")
    return _document((0.0, 0.0, 2 * panel, panel), opts.width_px, max(opts.width_px // 2, 1),
                     "Swiss cheese before and after classicalisation", body)
