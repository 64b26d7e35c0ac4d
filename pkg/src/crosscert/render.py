"""SVG drawing of the stage F_m: unit square, holes grouped by cross, and
the removed gap intervals marked on the bottom and left sides."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from .geometry import Rect, all_gaps, crosses, holes_by_cross

DEFAULT_DEPTH_CAP = 5


class DepthCapError(ValueError):
    pass


@dataclass(frozen=True)
class RenderStyle:
    size_px: int = 480
    margin: Fraction = Fraction(1, 20)
    fill: str = "#b0b0b0"
    hole: str = "#ffffff"
    stroke: str = "#000000"
    mark_width: Fraction = Fraction(1, 100)
    mark_offset: Fraction = Fraction(1, 50)


def dec(q) -> str:
    """Fixed 12-digit decimal for a rational coordinate."""
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = 60
        v = (Decimal(q.numerator) / Decimal(q.denominator)).quantize(
            Decimal("1e-12"), rounding=ROUND_HALF_EVEN)
    s = format(v, "f")
    return "0.000000000000" if s.startswith("-") and Decimal(s) == 0 else s


def _rect_el(r: Rect, css: str, fill: str) -> str:
    # flip y so that the picture has the origin at the bottom left
    return (f'<rect class="{css}" x="{dec(r.x0)}" y="{dec(1 - r.y1)}" '
            f'width="{dec(r.width)}" height="{dec(r.height)}" fill="{fill}"/>')


def render_Fm(seq, m: int, style: RenderStyle = RenderStyle(),
              depth_cap: int = DEFAULT_DEPTH_CAP) -> str:
    if m > depth_cap:
        raise DepthCapError(f"depth {m} exceeds render cap {depth_cap}")
    cs = crosses(seq, m)
    groups = holes_by_cross(seq, m)

    mg = style.margin
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{style.size_px}" height="{style.size_px}" '
        f'viewBox="{dec(-mg)} {dec(-mg)} {dec(1 + 2 * mg)} {dec(1 + 2 * mg)}">',
        f'<title>F_{m}</title>',
        _rect_el(Rect(0, 1, 0, 1), "unit-square", style.fill),
        '<g class="holes">',
    ]
    for c in cs:
        lines.append(f'<g class="cross" data-level="{c.level}" data-index="{c.index}">')
        lines.extend(_rect_el(r, "hole", style.hole) for r in groups[(c.level, c.index)])
        lines.append('</g>')
    lines.append('</g>')
    lines.append(f'<g class="gap-marks" stroke="{style.stroke}" '
                 f'stroke-width="{dec(style.mark_width)}">')
    off = style.mark_offset
    for g in all_gaps(seq, m):
        lines.append(f'<line class="gap-mark" data-side="bottom" data-level="{g.level}" '
                     f'x1="{dec(g.left)}" y1="{dec(1 + off)}" x2="{dec(g.right)}" y2="{dec(1 + off)}"/>')
    for g in all_gaps(seq, m):
        lines.append(f'<line class="gap-mark" data-side="left" data-level="{g.level}" '
                     f'x1="{dec(-off)}" y1="{dec(1 - g.right)}" x2="{dec(-off)}" y2="{dec(1 - g.left)}"/>')
    lines.append('</g>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
