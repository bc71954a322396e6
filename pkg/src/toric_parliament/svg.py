"""Deterministic SVG 1.1 drawings of 2-D parliaments."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .klyachko import ConeSplitting
from .parliament import ParliamentPolytope

SCALE = 40
PAD = 30
LEGEND_WIDTH = 220
GLYPHS = ("circle", "square", "diamond", "star", "triangle")
FILL = "#1f5fbf"


def _num(x) -> str:
    return f"{float(x):.2f}"


def _label(e: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in e) + ")"


def _ordered(vertices: Sequence[Sequence[Fraction]]) -> list[Sequence[Fraction]]:
    cx = sum(Fraction(v[0]) for v in vertices) / len(vertices)
    cy = sum(Fraction(v[1]) for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: math.atan2(float(v[1] - cy), float(v[0] - cx)))


def _glyph(kind: str, x: float, y: float, hollow: bool, cone: int) -> str:
    fill = "#ffffff" if hollow else "#000000"
    attrs = f'class="character" data-cone="{cone + 1}" fill="{fill}" stroke="#000000" stroke-width="1.5"'
    r = 5.0
    if kind == "circle":
        return f'<circle {attrs} cx="{_num(x)}" cy="{_num(y)}" r="{_num(r)}"/>'
    if kind == "square":
        return (f'<rect {attrs} x="{_num(x - r)}" y="{_num(y - r)}" '
                f'width="{_num(2 * r)}" height="{_num(2 * r)}"/>')
    if kind == "diamond":
        pts = [(x, y - r - 1), (x + r + 1, y), (x, y + r + 1), (x - r - 1, y)]
    elif kind == "triangle":
        pts = [(x, y - r - 1), (x + r + 1, y + r), (x - r - 1, y + r)]
    else:
        pts = []
        for k in range(10):
            rad = (r + 2) if k % 2 == 0 else (r - 1.5)
            ang = -math.pi / 2 + k * math.pi / 5
            pts.append((x + rad * math.cos(ang), y + rad * math.sin(ang)))
    coords = " ".join(f"{_num(a)},{_num(b)}" for a, b in pts)
    return f'<polygon {attrs} points="{coords}"/>'


def render_svg(polytopes: Sequence[ParliamentPolytope], splittings: Sequence[ConeSplitting],
               highlights: Iterable[Sequence[int]] = ()) -> str:
    """Draw every nonempty polytope, its lattice points and the cone characters.

    ``highlights`` marks characters (for instance those with higher
    cohomology) with red triangles.  Raises ``ValueError`` unless the lattice
    has rank 2.
    """
    highlights = sorted({tuple(h) for h in highlights})
    points = [v for p in polytopes for v in p.vertices]
    points += [u for s in splittings for u in s.characters]
    points += highlights
    if not points:
        raise ValueError("nothing to draw")
    if any(len(p) != 2 for p in points):
        raise ValueError("SVG rendering needs a rank-2 lattice")
    xmin = math.floor(min(p[0] for p in points)) - 1
    xmax = math.ceil(max(p[0] for p in points)) + 1
    ymin = math.floor(min(p[1] for p in points)) - 1
    ymax = math.ceil(max(p[1] for p in points)) + 1
    width = (xmax - xmin) * SCALE + 2 * PAD + LEGEND_WIDTH
    height = max((ymax - ymin) * SCALE + 2 * PAD, 40 + 18 * (len(polytopes) + len(splittings)))

    def px(x) -> float:
        return PAD + (float(x) - xmin) * SCALE

    def py(y) -> float:
        return PAD + (ymax - float(y)) * SCALE

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
           f'height="{height}" viewBox="0 0 {width} {height}">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
           '<g class="grid" stroke="#dddddd" stroke-width="1">']
    for x in range(xmin, xmax + 1):
        out.append(f'<line x1="{_num(px(x))}" y1="{_num(py(ymin))}" '
                   f'x2="{_num(px(x))}" y2="{_num(py(ymax))}"/>')
    for y in range(ymin, ymax + 1):
        out.append(f'<line x1="{_num(px(xmin))}" y1="{_num(py(y))}" '
                   f'x2="{_num(px(xmax))}" y2="{_num(py(y))}"/>')
    out.append('</g>')
    out.append('<g class="axes" stroke="#444444" stroke-width="1.5">')
    if xmin <= 0 <= xmax:
        out.append(f'<line x1="{_num(px(0))}" y1="{_num(py(ymin))}" '
                   f'x2="{_num(px(0))}" y2="{_num(py(ymax))}"/>')
    if ymin <= 0 <= ymax:
        out.append(f'<line x1="{_num(px(xmin))}" y1="{_num(py(0))}" '
                   f'x2="{_num(px(xmax))}" y2="{_num(py(0))}"/>')
    out.append('</g>')
    out.append('<g class="ticks" font-family="sans-serif" font-size="9" fill="#444444">')
    for x in range(xmin, xmax + 1):
        out.append(f'<text x="{_num(px(x))}" y="{_num(py(ymin) + 12)}" '
                   f'text-anchor="middle">{x}</text>')
    for y in range(ymin, ymax + 1):
        out.append(f'<text x="{_num(px(xmin) - 6)}" y="{_num(py(y) + 3)}" '
                   f'text-anchor="end">{y}</text>')
    out.append('</g>')

    out.append(f'<g class="parliament" fill="{FILL}" stroke="{FILL}">')
    for p in polytopes:
        if p.empty:
            continue
        label = escape(_label(p.vector))
        verts = _ordered(p.vertices)
        dim = p.dimension
        if dim == 2:
            coords = " ".join(f"{_num(px(v[0]))},{_num(py(v[1]))}" for v in verts)
            out.append(f'<polygon class="polytope" data-vector="{label}" points="{coords}" '
                       f'fill-opacity="0.5" stroke-width="1.5"/>')
        elif dim == 1:
            a, b = min(p.vertices), max(p.vertices)
            out.append(f'<line class="polytope" data-vector="{label}" x1="{_num(px(a[0]))}" '
                       f'y1="{_num(py(a[1]))}" x2="{_num(px(b[0]))}" y2="{_num(py(b[1]))}" '
                       f'stroke-width="4" stroke-opacity="0.5"/>')
        else:
            v = p.vertices[0]
            out.append(f'<circle class="polytope" data-vector="{label}" cx="{_num(px(v[0]))}" '
                       f'cy="{_num(py(v[1]))}" r="9" fill-opacity="0.5"/>')
        cx = sum(Fraction(v[0]) for v in verts) / len(verts)
        cy = sum(Fraction(v[1]) for v in verts) / len(verts)
        out.append(f'<text class="label" x="{_num(px(cx) + 8)}" y="{_num(py(cy) - 8)}" '
                   f'font-family="sans-serif" font-size="10" stroke="none">e={label}</text>')
    for u in sorted({u for p in polytopes for u in p.lattice_points}):
        out.append(f'<circle class="lattice-point" cx="{_num(px(u[0]))}" '
                   f'cy="{_num(py(u[1]))}" r="2.5" stroke="none"/>')
    out.append('</g>')

    out.append('<g class="characters">')
    for s in splittings:
        glyph = GLYPHS[s.cone % len(GLYPHS)]
        for u in sorted(set(s.characters)):
            hollow = not any(not p.empty and _inside(p, u) for p in polytopes)
            out.append(_glyph(glyph, px(u[0]), py(u[1]), hollow, s.cone))
    out.append('</g>')

    if highlights:
        out.append('<g class="highlights" fill="#d62728" stroke="none">')
        for u in highlights:
            x, y = px(u[0]), py(u[1])
            out.append(f'<polygon class="highlight" points="{_num(x)},{_num(y - 9)} '
                       f'{_num(x + 8)},{_num(y + 6)} {_num(x - 8)},{_num(y + 6)}" '
                       f'fill-opacity="0.8"/>')
        out.append('</g>')

    lx = (xmax - xmin) * SCALE + 2 * PAD + 10
    out.append('<g class="legend" font-family="sans-serif" font-size="11" fill="#000000">')
    row = 20
    for p in polytopes:
        note = " (empty)" if p.empty else ""
        out.append(f'<text x="{lx}" y="{row}">P_e, e={escape(_label(p.vector))}{note}</text>')
        row += 18
    for s in splittings:
        out.append(f'<text x="{lx}" y="{row}">cone {s.cone + 1}: '
                   f'{GLYPHS[s.cone % len(GLYPHS)]}</text>')
        row += 18
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def _inside(p: ParliamentPolytope, u: Sequence[int]) -> bool:
    return tuple(u) in set(p.lattice_points)
