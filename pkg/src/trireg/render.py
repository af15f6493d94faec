"""Deterministic SVG and ASCII pictures of regions, tilings, matchings and lattice paths."""

from __future__ import annotations

import math

from trireg.core import Lozenge, Monomial, TriangularRegion, monomials_of_degree
from trireg.geometry import triangle_vertices
from trireg.matching import Tiling
from trireg.paths import tiling_to_paths, lattice_points

UNIT = 24.0
MARGIN = 12.0
HEIGHT = UNIT * math.sqrt(3) / 2

LOZENGE_FILL = {"x": "#d9d9d9", "y": "#9ecae1", "z": "#fdd0a2"}
PUNCTURE_FILL = "#4d4d4d"


def _xy(d: int, v: Monomial) -> tuple[float, float]:
    """SVG coordinates of a lattice vertex (y grows downwards)."""
    x = MARGIN + UNIT * (v.c + v.a / 2)
    y = MARGIN + HEIGHT * (d - v.a)
    return x, y


def _fmt(p: tuple[float, float]) -> str:
    return f"{p[0]:.2f},{p[1]:.2f}"


def _polygon(d: int, vertices, fill: str, stroke: str = "#000000", width: float = 0.5) -> str:
    pts = " ".join(_fmt(_xy(d, v)) for v in vertices)
    return f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>'


def _centre(d: int, kind: str, m: Monomial) -> tuple[float, float]:
    pts = [_xy(d, v) for v in triangle_vertices(kind, m)]
    return sum(p[0] for p in pts) / 3, sum(p[1] for p in pts) / 3


def _lozenge_outline(lz: Lozenge) -> list[Monomial]:
    up_v = triangle_vertices("up", lz.up)
    down_v = triangle_vertices("down", lz.down)
    shared = set(up_v) & set(down_v)
    (far_up,) = set(up_v) - shared
    (far_down,) = set(down_v) - shared
    a, b = sorted(shared)
    return [far_up, a, far_down, b]


def _svg(d: int, body: list[str]) -> str:
    width = 2 * MARGIN + UNIT * d
    height = 2 * MARGIN + HEIGHT * d
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _grid(region: TriangularRegion, present_fill: str) -> list[str]:
    d = region.d
    out = []
    for m in monomials_of_degree(d - 1):
        fill = present_fill if m in region.up else PUNCTURE_FILL
        out.append(_polygon(d, triangle_vertices("up", m), fill, "#808080", 0.5))
    for m in monomials_of_degree(d - 2):
        fill = present_fill if m in region.down else PUNCTURE_FILL
        out.append(_polygon(d, triangle_vertices("down", m), fill, "#808080", 0.5))
    return out


def region_svg(region: TriangularRegion) -> str:
    return _svg(region.d, _grid(region, "#ffffff"))


def tiling_svg(region: TriangularRegion, tiling: Tiling) -> str:
    d = region.d
    body = _grid(region, "#ffffff")
    for lz in tiling.sorted():
        body.append(_polygon(d, _lozenge_outline(lz), LOZENGE_FILL[lz.kind], "#000000", 1.0))
    return _svg(d, body)


def matching_svg(region: TriangularRegion, tiling: Tiling) -> str:
    d = region.d
    body = _grid(region, "#ffffff")
    for lz in tiling.sorted():
        p, q = _centre(d, "down", lz.down), _centre(d, "up", lz.up)
        body.append(f'<line x1="{p[0]:.2f}" y1="{p[1]:.2f}" x2="{q[0]:.2f}" y2="{q[1]:.2f}" stroke="#d62728" stroke-width="2"/>')
    for kind, m in region.triangles():
        p = _centre(d, kind, m)
        fill = "#ffffff" if kind == "up" else "#000000"
        body.append(f'<circle cx="{p[0]:.2f}" cy="{p[1]:.2f}" r="3" fill="{fill}" stroke="#000000"/>')
    return _svg(d, body)


def _lattice_xy(d: int, label: Monomial) -> tuple[float, float]:
    # midpoint of the upper-left edge of the up-triangle ``label``
    p = _xy(d, label * (0, 1, 0))
    q = _xy(d, label * (1, 0, 0))
    return (p[0] + q[0]) / 2, (p[1] + q[1]) / 2


def paths_svg(region: TriangularRegion, tiling: Tiling) -> str:
    d = region.d
    body = _grid(region, "#ffffff")
    for lz in tiling.sorted():
        body.append(_polygon(d, _lozenge_outline(lz), "none", "#808080", 1.0))
    family = tiling_to_paths(region, tiling)
    for path in family.paths:
        labels = [Monomial(a, d - 1 - u, u - a) for u, a in path]
        pts = " ".join(_fmt(_lattice_xy(d, m)) for m in labels)
        body.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="2.5"/>')
    starts, ends = lattice_points(region)
    for pt, colour in [(p, "#2ca02c") for p in starts] + [(p, "#d62728") for p in ends]:
        x, y = _lattice_xy(d, pt.label)
        body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="{colour}"/>')
    return _svg(d, body)


def _ascii_rows(region: TriangularRegion, cell) -> str:
    d = region.d
    lines = []
    for a in range(d - 1, -1, -1):
        chars = [" " * a]
        for c in range(d - a):
            chars.append(cell("up", Monomial(a, d - 1 - a - c, c)))
            if c < d - 1 - a:
                chars.append(cell("down", Monomial(a, d - 2 - a - c, c)))
        lines.append("".join(chars).rstrip())
    return "\n".join(lines) + "\n"


def region_ascii(region: TriangularRegion) -> str:
    """``A`` present up-triangle, ``V`` present down-triangle, ``.`` removed."""

    def cell(kind, m):
        if kind == "up":
            return "A" if m in region.up else "."
        return "V" if m in region.down else "."

    return _ascii_rows(region, cell)


def tiling_ascii(region: TriangularRegion, tiling: Tiling) -> str:
    """Each triangle shows the kind (x, y or z) of its lozenge."""
    kind_of = {}
    for lz in tiling.lozenges:
        kind_of[("up", lz.up)] = lz.kind
        kind_of[("down", lz.down)] = lz.kind
    return _ascii_rows(region, lambda kind, m: kind_of.get((kind, m), "."))


def paths_ascii(region: TriangularRegion, tiling: Tiling) -> str:
    family = tiling_to_paths(region, tiling)
    lines = [tiling_ascii(region, tiling).rstrip("\n")]
    for i, path in enumerate(family.paths):
        steps = " ".join(f"({u},{v})" for u, v in path)
        lines.append(f"A{i + 1} -> E{family.permutation[i] + 1}: {steps}")
    return "\n".join(lines) + "\n"
