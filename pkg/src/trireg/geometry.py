"""Exact plane coordinates for vertices, triangle centres and edge midpoints.

Points are integer pairs scaled by 12 so that centroids and edge midpoints stay
integral: the vertex ``x^a y^b z^c`` is at ``(12c + 6a, 12a)``.  Horizontal is
parallel to the bottom edge; vertical units are height / (sqrt(3)/2), which is
an affine image of the true picture and so preserves insideness.
"""

from __future__ import annotations

from typing import Sequence

from trireg.core import Monomial

Point = tuple[int, int]


def vertex_point(v: Monomial) -> Point:
    return (12 * v.c + 6 * v.a, 12 * v.a)


def up_centroid(m: Monomial) -> Point:
    return (12 * m.c + 6 * m.a + 6, 12 * m.a + 4)


def down_centroid(m: Monomial) -> Point:
    return (12 * m.c + 6 * m.a + 12, 12 * m.a + 8)


def centroid(kind: str, m: Monomial) -> Point:
    return up_centroid(m) if kind == "up" else down_centroid(m)


def midpoint(u: Monomial, v: Monomial) -> Point:
    pu, pv = vertex_point(u), vertex_point(v)
    return ((pu[0] + pv[0]) // 2, (pu[1] + pv[1]) // 2)


def point_in_polygon(pt: Point, poly: Sequence[Point]) -> bool:
    """Even-odd rule with exact integer arithmetic; ``pt`` must not lie on the boundary."""
    x, y = pt
    inside = False
    n = len(poly)
    for i in range(n):
        xi, yi = poly[i]
        xj, yj = poly[i - 1]
        if (yi > y) != (yj > y):
            lhs = (x - xi) * (yj - yi)
            rhs = (y - yi) * (xj - xi)
            if (lhs < rhs) if yj > yi else (lhs > rhs):
                inside = not inside
    return inside


def edge_triangles(u: Monomial, v: Monomial) -> tuple[Monomial, Monomial | None]:
    """The up-triangle and (if inside the ambient triangle) the down-triangle on edge ``uv``."""
    up = u.gcd(v)
    q = u.div(up)
    r = v.div(up)
    third = tuple(1 - q[i] - r[i] for i in range(3))
    down = None
    if all(up[i] - third[i] >= 0 for i in range(3)):
        down = Monomial(*(up[i] - third[i] for i in range(3)))
    return up, down


def triangle_vertices(kind: str, m: Monomial) -> tuple[Monomial, Monomial, Monomial]:
    """Vertices in counter-clockwise order."""
    if kind == "up":
        return (m.shift(0, 1, 0), m.shift(0, 0, 1), m.shift(1, 0, 0))
    return (m.shift(1, 1, 0), m.shift(0, 1, 1), m.shift(1, 0, 1))
