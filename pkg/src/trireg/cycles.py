"""Lozenge cycles, twists, difference cycles, E-counts, floating punctures and shadows."""

from __future__ import annotations

from dataclasses import dataclass

from trireg.core import (
    Lozenge,
    Monomial,
    Puncture,
    TriangularRegion,
    covering_puncture,
    monomials_of_degree,
    overlap_components,
    relation,
)
from trireg.geometry import Point, down_centroid, midpoint, point_in_polygon, up_centroid
from trireg.matching import Tiling, validate_tiling
from trireg.paths import lattice_points


class InvalidCycleError(ValueError):
    pass


def _adjacent(down: Monomial, up: Monomial) -> bool:
    return up.deg == down.deg + 1 and down.divides(up)


@dataclass(frozen=True)
class LozengeCycle:
    """Lozenges l_1..l_n where the down-triangle of l_i touches the up-triangle of l_{i+1}."""

    lozenges: tuple[Lozenge, ...]

    def __post_init__(self):
        lz = self.lozenges
        if len(lz) < 3:
            raise InvalidCycleError("a lozenge cycle has at least three lozenges")
        if len(set(lz)) != len(lz) or len({l.down for l in lz}) != len(lz) or len({l.up for l in lz}) != len(lz):
            raise InvalidCycleError("cycle lozenges must be distinct and disjoint")
        for i, l in enumerate(lz):
            if not l.is_valid():
                raise InvalidCycleError(f"{l} is not a lozenge")
            if not _adjacent(l.down, lz[(i + 1) % len(lz)].up):
                raise InvalidCycleError(f"{l} is not followed by an adjacent lozenge")

    def __len__(self) -> int:
        return len(self.lozenges)

    def canonical(self) -> "LozengeCycle":
        """Rotated to start at the grevlex-least lozenge."""
        lz = self.lozenges
        i = min(range(len(lz)), key=lambda k: lz[k].sort_key())
        return LozengeCycle(lz[i:] + lz[:i])

    def polygon(self) -> list[Point]:
        """Closed curve through the centres of up(l_1), down(l_1), up(l_2), ..."""
        pts: list[Point] = []
        for l in self.lozenges:
            pts.append(up_centroid(l.up))
            pts.append(down_centroid(l.down))
        return pts

    def to_json(self) -> list[list[str]]:
        return [[str(l.down), str(l.up)] for l in self.lozenges]


def twist(region: TriangularRegion, tiling: Tiling, cycle: LozengeCycle) -> Tiling:
    """Re-pair down(l_i) with up(l_{i+1}) around the cycle."""
    missing = [l for l in cycle.lozenges if l not in tiling.lozenges]
    if missing:
        raise InvalidCycleError(f"{missing[0]} is not a lozenge of the tiling")
    lz = cycle.lozenges
    n = len(lz)
    new = (tiling.lozenges - set(lz)) | {Lozenge(lz[i].down, lz[(i + 1) % n].up) for i in range(n)}
    out = Tiling(frozenset(new))
    validate_tiling(region, out)
    return out


def twisted_cycle(cycle: LozengeCycle) -> LozengeCycle:
    """The cycle in the twisted tiling whose twist restores the original."""
    lz = cycle.lozenges
    n = len(lz)
    new = [Lozenge(lz[i].down, lz[(i + 1) % n].up) for i in range(n)]
    return LozengeCycle(tuple(reversed(new)))


def difference_cycles(region: TriangularRegion, first: Tiling, second: Tiling) -> list[LozengeCycle]:
    """Cycles of first whose twists turn first into second, canonicalised and sorted."""
    p1, p2 = first.partner, second.partner
    seen: set[Monomial] = set()
    out = []
    for start in sorted(region.down):
        if start in seen or p1[start] == p2[start]:
            continue
        lozenges = []
        b = start
        while b not in seen:
            seen.add(b)
            lozenges.append(Lozenge(b, p1[b]))
            b = first.partner_of_up[p2[b]]
        out.append(LozengeCycle(tuple(lozenges)).canonical())
    out.sort(key=lambda c: c.lozenges[0].sort_key())
    return out


def _puncture_point(p: Puncture) -> Point:
    return up_centroid(p.up_triangles()[0])


def is_inside(cycle: LozengeCycle, p: Puncture) -> bool:
    return point_in_polygon(_puncture_point(p), cycle.polygon())


def enclosed_units(region: TriangularRegion, cycle: LozengeCycle) -> list[Puncture]:
    """Punctures and covering regions of overlapping punctures inside the cycle."""
    poly = cycle.polygon()
    out = []
    for group in overlap_components(region):
        unit = covering_puncture(group, region.d) if len(group) > 1 else group[0]
        if point_in_polygon(_puncture_point(group[0]), poly):
            out.append(unit)
    return out


def e_count(region: TriangularRegion, cycle: LozengeCycle) -> int:
    """Total side length of the punctures (overlapping ones by covering region) inside."""
    return sum(p.side for p in enclosed_units(region, cycle))


def e_points_inside(region: TriangularRegion, cycle: LozengeCycle) -> int:
    """Number of lattice end points E_j inside the cycle."""
    _, ends = lattice_points(region)
    poly = cycle.polygon()
    count = 0
    for e in ends:
        m = e.label
        # the E vertex sits on the upper-left edge of the (absent) up-triangle m
        if point_in_polygon(midpoint(m.shift(0, 1, 0), m.shift(1, 0, 0)), poly):
            count += 1
    return count


def touches_boundary(p: Puncture) -> bool:
    return 0 in p.generator


def floating_punctures(region: TriangularRegion) -> tuple[list[Puncture], list[Puncture]]:
    """(floating, non-floating), each in the region's puncture order."""
    punctures = region.punctures
    fixed = {p for p in punctures if touches_boundary(p)}
    changed = True
    while changed:
        changed = False
        for p in punctures:
            if p in fixed:
                continue
            if any(relation(p, q, region.d) != "disjoint" for q in fixed):
                fixed.add(p)
                changed = True
    return [p for p in punctures if p not in fixed], [p for p in punctures if p in fixed]


def shadow(region: TriangularRegion, p: Puncture) -> tuple[frozenset[Monomial], frozenset[Monomial]]:
    """(up, down) triangles of T below p and right of its upper-right edge line."""
    g = p.generator

    def inside(m: Monomial) -> bool:
        return m.a < g.a and m.b < g.b

    return (
        frozenset(m for m in region.up if inside(m)),
        frozenset(m for m in region.down if inside(m)),
    )


def has_puncture_in_shadow(region: TriangularRegion, p: Puncture) -> bool:
    """Whether any removed triangle lies in the shadow parallelogram of p."""
    g = p.generator
    d = region.d
    for m in monomials_of_degree(d - 1):
        if m.a < g.a and m.b < g.b and m not in region.up:
            return True
    for m in monomials_of_degree(d - 2):
        if m.a < g.a and m.b < g.b and m not in region.down:
            return True
    return False


def floating_units(region: TriangularRegion) -> list[Puncture]:
    """Floating punctures, with overlapping groups replaced by their covering region."""
    floating, _ = floating_punctures(region)
    fl = set(floating)
    out = []
    for group in overlap_components(region):
        if group[0] in fl:
            out.append(covering_puncture(group, region.d) if len(group) > 1 else group[0])
    return out


def same_sign_guarantee(region: TriangularRegion) -> str:
    """``even-floating``, ``shadow-criterion`` or ``none``."""
    units = floating_units(region)
    if all(u.side % 2 == 0 for u in units):
        return "even-floating"
    if all(u.side % 2 == 0 for u in units if has_puncture_in_shadow(region, u)):
        return "shadow-criterion"
    return "none"
