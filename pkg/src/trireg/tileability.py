"""Tileability via down-heavy monomial subregions, and the canonical tiling."""

from __future__ import annotations

from trireg.core import (
    Lozenge,
    Monomial,
    TriangularRegion,
    build_region,
    monomials_of_degree,
    puncture_relations,
    region_from_triangles,
    restrict,
    saturate,
)
from trireg.matching import NotTileableError, Tiling, maximum_matching

X = (1, 0, 0)


def subregion_counts(region: TriangularRegion, m: Monomial) -> tuple[int, int]:
    """(up, down) counts of the monomial subregion at ``m``."""
    return (
        sum(1 for u in region.up if m.divides(u)),
        sum(1 for v in region.down if m.divides(v)),
    )


def _candidates(d: int):
    for n in range(d - 1, -1, -1):
        yield from monomials_of_degree(n)


def heavy_subregion(region: TriangularRegion) -> Monomial | None:
    """The grevlex-largest m of degree < d whose subregion has more down- than up-triangles."""
    for m in _candidates(region.d):
        n_up, n_down = subregion_counts(region, m)
        if n_down > n_up:
            return m
    return None


def is_tileable(region: TriangularRegion) -> bool:
    if not region.is_balanced:
        return False
    return heavy_subregion(region) is None


def _balanced_proper_subregion(region: TriangularRegion) -> Monomial | None:
    for m in _candidates(region.d):
        if m.deg == 0:
            continue
        n_up, n_down = subregion_counts(region, m)
        if n_up and n_up == n_down and (n_up, n_down) != (len(region.up), len(region.down)):
            return m
    return None


def canonical_tiling(region: TriangularRegion) -> Tiling:
    """A deterministic tiling following the row-by-row inductive construction.

    Balanced proper monomial subregions are split off and tiled on their own.
    Otherwise an up-down lozenge goes right of every puncture on the bottom row
    except the rightmost, the rest of the row is tiled by neighbouring pairs
    and the upper rows are handled recursively.
    """
    if not region.is_balanced:
        raise NotTileableError(f"{region} is not balanced")
    witness = heavy_subregion(region)
    if witness is not None:
        raise NotTileableError(f"{region} has a down-heavy subregion at {witness}")
    return Tiling(frozenset(_tile(region)))


def _tile(region: TriangularRegion) -> list[Lozenge]:
    if region.is_empty:
        return []
    region = saturate(region)
    m = _balanced_proper_subregion(region)
    if m is not None:
        inner = [Lozenge(lz.down * m, lz.up * m) for lz in _tile(restrict(region, m))]
        outer = _tile(build_region(region.d, region.gens + (m,)))
        return inner + outer
    if any(
        rel.relation != "disjoint" and rel.covering.deg == 0 for rel in puncture_relations(region)
    ):
        # Two meeting punctures whose covering region is all of T: nothing else
        # is removed and the tiling is unique, so any perfect matching is it.
        match = maximum_matching(region)
        if len(match) != len(region.down):
            raise NotTileableError(f"{region} cannot be tiled")
        return [Lozenge(b, w) for b, w in match.items()]
    return _tile_bottom_row(region)


def _tile_bottom_row(region: TriangularRegion) -> list[Lozenge]:
    d = region.d
    on_row = [p for p in region.punctures if p.generator.a == 0]
    if not on_row:
        raise NotTileableError(f"bottom row of {region} meets no puncture")
    rightmost = min(on_row, key=lambda p: p.generator.b)
    placed: list[Lozenge] = []
    for p in on_row:
        if p is rightmost:
            continue
        g = p.generator
        down = Monomial(0, g.b - 1, g.c + p.side - 1)
        lz = Lozenge(down, down * X)
        if down not in region.down or lz.up not in region.up:
            raise NotTileableError(f"no room for a lozenge right of {p}")
        placed.append(lz)
    used_down = {lz.down for lz in placed}
    used_up = {lz.up for lz in placed}

    # bottom row, left to right: up c=0, down c=0, up c=1, ...
    row: list[tuple[str, Monomial] | None] = []
    for c in range(d):
        u = Monomial(0, d - 1 - c, c)
        row.append(("up", u) if u in region.up else None)
        if c < d - 1:
            v = Monomial(0, d - 2 - c, c)
            row.append(("down", v) if v in region.down and v not in used_down else None)
    segment: list[tuple[str, Monomial]] = []
    for cell in row + [None]:
        if cell is not None:
            segment.append(cell)
            continue
        if len(segment) % 2:
            raise NotTileableError(f"bottom row of {region} cannot be tiled")
        for i in range(0, len(segment), 2):
            (k0, t0), (_, t1) = segment[i], segment[i + 1]
            placed.append(Lozenge(t1, t0) if k0 == "up" else Lozenge(t0, t1))
        segment = []

    if d <= 1:
        return placed
    upper_up = [u.div(Monomial(*X)) for u in region.up if u.a > 0 and u not in used_up]
    upper_down = [v.div(Monomial(*X)) for v in region.down if v.a > 0]
    upper = region_from_triangles(d - 1, upper_up, upper_down)
    placed += [Lozenge(lz.down * X, lz.up * X) for lz in _tile(upper)]
    return placed
