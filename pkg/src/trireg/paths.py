"""The lattice L(T), lattice-path matrix N(T) and the lattice-path sign of a tiling.

A vertex of L(T) is named by the up-triangle whose upper-left edge carries it
(a degree d-1 monomial ``m``); that edge is shared with the down-triangle
``m / z`` when ``z`` divides ``m``.  Orthogonalised coordinates are
``(d - 1 - b, a)``: East steps increase the first coordinate, Southeast steps
decrease the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

from trireg.core import Monomial, TriangularRegion, monomials_of_degree
from trireg.matching import IntMatrix, Tiling, permutation_sign

Coord = tuple[int, int]


class MalformedTilingError(RuntimeError):
    """Lozenges did not assemble into disjoint start-to-end paths."""


@dataclass(frozen=True)
class LatticePoint:
    label: Monomial
    coords: Coord


def coords(d: int, m: Monomial) -> Coord:
    return (d - 1 - m.b, m.a)


def lattice_point(d: int, m: Monomial) -> LatticePoint:
    return LatticePoint(m, coords(d, m))


def _on_down(region: TriangularRegion, m: Monomial) -> bool:
    return m.c > 0 and m.shift(0, 0, -1) in region.down


def lattice_labels(region: TriangularRegion) -> list[Monomial]:
    """Labels of all vertices of L(T)."""
    return [m for m in monomials_of_degree(region.d - 1) if m in region.up or _on_down(region, m)]


def lattice_points(region: TriangularRegion) -> tuple[list[LatticePoint], list[LatticePoint]]:
    """Start points A (only on an up-triangle) and end points E (only on a down-triangle).

    Both lists ascend in grevlex.
    """
    starts, ends = [], []
    for m in sorted(monomials_of_degree(region.d - 1)):
        on_up = m in region.up
        on_down = _on_down(region, m)
        if on_up and not on_down:
            starts.append(lattice_point(region.d, m))
        elif on_down and not on_up:
            ends.append(lattice_point(region.d, m))
    return starts, ends


def path_count(start: Coord, end: Coord) -> int:
    """Number of East/Southeast lattice paths in Z^2 from ``start`` to ``end``."""
    (u, v), (x, y) = start, end
    if x < u or v < y:
        return 0
    return comb((x - u) + (v - y), x - u)


def path_matrix(region: TriangularRegion) -> IntMatrix:
    """N(T)[i][j] = number of lattice paths from A_i to E_j."""
    starts, ends = lattice_points(region)
    return [[path_count(a.coords, e.coords) for e in ends] for a in starts]


@dataclass(frozen=True)
class PathFamily:
    paths: tuple[tuple[Coord, ...], ...]
    permutation: tuple[int, ...]

    def to_json(self) -> dict:
        return {"paths": [[list(p) for p in path] for path in self.paths], "lambda": list(self.permutation)}


def tiling_to_paths(region: TriangularRegion, tiling: Tiling) -> PathFamily:
    """Connect the two lattice vertices on each x- and y-lozenge and follow the paths."""
    d = region.d
    starts, ends = lattice_points(region)
    end_index = {e.label: j for j, e in enumerate(ends)}
    partner_of_up = tiling.partner_of_up
    paths = []
    perm = []
    visited: set[Monomial] = set()
    steps = 0
    for a in starts:
        m = a.label
        path = [coords(d, m)]
        visited.add(m)
        while m in region.up:
            down = partner_of_up.get(m)
            if down is None:
                raise MalformedTilingError(f"up-triangle {m} is not covered")
            if down.c + 1 == m.c and down.a == m.a:
                raise MalformedTilingError(f"path through {m} enters a z-lozenge")
            m = down.shift(0, 0, 1)
            if m in visited:
                raise MalformedTilingError(f"paths meet at {m}")
            visited.add(m)
            path.append(coords(d, m))
            steps += 1
        if m not in end_index:
            raise MalformedTilingError(f"path from {a.label} stops at {m}, which is not an end point")
        paths.append(tuple(path))
        perm.append(end_index[m])
    carrying = sum(1 for lz in tiling.lozenges if lz.up.c == lz.down.c)
    if steps != carrying or sorted(perm) != list(range(len(ends))):
        raise MalformedTilingError("lozenges do not form a family of disjoint paths")
    return PathFamily(tuple(paths), tuple(perm))


def lpsgn(region: TriangularRegion, tiling: Tiling) -> int:
    """Lattice-path sign of a tiling."""
    return permutation_sign(tiling_to_paths(region, tiling).permutation)


def is_minimal(family: PathFamily) -> bool:
    """True when no East-then-Southeast corner can be flipped without hitting another path."""
    occupied = {p: i for i, path in enumerate(family.paths) for p in path}
    for i, path in enumerate(family.paths):
        for k in range(len(path) - 2):
            p0, p1, p2 = path[k], path[k + 1], path[k + 2]
            east = p1 == (p0[0] + 1, p0[1])
            south = p2 == (p1[0], p1[1] - 1)
            if east and south:
                alt = (p0[0], p0[1] - 1)
                if occupied.get(alt, i) == i:
                    return False
    return True


def nonintersecting_families(
    starts: list[Coord], ends: list[Coord], allowed: set[Coord] | None = None
) -> Iterator[tuple[tuple[Coord, ...], ...]]:
    """Brute-force all vertex-disjoint families of East/Southeast paths.

    Paths connect every start to a distinct end and stay inside ``allowed``
    (all of Z^2 when None).  Yields the families with paths in start order.
    """
    end_set = set(ends)
    n = len(starts)
    used: set[Coord] = set(starts) | set(ends)
    if len(used) != 2 * n:
        return
    current: list[tuple[Coord, ...]] = []

    def walk(i: int, path: list[Coord]) -> Iterator[tuple[tuple[Coord, ...], ...]]:
        u, v = path[-1]
        for nxt in ((u + 1, v), (u, v - 1)):
            if nxt in end_set:
                if nxt in taken_ends:
                    continue
                taken_ends.add(nxt)
                current.append(tuple(path + [nxt]))
                yield from place(i + 1)
                current.pop()
                taken_ends.discard(nxt)
                continue
            if nxt in used or (allowed is not None and nxt not in allowed):
                continue
            if not _can_reach(nxt):
                continue
            used.add(nxt)
            path.append(nxt)
            yield from walk(i, path)
            path.pop()
            used.discard(nxt)

    taken_ends: set[Coord] = set()
    max_u = max((e[0] for e in ends), default=0)
    min_v = min((e[1] for e in ends), default=0)

    def _can_reach(p: Coord) -> bool:
        return any(e not in taken_ends and e[0] >= p[0] and e[1] <= p[1] for e in ends) and p[0] <= max_u and p[1] >= min_v

    def place(i: int) -> Iterator[tuple[tuple[Coord, ...], ...]]:
        if i == n:
            yield tuple(current)
            return
        yield from walk(i, [starts[i]])

    yield from place(0)


def family_permutation(family: tuple[tuple[Coord, ...], ...], ends: list[Coord]) -> tuple[int, ...]:
    index = {e: j for j, e in enumerate(ends)}
    return tuple(index[path[-1]] for path in family)


def signed_family_count(region: TriangularRegion, within_lattice: bool = True) -> tuple[int, int]:
    """(signed, unsigned) number of non-intersecting families from A to E.

    With ``within_lattice`` the paths must stay on L(T); otherwise any point of
    Z^2 may be used, which is the setting of the Lindstrom-Gessel-Viennot lemma.
    """
    starts, ends = lattice_points(region)
    s = [p.coords for p in starts]
    e = [p.coords for p in ends]
    if len(s) != len(e):
        raise ValueError("region is not balanced")
    allowed = {coords(region.d, m) for m in lattice_labels(region)} if within_lattice else None
    signed = unsigned = 0
    for fam in nonintersecting_families(s, e, allowed):
        signed += permutation_sign(family_permutation(fam, e))
        unsigned += 1
    return signed, unsigned
