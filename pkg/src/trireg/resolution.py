"""Resolution of a puncture relative to a tiling.

The side-d triangle is cut along three splitting chains running from the
puncture's corners to the corners of the triangle.  The three outer parts are
moved apart inside a triangle of side d + 2k, the chains widen into corridors
of width k and the puncture becomes a hexagon of side k; every new piece has
a forced tiling.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

from trireg.core import (
    STEPS,
    Lozenge,
    Monomial,
    Puncture,
    TriangularRegion,
    build_region,
    overlap_components,
    region_from_triangles,
)
from trireg.cycles import LozengeCycle
from trireg.geometry import down_centroid, edge_triangles, point_in_polygon, triangle_vertices, up_centroid, vertex_point
from trireg.matching import Tiling, validate_tiling

Step = tuple[int, int, int]

CHAIN_NAMES = ("lower_left", "lower_right", "top")

# directions as seen by a particle leaving the puncture towards the corner
PREFERRED = {
    "lower_left": ("SW", "W"),
    "lower_right": ("SE", "E"),
    "top": ("NE", "NW"),
}
ACCEPTABLE = {
    "lower_left": ("NW", "SE"),
    "lower_right": ("NE", "SW"),
    "top": ("E", "W"),
}

# (side the chain is drawn on, side it is shifted to, shift direction)
CORRIDORS = {
    "lower_left": ("left", "bottom", "SE"),
    "top": ("left", "right", "E"),
    "lower_right": ("right", "bottom", "SW"),
}


class ResolutionError(ValueError):
    pass


class NoChainError(ResolutionError):
    """No admissible splitting chains exist under the constraints."""


class DegenerateCrossingError(ResolutionError):
    """A cycle crosses a chain edge that is parallel to its corridor."""


def _offset(m: Monomial, step: Step, times: int = 1) -> Monomial:
    return Monomial(m.a + times * step[0], m.b + times * step[1], m.c + times * step[2])


def _direction(u: Monomial, v: Monomial) -> str:
    delta = (v.a - u.a, v.b - u.b, v.c - u.c)
    for name, step in STEPS.items():
        if step == delta:
            return name
    raise ResolutionError(f"{u} and {v} are not adjacent vertices")


def _parallel(a: str, b: str) -> bool:
    sa, sb = STEPS[a], STEPS[b]
    return sa == sb or sa == tuple(-t for t in sb)


@dataclass(frozen=True)
class SplittingChains:
    """Vertex sequences from the puncture corners A, B, C to the corners O, P, Q."""

    lower_left: tuple[Monomial, ...]
    lower_right: tuple[Monomial, ...]
    top: tuple[Monomial, ...]

    def chain(self, name: str) -> tuple[Monomial, ...]:
        return getattr(self, name)

    def edges(self) -> dict[frozenset[Monomial], str]:
        out = {}
        for name in CHAIN_NAMES:
            ch = self.chain(name)
            for u, v in zip(ch, ch[1:]):
                out[frozenset((u, v))] = name
        return out

    def directions(self, name: str) -> list[str]:
        ch = self.chain(name)
        return [_direction(u, v) for u, v in zip(ch, ch[1:])]

    def to_json(self) -> dict:
        return {name: [str(v) for v in self.chain(name)] for name in CHAIN_NAMES}


def _edge_allowed(region: TriangularRegion, tiling: Tiling, u: Monomial, v: Monomial) -> bool:
    up, down = edge_triangles(u, v)
    if down is not None and tiling.partner.get(down) == up:
        return False  # diagonal of a lozenge
    if up in region.up or (down is not None and down in region.down):
        return True
    # only edges on the outer boundary may have no present triangle
    return down is None


def _edge_interior(region: TriangularRegion, u: Monomial, v: Monomial) -> bool:
    up, down = edge_triangles(u, v)
    return up in region.up and down is not None and down in region.down


def _corners(d: int) -> dict[str, Monomial]:
    return {"lower_left": Monomial(0, d, 0), "lower_right": Monomial(0, 0, d), "top": Monomial(d, 0, 0)}


def _starts(p: Puncture) -> dict[str, Monomial]:
    a, b, c = p.corners()
    return {"lower_left": a, "lower_right": b, "top": c}


def _find_chain(
    region: TriangularRegion,
    tiling: Tiling,
    name: str,
    start: Monomial,
    goal: Monomial,
    blocked: set[Monomial],
    rng: random.Random | None,
) -> tuple[Monomial, ...] | None:
    moves = [(dname, STEPS[dname], False) for dname in PREFERRED[name]]
    moves += [(dname, STEPS[dname], True) for dname in ACCEPTABLE[name]]
    best: dict[Monomial, tuple] = {start: (0, 0, 0)}
    prev: dict[Monomial, Monomial] = {}
    heap = [((0, 0, 0), 0, start)]
    counter = 1
    while heap:
        cost, _, u = heapq.heappop(heap)
        if cost != best.get(u):
            continue
        if u == goal:
            path = [u]
            while path[-1] != start:
                path.append(prev[path[-1]])
            return tuple(reversed(path))
        for _, step, acceptable in moves:
            v = _offset(u, step)
            if min(v) < 0 or v in blocked:
                continue
            if not _edge_allowed(region, tiling, u, v):
                continue
            interior_acc = int(acceptable and _edge_interior(region, u, v))
            weight = rng.randint(1, 8) if rng is not None else 1
            new = (cost[0] + interior_acc, cost[1] + int(acceptable), cost[2] + weight)
            if v not in best or new < best[v]:
                best[v] = new
                prev[v] = u
                heapq.heappush(heap, (new, counter, v))
                counter += 1
    return None


def splitting_chains(
    region: TriangularRegion,
    tiling: Tiling,
    puncture: Puncture,
    rng: random.Random | None = None,
) -> SplittingChains:
    """Admissible splitting chains, preferring preferred directions.

    Chains are vertex-disjoint shortest paths for the cost (acceptable edges
    between two present triangles, acceptable edges, length).  With ``rng``
    the length term is replaced by random edge weights, giving a random
    admissible choice.
    """
    if puncture.is_corner:
        raise ResolutionError("corner punctures are not resolved")
    d = region.d
    starts = _starts(puncture)
    goals = _corners(d)
    own = puncture.vertices(d)
    for order in permutations(CHAIN_NAMES):
        built: dict[str, tuple[Monomial, ...]] = {}
        for name in order:
            blocked = set(own) - {starts[name]}
            blocked |= {goals[other] for other in CHAIN_NAMES if other != name}
            for ch in built.values():
                blocked |= set(ch)
            chain = _find_chain(region, tiling, name, starts[name], goals[name], blocked, rng)
            if chain is None:
                break
            built[name] = chain
        else:
            return SplittingChains(built["lower_left"], built["lower_right"], built["top"])
    raise NoChainError(f"no admissible splitting chains for {puncture} in {region}")


def _triangle_of(vertices) -> tuple[str, Monomial] | None:
    vs = set(vertices)
    if len(vs) != 3:
        return None
    it = iter(vs)
    g = next(it)
    l = g
    for v in it:
        g, l = g.gcd(v), l.lcm(v)
    deg = next(iter(vs)).deg
    if g.deg == deg - 1 and {g * (1, 0, 0), g * (0, 1, 0), g * (0, 0, 1)} == vs:
        return "up", g
    if l.deg == deg + 1 and min(l) >= 1:
        m = Monomial(l.a - 1, l.b - 1, l.c - 1)
        if {m * (1, 1, 0), m * (0, 1, 1), m * (1, 0, 1)} == vs:
            return "down", m
    return None


def unit_rhombus(u: Monomial, v: Monomial, step: Step) -> Lozenge:
    """The lozenge swept by moving edge ``uv`` one unit along ``step``."""
    corners = [u, v, _offset(u, step), _offset(v, step)]
    up = down = None
    for skip in range(4):
        tri = _triangle_of(corners[:skip] + corners[skip + 1 :])
        if tri is None:
            continue
        if tri[0] == "up":
            up = tri[1]
        else:
            down = tri[1]
    if up is None or down is None:
        raise ResolutionError(f"edge {u}{v} swept along {step} is not a lozenge")
    return Lozenge(down, up)


def strip(u: Monomial, v: Monomial, step: Step, k: int) -> list[Lozenge]:
    """k lozenges swept by edge ``uv`` along ``step``, nearest first."""
    return [unit_rhombus(_offset(u, step, i), _offset(v, step, i), step) for i in range(k)]


@dataclass(frozen=True)
class Resolution:
    source: TriangularRegion
    base: TriangularRegion
    base_tiling: Tiling
    puncture: Puncture
    chains: SplittingChains
    region: TriangularRegion
    tiling: Tiling
    side: dict = field(repr=False)

    @property
    def k(self) -> int:
        return self.puncture.side

    @cached_property
    def multipliers(self) -> dict[str, Step]:
        k = self.k
        return {"left": (k, k, 0), "right": (k, 0, k), "bottom": (0, k, k)}

    def map_lozenge(self, lz: Lozenge) -> Lozenge:
        mult = self.multipliers[self.side[("up", lz.up)]]
        return Lozenge(lz.down * mult, lz.up * mult)

    def crossings(self, cycle: LozengeCycle) -> list[tuple[int, str]]:
        """(position, chain) for each chain edge shared by l_i and l_{i+1}."""
        chain_edges = self.chains.edges()
        out = []
        lz = cycle.lozenges
        for i in range(len(lz)):
            edge = _shared_edge(lz[i].down, lz[(i + 1) % len(lz)].up)
            name = chain_edges.get(edge)
            if name is not None:
                out.append((i, name))
        return out

    def map_cycle(self, cycle: LozengeCycle) -> tuple[LozengeCycle, int]:
        """Image of ``cycle`` in the resolved tiling and the number of chain crossings."""
        lz = cycle.lozenges
        crossing = dict(self.crossings(cycle))
        out: list[Lozenge] = []
        for i, l in enumerate(lz):
            out.append(self.map_lozenge(l))
            name = crossing.get(i)
            if name is None:
                continue
            near, far, shift = CORRIDORS[name]
            u, v = sorted(_shared_edge(l.down, lz[(i + 1) % len(lz)].up))
            if _parallel(_direction(u, v), shift):
                raise DegenerateCrossingError(f"cycle crosses {name} chain along its corridor at {u}{v}")
            m = self.multipliers[near]
            pieces = strip(u * m, v * m, STEPS[shift], self.k)
            if self.side[("down", l.down)] != near:
                pieces.reverse()
            out.extend(pieces)
        return LozengeCycle(tuple(out)), len(crossing)

    def to_json(self) -> dict:
        return {
            "puncture": str(self.puncture.generator),
            "side": self.k,
            "chains": self.chains.to_json(),
            "region": self.region.spec(),
            "tiling": self.tiling.to_json(),
        }


def _shared_edge(down: Monomial, up: Monomial) -> frozenset[Monomial]:
    return frozenset(set(triangle_vertices("down", down)) & set(triangle_vertices("up", up)))


def resolution_base(
    region: TriangularRegion, tiling: Tiling, puncture: Puncture
) -> tuple[TriangularRegion, Tiling]:
    """The region and tiling in which ``puncture`` is a non-overlapped puncture.

    A covering region of overlapping punctures is resolved in T minus the
    covering region, with the forced lozenges inside it dropped.
    """
    if puncture.is_corner:
        raise ResolutionError("corner punctures are not resolved")
    d = region.d
    for group in overlap_components(region):
        gens = [p.generator for p in group]
        if len(group) == 1:
            if group[0] == puncture:
                return region, tiling
            continue
        if puncture in group:
            raise ResolutionError(f"{puncture} is overlapped; resolve the covering region instead")
        g = gens[0]
        for h in gens[1:]:
            g = g.gcd(h)
        if g == puncture.generator and d - g.deg == puncture.side:
            base = build_region(d, region.gens + (g,))
            kept = Tiling(frozenset(l for l in tiling.lozenges if not g.divides(l.up)))
            validate_tiling(base, kept)
            return base, kept
    raise ResolutionError(f"{puncture} is neither a puncture nor a covering region of {region}")


def _polygon(*chains) -> list:
    pts = []
    for ch in chains:
        pts.extend(vertex_point(v) for v in ch)
    return pts


def resolve(
    region: TriangularRegion,
    tiling: Tiling,
    puncture: Puncture,
    chains: SplittingChains | None = None,
    rng: random.Random | None = None,
) -> Resolution:
    """Resolve ``puncture`` of ``region`` relative to ``tiling``."""
    validate_tiling(region, tiling)
    base, base_tiling = resolution_base(region, tiling, puncture)
    if chains is None:
        chains = splitting_chains(base, base_tiling, puncture, rng)
    d, k = base.d, puncture.side
    a, b, c = puncture.corners()

    ll = chains.lower_left  # A .. O
    lr = chains.lower_right  # B .. P
    tp = chains.top  # C .. Q
    polygons = {
        "left": _polygon(ll[::-1], tp),
        "right": _polygon(lr[::-1], tp),
        "bottom": _polygon(ll[::-1], lr),
    }
    side: dict[tuple[str, Monomial], str] = {}
    for kind, m in base.triangles():
        pt = up_centroid(m) if kind == "up" else down_centroid(m)
        hits = [name for name, poly in polygons.items() if point_in_polygon(pt, poly)]
        if len(hits) != 1:
            raise ResolutionError(f"{kind}-triangle {m} lies in {len(hits)} parts of the split")
        side[(kind, m)] = hits[0]

    mult = {"left": (k, k, 0), "right": (k, 0, k), "bottom": (0, k, k)}
    placed: list[Lozenge] = []
    for lz in base_tiling.lozenges:
        s_up, s_down = side[("up", lz.up)], side[("down", lz.down)]
        if s_up != s_down:
            raise ResolutionError(f"{lz} is cut by a splitting chain")
        placed.append(Lozenge(lz.down * mult[s_up], lz.up * mult[s_up]))

    for name in CHAIN_NAMES:
        near, _, shift = CORRIDORS[name]
        ch = chains.chain(name)
        for u, v in zip(ch, ch[1:]):
            if _parallel(_direction(u, v), shift):
                continue
            placed += strip(u * mult[near], v * mult[near], STEPS[shift], k)

    # hexagon around the centre g x^k y^k z^k
    a_l, c_l = a * mult["left"], c * mult["left"]
    centre = Monomial(puncture.generator.a + k, puncture.generator.b + k, puncture.generator.c + k)
    for start, direction, shift in ((a_l, "NE", "SE"), (centre, "NW", "E"), (centre, "SW", "E")):
        u = start
        for _ in range(k):
            v = _offset(u, STEPS[direction])
            placed += strip(u, v, STEPS[shift], k)
            u = v
    assert c_l == _offset(a_l, STEPS["NE"], k)

    tiling_new = Tiling(frozenset(placed))
    if len(tiling_new) != len(placed):
        raise ResolutionError("resolution placed a lozenge twice")
    ups = [l.up for l in placed]
    downs = [l.down for l in placed]
    if len(set(ups)) != len(ups) or len(set(downs)) != len(downs):
        raise ResolutionError("resolution lozenges overlap")
    new_region = region_from_triangles(d + 2 * k, ups, downs)
    validate_tiling(new_region, tiling_new)
    return Resolution(region, base, base_tiling, puncture, chains, new_region, tiling_new, side)


def twist_adjusted_chains(
    region: TriangularRegion, tiling: Tiling, chains: SplittingChains, cycle: LozengeCycle
) -> SplittingChains:
    """Chains for the twisted tiling: each edge crossing the cycle becomes an
    acceptable step followed by a preferred one with the same end points."""
    crossing = set()
    lz = cycle.lozenges
    for i in range(len(lz)):
        crossing.add(_shared_edge(lz[i].down, lz[(i + 1) % len(lz)].up))
    out = {}
    for name in CHAIN_NAMES:
        ch = chains.chain(name)
        new = [ch[0]]
        for u, v in zip(ch, ch[1:]):
            if frozenset((u, v)) in crossing:
                total = STEPS[_direction(u, v)]
                for acc in ACCEPTABLE[name]:
                    rest = tuple(total[i] - STEPS[acc][i] for i in range(3))
                    if any(STEPS[p] == rest for p in PREFERRED[name]):
                        new.append(_offset(u, STEPS[acc]))
                        break
                else:
                    raise ResolutionError(f"edge {u}{v} of the {name} chain cannot be adjusted")
            new.append(v)
        out[name] = tuple(new)
    return SplittingChains(out["lower_left"], out["lower_right"], out["top"])


def resolution_order(region: TriangularRegion) -> list[Puncture]:
    """Floating units ordered by the smallest up-triangle of the side-d triangle they cover."""
    from trireg.cycles import floating_units

    return sorted(floating_units(region), key=lambda p: min(p.up_triangles()))


def resolve_floating(region: TriangularRegion, tiling: Tiling, rng: random.Random | None = None):
    """Resolve floating punctures one at a time until none is left.

    Returns the list of resolutions performed, in order.
    """
    steps = []
    while True:
        order = resolution_order(region)
        if not order:
            return steps
        res = resolve(region, tiling, order[0], rng=rng)
        steps.append(res)
        region, tiling = res.region, res.tiling
