"""Monomials in x, y, z, triangular regions T_d(I) and puncture geometry.

Every unit triangle of the side-d triangle is identified by a monomial label:
upward triangles carry the degree d-1 monomials, downward triangles the
degree d-2 monomials, and the lattice vertices the degree d monomials.  The
up-triangle ``x^a y^b z^c`` sits ``a`` rows above the bottom edge, ``b`` units
from the upper-right edge and ``c`` units from the upper-left edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple


class ParseError(ValueError):
    """Raised for malformed monomials or region specs; carries a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class Monomial(NamedTuple):
    """Exponent triple of ``x^a y^b z^c``.

    Comparison operators implement the graded reverse-lexicographic order, so
    ``sorted`` returns monomials ascending in grevlex.
    """

    a: int
    b: int
    c: int

    @property
    def deg(self) -> int:
        return self.a + self.b + self.c

    def key(self) -> tuple[int, int, int]:
        return (self.a + self.b + self.c, -self.c, -self.b)

    def __lt__(self, other):  # type: ignore[override]
        return self.key() < other.key()

    def __le__(self, other):  # type: ignore[override]
        return self.key() <= other.key()

    def __gt__(self, other):  # type: ignore[override]
        return self.key() > other.key()

    def __ge__(self, other):  # type: ignore[override]
        return self.key() >= other.key()

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(self.a + other[0], self.b + other[1], self.c + other[2])

    def divides(self, other: "Monomial") -> bool:
        return self.a <= other[0] and self.b <= other[1] and self.c <= other[2]

    def div(self, other: "Monomial") -> "Monomial":
        """Exact quotient ``self / other``; raises if ``other`` does not divide."""
        q = Monomial(self.a - other[0], self.b - other[1], self.c - other[2])
        if min(q) < 0:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def shift(self, da: int, db: int, dc: int) -> "Monomial":
        return Monomial(self.a + da, self.b + db, self.c + dc)

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(min(self.a, other[0]), min(self.b, other[1]), min(self.c, other[2]))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(self.a, other[0]), max(self.b, other[1]), max(self.c, other[2]))

    def colon(self, other: "Monomial") -> "Monomial":
        """Generator of the colon ideal ``(self) : other``."""
        return Monomial(max(self.a - other[0], 0), max(self.b - other[1], 0), max(self.c - other[2], 0))

    def rotate(self, k: int = 1) -> "Monomial":
        m = self
        for _ in range(k % 3):
            m = Monomial(m.c, m.a, m.b)
        return m

    def is_pure_power(self) -> bool:
        return sum(1 for e in self if e) == 1

    def __str__(self) -> str:
        parts = []
        for var, e in zip("xyz", self):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append(f"{var}^{e}")
        return "".join(parts) or "1"

    def __repr__(self) -> str:
        return f"Monomial({self})"


ONE = Monomial(0, 0, 0)
X = Monomial(1, 0, 0)
Y = Monomial(0, 1, 0)
Z = Monomial(0, 0, 1)
VARIABLES = (X, Y, Z)

_MONO_RE = re.compile(r"([xyz])(?:\^(\d+))?")


def parse_monomial(text: str, line: int = 1, column: int = 1) -> Monomial:
    """Parse ``x^a y^b z^c`` (variables in order, whitespace ignored) or ``1``."""
    s = "".join(text.split())
    if s == "1":
        return ONE
    if not s:
        raise ParseError("empty monomial", line, column)
    exps = [0, 0, 0]
    pos = 0
    last = -1
    while pos < len(s):
        match = _MONO_RE.match(s, pos)
        if match is None:
            raise ParseError(f"unexpected character {s[pos]!r} in monomial {text!r}", line, column + pos)
        idx = "xyz".index(match.group(1))
        if idx <= last:
            raise ParseError(f"variables out of order in monomial {text!r}", line, column + pos)
        last = idx
        exps[idx] = int(match.group(2)) if match.group(2) is not None else 1
        pos = match.end()
    return Monomial(*exps)


def grevlex_compare(m1: Monomial, m2: Monomial) -> int:
    """Return -1, 0 or 1 as ``m1`` is smaller than, equal to or larger than ``m2``."""
    k1, k2 = m1.key(), m2.key()
    return (k1 > k2) - (k1 < k2)


def monomials_of_degree(n: int) -> list[Monomial]:
    """All monomials of degree ``n``, descending in grevlex."""
    if n < 0:
        return []
    out = [Monomial(n - b - c, b, c) for c in range(n + 1) for b in range(n - c + 1)]
    out.sort(reverse=True)
    return out


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Minimal generating set, sorted descending in grevlex."""
    uniq = sorted(set(gens))
    kept: list[Monomial] = []
    for g in uniq:
        if not any(h.divides(g) for h in kept):
            kept.append(g)
    kept.sort(reverse=True)
    return tuple(kept)


def lex_key(m: Monomial) -> tuple[int, int, int]:
    """Lexicographic order with x > y > z; used for the rows and columns of Z(T)."""
    return (m.deg, m.a, m.b)


def in_ideal(m: Monomial, gens: Iterable[Monomial]) -> bool:
    return any(g.divides(m) for g in gens)


@dataclass(frozen=True)
class Puncture:
    generator: Monomial
    side: int

    @property
    def is_corner(self) -> bool:
        return self.generator.is_pure_power() or self.generator == ONE

    def vertices(self, d: int) -> frozenset[Monomial]:
        """Lattice vertices of the closed puncture triangle."""
        g = self.generator
        return frozenset(g * m for m in monomials_of_degree(self.side))

    def edges(self, d: int) -> frozenset[frozenset[Monomial]]:
        verts = self.vertices(d)
        out = set()
        for v in verts:
            for step in STEPS.values():
                w = v.shift(*step)
                if w in verts:
                    out.add(frozenset((v, w)))
        return frozenset(out)

    def corners(self) -> tuple[Monomial, Monomial, Monomial]:
        """Lower-left, lower-right and top vertices."""
        g, s = self.generator, self.side
        return (g * Monomial(0, s, 0), g * Monomial(0, 0, s), g * Monomial(s, 0, 0))

    def up_triangles(self) -> list[Monomial]:
        return [self.generator * m for m in monomials_of_degree(self.side - 1)]

    def down_triangles(self) -> list[Monomial]:
        return [self.generator * m for m in monomials_of_degree(self.side - 2)]

    def __str__(self) -> str:
        return f"{self.generator}[{self.side}]"


# unit steps between lattice vertices, as exponent deltas
STEPS = {
    "E": (0, -1, 1),
    "W": (0, 1, -1),
    "NE": (1, -1, 0),
    "SW": (-1, 1, 0),
    "NW": (1, 0, -1),
    "SE": (-1, 0, 1),
}


@dataclass(frozen=True)
class Subregion:
    """An arbitrary set of unit triangles of the side-d triangle."""

    d: int
    up: frozenset[Monomial]
    down: frozenset[Monomial]

    def balance(self) -> tuple[int, int]:
        return len(self.up), len(self.down)

    @property
    def is_balanced(self) -> bool:
        return len(self.up) == len(self.down)

    @property
    def is_empty(self) -> bool:
        return not self.up and not self.down

    def triangles(self) -> Iterator[tuple[str, Monomial]]:
        for m in sorted(self.up, reverse=True):
            yield "up", m
        for m in sorted(self.down, reverse=True):
            yield "down", m


@dataclass(frozen=True, eq=False)
class TriangularRegion(Subregion):
    """The region T_d(I): the side-d triangle minus the triangles labelled by I."""

    gens: tuple[Monomial, ...] = field(default=())

    def __eq__(self, other):
        if not isinstance(other, Subregion):
            return NotImplemented
        return self.d == other.d and self.up == other.up and self.down == other.down

    def __hash__(self):
        return hash((self.d, self.up, self.down))

    @cached_property
    def punctures(self) -> tuple[Puncture, ...]:
        return tuple(Puncture(g, self.d - g.deg) for g in self.gens if g.deg < self.d)

    @cached_property
    def ups(self) -> list[Monomial]:
        """Present up-triangles in matrix order (descending lex)."""
        return sorted(self.up, key=lex_key, reverse=True)

    @cached_property
    def downs(self) -> list[Monomial]:
        """Present down-triangles in matrix order (descending lex)."""
        return sorted(self.down, key=lex_key, reverse=True)

    @cached_property
    def up_index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.ups)}

    @cached_property
    def down_index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.downs)}

    def neighbors(self, down: Monomial) -> list[Monomial]:
        """Present up-triangles sharing an edge with ``down``, in the order x, y, z."""
        return [n for n in (down * v for v in VARIABLES) if n in self.up]

    def up_neighbors(self, up: Monomial) -> list[Monomial]:
        out = []
        for v in VARIABLES:
            if v.divides(up):
                m = up.div(v)
                if m in self.down:
                    out.append(m)
        return out

    def spec(self) -> dict:
        return {"d": self.d, "gens": [str(g) for g in self.gens]}

    def __str__(self) -> str:
        return f"T_{self.d}({', '.join(str(g) for g in self.gens)})"

    def __repr__(self) -> str:
        return f"TriangularRegion({self})"


def build_region(d: int, gens: Iterable[Monomial] = ()) -> TriangularRegion:
    """Construct T_d(I) for the ideal generated by ``gens``."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    ideal = minimalize(gens)
    up = frozenset(m for m in monomials_of_degree(d - 1) if not in_ideal(m, ideal))
    down = frozenset(m for m in monomials_of_degree(d - 2) if not in_ideal(m, ideal))
    return TriangularRegion(d, up, down, ideal)


def region_from_triangles(d: int, up: Iterable[Monomial], down: Iterable[Monomial]) -> TriangularRegion:
    """Recover T_d(I) from its triangle sets.

    Raises ValueError when the removed triangles are not closed under
    multiplication, i.e. the set is not a triangular region of an ideal.
    """
    up, down = frozenset(up), frozenset(down)
    removed = [m for m in monomials_of_degree(d - 1) if m not in up]
    removed += [m for m in monomials_of_degree(d - 2) if m not in down]
    region = build_region(d, removed)
    if region.up != up or region.down != down:
        raise ValueError("triangle set is not of the form T_d(I)")
    return saturate(region)


def saturate(region: TriangularRegion) -> TriangularRegion:
    """Same triangles, generated by every m of degree < d whose subregion is empty.

    This makes each puncture as large as the removed triangles allow, so a
    removed corner of side k is one puncture rather than many small ones.
    """
    d = region.d
    gens = [
        m
        for n in range(d)
        for m in monomials_of_degree(n)
        if not any(m.divides(u) for u in region.up) and not any(m.divides(v) for v in region.down)
    ]
    return build_region(d, gens)


def monomial_subregion(region: Subregion, m: Monomial) -> Subregion:
    """Triangles of ``region`` whose labels are divisible by ``m``."""
    if m.deg >= region.d:
        raise ValueError("monomial degree must be less than d")
    return Subregion(
        region.d,
        frozenset(u for u in region.up if m.divides(u)),
        frozenset(v for v in region.down if m.divides(v)),
    )


def restrict(region: TriangularRegion, m: Monomial) -> TriangularRegion:
    """The monomial subregion at ``m`` relabelled as T_{d - deg m}(I : m)."""
    return build_region(region.d - m.deg, [g.colon(m) for g in region.gens])


def balance(region: Subregion) -> tuple[int, int]:
    return region.balance()


def relation(p: Puncture, q: Puncture, d: int) -> str:
    """``overlap`` (shared unit edge), ``touch`` (shared vertex only) or ``disjoint``."""
    if p.edges(d) & q.edges(d):
        return "overlap"
    if p.vertices(d) & q.vertices(d):
        return "touch"
    return "disjoint"


@dataclass(frozen=True)
class PunctureRelation:
    first: Puncture
    second: Puncture
    relation: str
    covering: Monomial

    def covering_side(self, d: int) -> int:
        return d - self.covering.deg


def puncture_relations(region: TriangularRegion) -> list[PunctureRelation]:
    out = []
    for p, q in combinations(region.punctures, 2):
        out.append(PunctureRelation(p, q, relation(p, q, region.d), p.generator.gcd(q.generator)))
    return out


def overlap_components(region: TriangularRegion) -> list[tuple[Puncture, ...]]:
    """Group punctures into classes of the transitive closure of ``overlap``."""
    parent = {p: p for p in region.punctures}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for rel in puncture_relations(region):
        if rel.relation == "overlap":
            parent[find(rel.first)] = find(rel.second)
    groups: dict[Puncture, list[Puncture]] = {}
    for p in region.punctures:
        groups.setdefault(find(p), []).append(p)
    return [tuple(g) for g in groups.values()]


def covering_puncture(punctures: Iterable[Puncture], d: int) -> Puncture:
    """The minimal covering region of a group of punctures, as a puncture."""
    g = None
    for p in punctures:
        g = p.generator if g is None else g.gcd(p.generator)
    if g is None:
        raise ValueError("no punctures given")
    return Puncture(g, d - g.deg)


def rotate(region: TriangularRegion, k: int = 1) -> TriangularRegion:
    """Rotate by 120 k degrees: each label ``(a, b, c)`` becomes ``(c, a, b)``."""
    return build_region(region.d, [g.rotate(k) for g in region.gens])


class Lozenge(NamedTuple):
    """A down-triangle glued to an adjacent up-triangle."""

    down: Monomial
    up: Monomial

    @property
    def kind(self) -> str:
        """The variable carrying ``down`` to ``up``: ``x`` (vertical), ``y`` or ``z``."""
        q = self.up.div(self.down)
        return "xyz"[q.index(1)]

    def is_valid(self) -> bool:
        return self.up.deg == self.down.deg + 1 and self.down.divides(self.up)

    def sort_key(self):
        return (self.down.key(), self.up.key())

    def __str__(self) -> str:
        return f"<{self.down}|{self.up}>"
