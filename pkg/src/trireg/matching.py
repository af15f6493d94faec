"""The honeycomb graph G(T), its bi-adjacency matrix Z(T), tilings and exact matrix functions."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from trireg.core import Lozenge, Monomial, Subregion, TriangularRegion
from trireg.kernels import count_matchings, permanent_kernel

log = logging.getLogger(__name__)

DEFAULT_PERMANENT_CAP = 30

IntMatrix = list[list[int]]


class OversizeError(ValueError):
    """A computation would exceed its configured size cap."""


class NotTileableError(ValueError):
    pass


class InvalidTilingError(ValueError):
    pass


@dataclass(frozen=True)
class Tiling:
    """A set of lozenges; equality is set equality."""

    lozenges: frozenset[Lozenge]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Monomial, Monomial]]) -> "Tiling":
        return cls(frozenset(Lozenge(dn, up) for dn, up in pairs))

    @cached_property
    def partner(self) -> dict[Monomial, Monomial]:
        """down -> up"""
        return {lz.down: lz.up for lz in self.lozenges}

    @cached_property
    def partner_of_up(self) -> dict[Monomial, Monomial]:
        return {lz.up: lz.down for lz in self.lozenges}

    def lozenge_of_down(self, down: Monomial) -> Lozenge:
        return Lozenge(down, self.partner[down])

    def lozenge_of_up(self, up: Monomial) -> Lozenge:
        return Lozenge(self.partner_of_up[up], up)

    def sorted(self) -> list[Lozenge]:
        return sorted(self.lozenges, key=Lozenge.sort_key)

    def __len__(self) -> int:
        return len(self.lozenges)

    def __iter__(self) -> Iterator[Lozenge]:
        return iter(self.sorted())

    def to_json(self) -> list[list[str]]:
        return [[str(lz.down), str(lz.up)] for lz in self.sorted()]


def validate_tiling(region: Subregion, tiling: Tiling) -> None:
    """Raise InvalidTilingError unless ``tiling`` covers ``region`` exactly once."""
    downs = [lz.down for lz in tiling.lozenges]
    ups = [lz.up for lz in tiling.lozenges]
    if len(set(downs)) != len(downs) or len(set(ups)) != len(ups):
        raise InvalidTilingError("a triangle is covered twice")
    if set(downs) != set(region.down) or set(ups) != set(region.up):
        raise InvalidTilingError("tiling does not cover the region exactly")
    for lz in tiling.lozenges:
        if not lz.is_valid():
            raise InvalidTilingError(f"{lz} is not a lozenge")


def is_tiling(region: Subregion, tiling: Tiling) -> bool:
    try:
        validate_tiling(region, tiling)
    except InvalidTilingError:
        return False
    return True


def biadjacency(region: TriangularRegion) -> IntMatrix:
    """Z(T): rows are down-triangles, columns up-triangles, both descending lex."""
    col = region.up_index
    out = []
    for b in region.downs:
        row = [0] * len(region.ups)
        for w in region.neighbors(b):
            row[col[w]] = 1
        out.append(row)
    return out


def _adjacency_lists(region: TriangularRegion) -> list[list[int]]:
    col = region.up_index
    return [[col[w] for w in region.neighbors(b)] for b in region.downs]


def count_tilings(region: TriangularRegion) -> int:
    """Number of tilings, by fail-first backtracking (order-insensitive)."""
    if len(region.up) != len(region.down):
        return 0
    return count_matchings(_adjacency_lists(region), len(region.ups))


def enumerate_tilings(region: TriangularRegion) -> Iterator[Tiling]:
    """Every tiling exactly once, in a fixed order.

    Down-triangles are processed in descending grevlex and their partners
    tried in the order x, y, z.
    """
    if len(region.up) != len(region.down):
        log.info("%s is not balanced (%d up, %d down); no tilings", region, len(region.up), len(region.down))
        return
    downs = sorted(region.down, reverse=True)
    options = [region.neighbors(b) for b in downs]
    used: set[Monomial] = set()
    chosen: list[Monomial] = [None] * len(downs)  # type: ignore[list-item]

    def rec(i: int) -> Iterator[Tiling]:
        if i == len(downs):
            yield Tiling.from_pairs(zip(downs, chosen))
            return
        for w in options[i]:
            if w not in used:
                used.add(w)
                chosen[i] = w
                yield from rec(i + 1)
                used.discard(w)

    yield from rec(0)


def matching_permutation(region: TriangularRegion, tiling: Tiling) -> list[int]:
    """pi as a list: the i-th down-triangle is matched to the pi[i]-th up-triangle."""
    col = region.up_index
    return [col[tiling.partner[b]] for b in region.downs]


def permutation_sign(perm: Sequence[int]) -> int:
    """Signature via cycle decomposition."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def msgn(region: TriangularRegion, tiling: Tiling) -> int:
    """Perfect-matching sign of a tiling."""
    return permutation_sign(matching_permutation(region, tiling))


def permanent_cap() -> int:
    return int(os.environ.get("TRIREG_PERMANENT_CAP", DEFAULT_PERMANENT_CAP))


def permanent(matrix: IntMatrix, cap: int | None = None) -> int:
    """Exact permanent (Ryser with Gray-code order); the 0x0 permanent is 1."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("permanent needs a square matrix")
    cap = permanent_cap() if cap is None else cap
    if n > cap:
        raise OversizeError(f"permanent of a {n}x{n} matrix exceeds the cap {cap}")
    return permanent_kernel([list(row) for row in matrix])


def determinant(matrix: IntMatrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def maximum_matching(region: Subregion) -> dict[Monomial, Monomial]:
    """Maximum matching down -> up of G(T) by augmenting paths (Kuhn)."""
    up = region.up
    downs = sorted(region.down, reverse=True)
    adj = {b: [w for w in (b * v for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))) if w in up] for b in downs}
    match_up: dict[Monomial, Monomial] = {}

    def augment(b: Monomial, seen: set[Monomial]) -> bool:
        for w in adj[b]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_up or augment(match_up[w], seen):
                match_up[w] = b
                return True
        return False

    for b in downs:
        augment(b, set())
    return {b: w for w, b in match_up.items()}


def has_perfect_matching(region: Subregion) -> bool:
    if len(region.up) != len(region.down):
        return False
    return len(maximum_matching(region)) == len(region.down)


def format_matrix(matrix: IntMatrix) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in matrix)
