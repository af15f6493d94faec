"""Lozenge tilings of punctured triangular regions T_d(I).

Tileability, perfect-matching and lattice-path signs, the matrices Z(T) and
N(T), lozenge cycles and twists, and resolution of punctures.
"""

from trireg.core import (
    Lozenge,
    Monomial,
    ParseError,
    Puncture,
    TriangularRegion,
    build_region,
    parse_monomial,
    rotate,
)
from trireg.kernels import BACKEND
from trireg.matching import (
    NotTileableError,
    OversizeError,
    Tiling,
    biadjacency,
    count_tilings,
    determinant,
    enumerate_tilings,
    msgn,
    permanent,
)
from trireg.paths import lattice_points, lpsgn, path_matrix, tiling_to_paths
from trireg.tileability import canonical_tiling, heavy_subregion, is_tileable
from trireg.cycles import LozengeCycle, difference_cycles, e_count, twist
from trireg.resolution import resolve, resolve_floating

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Lozenge",
    "LozengeCycle",
    "Monomial",
    "NotTileableError",
    "OversizeError",
    "ParseError",
    "Puncture",
    "Tiling",
    "TriangularRegion",
    "biadjacency",
    "build_region",
    "canonical_tiling",
    "count_tilings",
    "determinant",
    "difference_cycles",
    "e_count",
    "enumerate_tilings",
    "heavy_subregion",
    "is_tileable",
    "lattice_points",
    "lpsgn",
    "msgn",
    "parse_monomial",
    "path_matrix",
    "permanent",
    "resolve",
    "resolve_floating",
    "rotate",
    "tiling_to_paths",
    "twist",
]
