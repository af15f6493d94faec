"""Acceptance gate: one PASS/FAIL line per criterion, each at its exact tolerance.

Run under pytest (lines appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import itertools
import os
import random
import sys
import time
from functools import lru_cache


sys.path.insert(0, os.path.dirname(__file__))

from corpus import T3, T6, T8, balanced_region, floating_region, hexagon, tileable_region  # noqa: E402
from oracles import brute_tilings, has_perfect_matching, macmahon  # noqa: E402
from trireg.cli import parse_spec  # noqa: E402
from trireg.core import covering_puncture, overlap_components  # noqa: E402
from trireg.cycles import difference_cycles, e_count, is_inside, twist  # noqa: E402
from trireg.matching import (  # noqa: E402
    biadjacency,
    determinant,
    enumerate_tilings,
    msgn,
    permanent,
    validate_tiling,
)
from trireg.paths import lattice_points, lpsgn, path_matrix, signed_family_count  # noqa: E402
from trireg.resolution import DegenerateCrossingError, resolve  # noqa: E402
from trireg.tileability import canonical_tiling, is_tileable  # noqa: E402

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

EXPECTED_Z = [
    [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1],
]

CORPUS_SIZE = 200
TILEABILITY_SIZE = 500
FLOATING_SIZE = 60
RESOLUTION_TARGET = 50


@lru_cache(maxsize=None)
def main_corpus():
    """Balanced tileable regions with d <= 8 and at most 14 down-triangles, with their tilings."""
    rng = random.Random(20240601)
    out = []
    seen = set()
    while len(out) < CORPUS_SIZE:
        region = tileable_region(rng, dmax=8, max_down=14)
        if region in seen:
            continue
        seen.add(region)
        out.append((region, list(enumerate_tilings(region))))
    return out


@lru_cache(maxsize=None)
def floating_corpus():
    """Regions with floating punctures, so that cycles enclose punctures."""
    rng = random.Random(7)
    return [(r, list(enumerate_tilings(r))) for r in (floating_region(rng, dmax=8, max_down=22, max_tilings=200) for _ in range(FLOATING_SIZE))]


def record(number: int, title: str, ok: bool, detail: str, elapsed: float, budget: float | None = None) -> None:
    within = budget is None or elapsed < budget
    verdict = "PASS" if ok and within else "FAIL"
    timing = f"{elapsed:.2f}s" + (f" < {budget:g}s" if budget is not None else "")
    line = f"{verdict} criterion {number}: {title} | {detail} | {timing}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


def test_criterion_1_z_matrix():
    start = time.perf_counter()
    region = parse_spec(T6)
    z = biadjacency(region)
    per, det = permanent(z), determinant(z)
    ok = z == EXPECTED_Z and per == 10 and abs(det) == 10
    record(1, "Z(T_6(x^3,y^4,z^5)) entry-for-entry, per = |det| = 10", ok, f"per={per} det={det}", time.perf_counter() - start, 1)


def test_criterion_2_tiling_counts():
    start = time.perf_counter()
    counts = {spec: sum(1 for _ in enumerate_tilings(parse_spec(spec))) for spec in (T6, T8, T3)}
    ok = counts == {T6: 10, T8: 13, T3: 2}
    record(2, "enumerated tiling counts 10 / 13 / 2", ok, f"counts={list(counts.values())}", time.perf_counter() - start, 5)


def test_criterion_3_detzn():
    start = time.perf_counter()
    bad = []
    for region, tilings in main_corpus():
        det_z = determinant(biadjacency(region))
        det_n = determinant(path_matrix(region))
        products = {msgn(region, t) * lpsgn(region, t) for t in tilings}
        if abs(det_z) != abs(det_n) or len(products) != 1:
            bad.append(str(region))
    n = len(main_corpus())
    record(3, "|det Z| = |det N| and msgn*lpsgn constant", not bad and n >= 200, f"{n} regions, {len(bad)} failures", time.perf_counter() - start, 120)


def test_criterion_4_signed_enumerations():
    start = time.perf_counter()
    bad_m = 0
    global_signs = set()
    for region, tilings in main_corpus():
        det_z = determinant(biadjacency(region))
        det_n = determinant(path_matrix(region))
        if sum(msgn(region, t) for t in tilings) != det_z:
            bad_m += 1
        sum_l = sum(lpsgn(region, t) for t in tilings)
        global_signs.add(0 if abs(sum_l) != abs(det_n) else (1 if sum_l == det_n else -1))
    ok = bad_m == 0 and global_signs == {1}
    detail = f"sum msgn = det Z failures={bad_m}; sum lpsgn / det N signs={sorted(global_signs)}"
    record(4, "sum msgn = det Z, sum lpsgn = det N (global sign +1)", ok, detail, time.perf_counter() - start)


def test_criterion_5_tileability():
    start = time.perf_counter()
    rng = random.Random(99)
    disagree = invalid = tileable = 0
    for _ in range(TILEABILITY_SIZE):
        region = balanced_region(rng, dmax=7, nonempty=True)
        ours = is_tileable(region)
        if ours != has_perfect_matching(region):
            disagree += 1
        if ours:
            tileable += 1
            try:
                validate_tiling(region, canonical_tiling(region))
            except ValueError:
                invalid += 1
    ok = disagree == 0 and invalid == 0
    detail = f"{TILEABILITY_SIZE} regions ({tileable} tileable), {disagree} disagreements, {invalid} invalid canonical tilings"
    record(5, "tileable iff no down-heavy subregion; canonical tiling valid", ok, detail, time.perf_counter() - start, 60)


def _harvest(region, tilings, limit=30):
    for first, second in itertools.combinations(tilings[:limit], 2):
        for cycle in difference_cycles(region, first, second):
            yield first, cycle


def test_criterion_6_twist_sign():
    start = time.perf_counter()
    cycles = bad = enclosing = 0
    for region, tilings in main_corpus() + floating_corpus():
        signs = {t: msgn(region, t) for t in tilings[:30]}
        for first, cycle in _harvest(region, tilings):
            cycles += 1
            n = len(cycle)
            ec = e_count(region, cycle)
            enclosing += ec > 0
            after = twist(region, first, cycle)
            if msgn(region, after) * signs[first] != (-1) ** (n - 1) or ec % 2 == n % 2:
                bad += 1
    ok = bad == 0 and cycles > 0 and enclosing > 0
    record(6, "msgn ratio (-1)^(n-1), E-count parity opposite to n", ok, f"{cycles} cycles ({enclosing} enclosing punctures), {bad} failures", time.perf_counter() - start)


def test_criterion_7_hexagons():
    start = time.perf_counter()
    bad = []
    for a, b, c in itertools.product(range(4), repeat=3):
        if a + b + c == 0:
            continue
        z = biadjacency(hexagon(a, b, c))
        per = permanent(z)
        if per != abs(determinant(z)) or per != macmahon(a, b, c):
            bad.append((a, b, c))
    brute = len(brute_tilings(hexagon(2, 2, 2)))
    ok = not bad and brute == 20 == macmahon(2, 2, 2)
    record(7, "hexagons a,b,c <= 3: per Z = |det Z|; (2,2,2) has 20", ok, f"63 hexagons, {len(bad)} failures, brute(2,2,2)={brute}", time.perf_counter() - start, 30)


def test_criterion_8_resolution():
    start = time.perf_counter()
    rng = random.Random(11)
    instances = invalid = cycles = bad = degenerate = 0
    for region, tilings in floating_corpus():
        for group in overlap_components(region):
            p = covering_puncture(group, region.d) if len(group) > 1 else group[0]
            if p.is_corner:
                continue
            tiling = rng.choice(tilings)
            res = resolve(region, tiling, p)
            instances += 1
            try:
                validate_tiling(res.region, res.tiling)
                if not res.region.is_balanced:
                    raise ValueError("unbalanced")
            except ValueError:
                invalid += 1
                continue
            for other in tilings[:20]:
                for cycle in difference_cycles(region, tiling, other):
                    if any(p.generator.divides(l.up) for l in cycle.lozenges):
                        continue
                    try:
                        image, crossings = res.map_cycle(cycle)
                    except DegenerateCrossingError:
                        degenerate += 1
                        continue
                    cycles += 1
                    good = (
                        set(image.lozenges) <= res.tiling.lozenges
                        and len(image) == len(cycle) + p.side * crossings
                        and (crossings % 2 == 1) == is_inside(cycle, p)
                    )
                    bad += not good
    ok = instances >= RESOLUTION_TARGET and invalid == 0 and bad == 0 and cycles > 0
    detail = f"{instances} resolutions, {invalid} invalid, {cycles} cycles mapped, {bad} failures, {degenerate} degenerate"
    record(8, "resolutions valid; n' = n + k*l with l odd iff inside", ok, detail, time.perf_counter() - start)


def test_criterion_9_lgv():
    start = time.perf_counter()
    checked = bad = 0
    for region, _ in main_corpus() + floating_corpus():
        starts, _ = lattice_points(region)
        if len(starts) > 4:
            continue
        checked += 1
        signed, _ = signed_family_count(region, within_lattice=False)
        if signed != determinant(path_matrix(region)):
            bad += 1
    record(9, "signed non-intersecting families = det N (<= 4 starts)", checked > 0 and bad == 0, f"{checked} regions, {bad} failures", time.perf_counter() - start)


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
