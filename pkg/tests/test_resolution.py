import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import T8, floating_region
from trireg.cli import parse_spec
from trireg.core import Puncture, overlap_components, covering_puncture, parse_monomial
from trireg.cycles import difference_cycles, floating_punctures, is_inside, twist
from trireg.matching import enumerate_tilings, is_tiling, validate_tiling
from trireg.resolution import (
    CHAIN_NAMES,
    DegenerateCrossingError,
    ResolutionError,
    resolve,
    resolve_floating,
    splitting_chains,
    twist_adjusted_chains,
)
from trireg.tileability import canonical_tiling

SIMPLE = Puncture(parse_monomial("xy^4z^2"), 1)
COVER = Puncture(parse_monomial("x^3yz"), 3)


def _units(region):
    for group in overlap_components(region):
        unit = covering_puncture(group, region.d) if len(group) > 1 else group[0]
        if not unit.is_corner:
            yield unit


def _corner_sides(region):
    d = region.d
    out = {}
    for p in region.punctures:
        g = p.generator
        if g.is_pure_power():
            out["xyz"[[i for i, e in enumerate(g) if e][0]]] = p.side
    return out


@pytest.mark.parametrize("puncture,d_new", [(SIMPLE, 10), (COVER, 14)])
def test_t8_resolutions(puncture, d_new):
    region = parse_spec(T8)
    for tiling in itertools.islice(enumerate_tilings(region), 4):
        res = resolve(region, tiling, puncture)
        assert res.region.d == d_new
        assert res.region.is_balanced
        validate_tiling(res.region, res.tiling)
        assert puncture.generator not in res.region.gens
        sides = _corner_sides(res.region)
        assert all(sides[v] >= puncture.side for v in "xyz")


def test_simple_resolution_region():
    region = parse_spec(T8)
    res = resolve(region, canonical_tiling(region), SIMPLE)
    gens = {str(g) for g in res.region.gens}
    assert {"x^9", "y^9", "z^9"} <= gens
    assert res.region.balance() == (42, 42)


def test_corner_and_overlapped_punctures_are_refused():
    region = parse_spec(T8)
    tiling = canonical_tiling(region)
    with pytest.raises(ResolutionError):
        resolve(region, tiling, Puncture(parse_monomial("x^7"), 1))
    with pytest.raises(ResolutionError):
        resolve(region, tiling, Puncture(parse_monomial("x^3yz^2"), 2))


def test_chains_are_edge_paths_to_corners():
    region = parse_spec(T8)
    tiling = canonical_tiling(region)
    chains = splitting_chains(region, tiling, SIMPLE)
    a, b, c = SIMPLE.corners()
    assert chains.lower_left[0] == a and chains.lower_right[0] == b and chains.top[0] == c
    for name in CHAIN_NAMES:
        chain = chains.chain(name)
        for u, v in zip(chain, chain[1:]):
            assert sum(abs(x - y) for x, y in zip(u, v)) == 2
        assert 0 in (chain[-1].a, chain[-1].b, chain[-1].c)
    edges = [frozenset(e) for name in CHAIN_NAMES for e in zip(chains.chain(name), chains.chain(name)[1:])]
    assert len(edges) == len(set(edges))


resolution_cases = st.tuples(st.integers(0, 2**32), st.booleans())


@settings(max_examples=30)
@given(resolution_cases)
def test_cycles_extend_by_crossings(case):
    seed, randomized = case
    rng = random.Random(seed)
    region = floating_region(rng, dmax=8, max_down=20, max_tilings=150)
    tilings = list(enumerate_tilings(region))
    for p in _units(region):
        tiling = rng.choice(tilings)
        res = resolve(region, tiling, p, rng=random.Random(seed) if randomized else None)
        validate_tiling(res.region, res.tiling)
        for other in rng.sample(tilings, min(5, len(tilings))):
            for cycle in difference_cycles(region, tiling, other):
                if any(p.generator.divides(l.up) for l in cycle.lozenges):
                    continue
                try:
                    image, crossings = res.map_cycle(cycle)
                except DegenerateCrossingError:
                    continue
                assert set(image.lozenges) <= res.tiling.lozenges
                assert len(image) == len(cycle) + p.side * crossings
                assert (crossings % 2 == 1) == is_inside(cycle, p)
                chains = twist_adjusted_chains(res.base, res.base_tiling, res.chains, cycle)
                again = resolve(region, twist(region, tiling, cycle), p, chains=chains)
                assert again.region == res.region
                assert again.tiling == twist(res.region, res.tiling, image)


@settings(max_examples=15)
@given(st.integers(0, 2**32))
def test_resolve_floating_terminates(seed):
    region = floating_region(random.Random(seed), dmax=8, max_down=20, max_tilings=150)
    steps = resolve_floating(region, canonical_tiling(region))
    assert steps
    last = steps[-1]
    assert floating_punctures(last.region)[0] == []
    assert is_tiling(last.region, last.tiling)


def test_to_json_replays():
    from trireg.core import build_region

    region = parse_spec(T8)
    res = resolve(region, canonical_tiling(region), SIMPLE)
    doc = res.to_json()
    again = build_region(doc["region"]["d"], [parse_monomial(g) for g in doc["region"]["gens"]])
    assert again == res.region
    assert len(doc["tiling"]) == len(res.tiling)
