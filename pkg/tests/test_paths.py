import pytest
from hypothesis import given

from corpus import T3, T6, T8
from oracles import binomial
from strategies import tileable_regions
from trireg.cli import parse_spec
from trireg.core import Lozenge, Monomial
from trireg.matching import Tiling, biadjacency, determinant, enumerate_tilings, msgn
from trireg.paths import (
    MalformedTilingError,
    is_minimal,
    lattice_labels,
    lattice_points,
    lpsgn,
    path_count,
    path_matrix,
    signed_family_count,
    tiling_to_paths,
)


def test_single_start_for_t6():
    starts, ends = lattice_points(parse_spec(T6))
    assert [str(p.label) for p in starts] == ["x^2y^3"]
    assert [str(p.label) for p in ends] == ["z^5"]
    assert path_matrix(parse_spec(T6)) == [[10]]


def test_path_count_is_binomial():
    assert path_count((0, 3), (4, 0)) == binomial(7, 3)
    assert path_count((2, 2), (1, 0)) == 0
    assert path_count((0, 0), (0, 1)) == 0
    assert path_count((1, 1), (1, 1)) == 1


def test_t8_path_matrix_and_families():
    region = parse_spec(T8)
    starts, ends = lattice_points(region)
    assert len(starts) == len(ends) == 6
    assert determinant(path_matrix(region)) == -7
    assert signed_family_count(region) == (-7, 13)
    assert signed_family_count(region, within_lattice=False) == (-7, 13)


@given(tileable_regions(dmax=7, max_down=12))
def test_tilings_give_distinct_valid_families(region):
    starts, ends = lattice_points(region)
    assert len(starts) == len(ends)
    labels = set(lattice_labels(region))
    seen = set()
    for t in enumerate_tilings(region):
        fam = tiling_to_paths(region, t)
        assert sorted(fam.permutation) == list(range(len(ends)))
        for path, a in zip(fam.paths, starts):
            assert path[0] == a.coords
            for (u0, v0), (u1, v1) in zip(path, path[1:]):
                assert (u1 - u0, v1 - v0) in ((1, 0), (0, -1))
        points = [p for path in fam.paths for p in path]
        assert len(points) == len(set(points))
        assert all((p[0], p[1]) in {(region.d - 1 - m.b, m.a) for m in labels} for p in points)
        seen.add(fam.paths)
    assert len(seen) == sum(1 for _ in enumerate_tilings(region))


@given(tileable_regions(dmax=7, max_down=12))
def test_sign_product_is_constant(region):
    products = {msgn(region, t) * lpsgn(region, t) for t in enumerate_tilings(region)}
    assert len(products) == 1


def test_minimal_family_exists():
    region = parse_spec(T8)
    flags = [is_minimal(tiling_to_paths(region, t)) for t in enumerate_tilings(region)]
    assert any(flags)


def test_z_lozenge_entry_is_rejected():
    region = parse_spec(T3)
    good = next(enumerate_tilings(region))
    broken = Tiling(frozenset(list(good.lozenges)[:-1] + [Lozenge(Monomial(0, 0, 0), Monomial(0, 0, 0))]))
    with pytest.raises((MalformedTilingError, KeyError, ValueError)):
        tiling_to_paths(region, broken)


def test_to_json_shape():
    region = parse_spec(T6)
    fam = tiling_to_paths(region, next(enumerate_tilings(region)))
    doc = fam.to_json()
    assert doc["lambda"] == [0]
    assert doc["paths"][0][0] == [2, 2] and doc["paths"][0][-1] == [5, 0]


def test_signed_enumeration_t3():
    region = parse_spec(T3)
    assert sum(lpsgn(region, t) for t in enumerate_tilings(region)) == determinant(path_matrix(region)) == 2
    assert sum(msgn(region, t) for t in enumerate_tilings(region)) == determinant(biadjacency(region)) == -2
