import pytest
from hypothesis import given, strategies as st

from strategies import exponent_triples, regions
from trireg.core import (
    Lozenge,
    Monomial,
    ParseError,
    Puncture,
    build_region,
    covering_puncture,
    minimalize,
    monomial_subregion,
    monomials_of_degree,
    overlap_components,
    parse_monomial,
    region_from_triangles,
    relation,
    restrict,
    rotate,
    saturate,
)


def test_parse_and_print_round_trip():
    for text in ["1", "x", "y^4", "xy^4z^2", "x^3yz^2", "z^10"]:
        assert str(parse_monomial(text)) == text
    assert parse_monomial(" x ^ 2  z ") == Monomial(2, 0, 1)


@pytest.mark.parametrize("bad,column", [("w^2", 1), ("x^", 2), ("yx", 2), ("", 1), ("x^2y^", 5)])
def test_parse_errors_carry_position(bad, column):
    with pytest.raises(ParseError) as info:
        parse_monomial(bad)
    assert info.value.line == 1
    assert info.value.column == column


def test_grevlex_order_in_degree_two():
    assert [str(m) for m in monomials_of_degree(2)] == ["x^2", "xy", "y^2", "xz", "yz", "z^2"]


@given(exponent_triples(), exponent_triples())
def test_grevlex_is_total_and_graded(m, n):
    assert (m < n) + (m > n) + (m == n) == 1
    if m.deg < n.deg:
        assert m < n


@given(exponent_triples(), exponent_triples())
def test_gcd_lcm_divisibility(m, n):
    g, l = m.gcd(n), m.lcm(n)
    assert g.divides(m) and g.divides(n) and m.divides(l) and n.divides(l)
    assert g.deg + l.deg == m.deg + n.deg


def test_minimalize_drops_multiples():
    gens = [parse_monomial(s) for s in ["x^2", "x^3", "xy", "x^2y", "z"]]
    assert set(minimalize(gens)) == {parse_monomial(s) for s in ["x^2", "xy", "z"]}


def test_counts_of_full_triangle():
    for d in range(1, 8):
        region = build_region(d)
        assert region.balance() == (d * (d + 1) // 2, d * (d - 1) // 2)


def test_punctures_sides_and_corners():
    region = build_region(8, [parse_monomial(s) for s in ["x^7", "y^7", "z^6", "xy^4z^2", "x^3yz^2", "x^4yz"]])
    sides = {str(p.generator): p.side for p in region.punctures}
    assert sides == {"x^7": 1, "y^7": 1, "z^6": 2, "xy^4z^2": 1, "x^3yz^2": 2, "x^4yz": 2}
    assert {str(p.generator) for p in region.punctures if p.is_corner} == {"x^7", "y^7", "z^6"}


def test_relation_kinds():
    d = 8
    p = Puncture(parse_monomial("x^3yz^2"), 2)
    q = Puncture(parse_monomial("x^4yz"), 2)
    r = Puncture(parse_monomial("xy^4z^2"), 1)
    assert relation(p, q, d) == "overlap"
    assert relation(p, r, d) == "disjoint"
    assert covering_puncture([p, q], d) == Puncture(parse_monomial("x^3yz"), 3)
    region = build_region(d, [p.generator, q.generator, r.generator])
    groups = sorted(len(g) for g in overlap_components(region))
    assert groups == [1, 2]


def test_touching_punctures():
    d = 5
    p = Puncture(parse_monomial("x^2"), 3)
    q = Puncture(parse_monomial("y^2z^2"), 1)
    assert relation(p, q, d) == "disjoint"
    assert relation(Puncture(parse_monomial("x^2y"), 2), Puncture(parse_monomial("xy^2"), 2), d) == "overlap"
    assert relation(Puncture(parse_monomial("x^2y^2"), 1), Puncture(parse_monomial("xy^3"), 1), d) == "touch"


@given(regions(), st.integers(0, 2))
def test_rotation_preserves_counts_and_cycles_back(region, k):
    rot = rotate(region, k)
    assert rot.balance() == region.balance()
    assert rotate(rot, 3 - k) == region


@given(regions())
def test_region_from_triangles_round_trip(region):
    again = region_from_triangles(region.d, region.up, region.down)
    assert again.up == region.up and again.down == region.down


@given(regions())
def test_saturate_keeps_triangles(region):
    s = saturate(region)
    assert (s.up, s.down) == (region.up, region.down)


@given(regions(), st.integers(0, 3))
def test_restrict_matches_monomial_subregion(region, n):
    for m in monomials_of_degree(min(n, region.d - 1)):
        sub = monomial_subregion(region, m)
        rest = restrict(region, m)
        assert {u.div(m) for u in sub.up} == set(rest.up)
        assert {v.div(m) for v in sub.down} == set(rest.down)


def test_lozenge_kinds():
    down = Monomial(1, 1, 1)
    assert Lozenge(down, down * (1, 0, 0)).kind == "x"
    assert Lozenge(down, down * (0, 1, 0)).kind == "y"
    assert Lozenge(down, down * (0, 0, 1)).kind == "z"
    assert not Lozenge(down, Monomial(2, 2, 0)).is_valid()


def test_region_string_and_spec():
    region = build_region(6, [parse_monomial(s) for s in ["x^3", "y^4", "z^5"]])
    assert region.spec() == {"d": 6, "gens": ["z^5", "y^4", "x^3"]}
    assert str(region) == "T_6(z^5, y^4, x^3)"
