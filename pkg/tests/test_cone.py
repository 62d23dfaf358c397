import json
from fractions import Fraction

import pytest
from hypothesis import given, assume, strategies as st

from nefcone import linalg as la
from nefcone.cone import (PolyCone, ConeError, dd_convert, extremal_rays, member, ray_member,
                          minkowski_sum, is_strict, map_cone, dual_cone, equal,
                          cone_from_json, cone_to_json)
import oracles

QUAD = PolyCone.from_rays([(1, 0), (0, 1)])


def test_quadrant_self_dual():
    c = dd_convert(QUAD)
    assert c.facets == ((0, 1), (1, 0))
    assert c.rep_state == "both"


def test_square_based_cone_against_brute_force():
    rays = [(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)]
    c = dd_convert(PolyCone.from_rays(rays))
    assert list(c.facets) == oracles.brute_facets(rays, 3)
    assert len(c.facets) == 4


def test_facets_to_rays():
    c = dd_convert(PolyCone.from_facets([(1, 1), (1, -1)]))
    assert c.rays == ((1, -1), (1, 1))


def test_zero_dimension_rejected():
    with pytest.raises(ConeError):
        PolyCone(0, rays=[])


def test_inconsistent_pair_has_witness():
    with pytest.raises(ConeError) as e:
        dd_convert(PolyCone(2, rays=[(1, 0), (0, 1)], facets=[(1, 0), (1, -1)]))
    assert e.value.witness is not None


def test_extremal_rays_examples():
    assert extremal_rays(QUAD) == [(0, 1), (1, 0)]
    assert extremal_rays(PolyCone.from_rays([(1, 0), (1, 1), (1, 2)])) == [(1, 0), (1, 2)]


def test_extremal_rays_line_error():
    with pytest.raises(ConeError, match="cone contains a line") as e:
        extremal_rays(PolyCone.from_rays([(1, 0), (-1, 0), (0, 1)]))
    assert e.value.witness == (1, 0)


def test_member_certificates():
    ok, coeffs = member(QUAD, (1, 1))
    assert ok and coeffs == (1, 1)
    ok, sep = member(QUAD, (1, -1))
    assert not ok and sep == (0, 1)


def test_minkowski_examples():
    assert equal(minkowski_sum(QUAD, QUAD), QUAD)
    s = minkowski_sum(PolyCone.from_rays([(1, 0)]), PolyCone.from_rays([(0, 1)]))
    assert s.rays == ((0, 1), (1, 0))


def test_strictness():
    assert is_strict(QUAD)
    assert not is_strict(PolyCone.from_rays([(1, 0), (-1, 0), (0, 1)]))
    assert not is_strict(PolyCone.from_facets([(0, 0)], dim=2))


def test_map_cone():
    assert equal(map_cone(QUAD, la.identity(2)), QUAD)
    emb = ((1, 0), (0, 1), (0, 0))
    c = map_cone(QUAD, emb, injective=True)
    assert c.rays == ((0, 1, 0), (1, 0, 0))
    with pytest.raises(ConeError):
        map_cone(QUAD, ((1, 1), (1, 1), (0, 0)), injective=True)


def test_lower_dimensional_cone_has_equations():
    c = dd_convert(PolyCone.from_rays([(1, 0, 0)]))
    assert (0, 1, 0) in c.facets and (0, -1, 0) in c.facets
    assert c.contains((2, 0, 0)) and not c.contains((1, 1, 0))


def test_json_round_trip():
    doc = {"dim": 2, "rays": [[1, 0], ["1/2", "1/2"]]}
    c = cone_from_json(json.dumps(doc))
    assert c.rays == ((1, 0), (1, 1))
    out = cone_to_json(c)
    assert cone_from_json(out).rays == c.rays
    with pytest.raises(ConeError):
        cone_from_json({"rays": [[1]]})


# --------------------------------------------------------------------------
# properties


def ray_sets(dim):
    vec = st.lists(st.integers(-3, 3), min_size=dim, max_size=dim).map(tuple)
    return st.lists(vec, min_size=1, max_size=10)


@st.composite
def strict_cones(draw, max_dim=6):
    dim = draw(st.integers(2, max_dim))
    rays = draw(ray_sets(dim))
    # shift into a half-space so the cone is strict
    rays = [(abs(r[0]) + 1,) + r[1:] for r in rays]
    return PolyCone.from_rays(rays)


@given(strict_cones())
def test_dd_idempotent(c):
    once = dd_convert(c)
    twice = dd_convert(PolyCone(once.ambient_dim, facets=once.facets))
    assert twice.rays == once.rays
    assert dd_convert(PolyCone(once.ambient_dim, rays=once.rays)).facets == once.facets


@given(strict_cones(), st.data())
def test_member_agrees_with_generator_lp(c, data):
    dim = c.ambient_dim
    rays = list(dd_convert(c).rays)
    for _ in range(5):
        v = tuple(Fraction(data.draw(st.integers(-5, 5)), data.draw(st.integers(1, 3)))
                  for _ in range(dim))
        ok, cert = member(c, v)
        assert ok == ray_member(rays, v)[0]
        if ok:
            assert la.lincomb(cert, rays, dim) == la.vec(v)
        else:
            assert la.dot(cert, v) < 0


@given(strict_cones(max_dim=4))
def test_member_matches_caratheodory(c):
    rays = list(dd_convert(c).rays)
    dim = c.ambient_dim
    probes = [la.add(r, s) for r in rays for s in rays][:8] + [la.unit(dim, i) for i in range(dim)]
    for v in probes:
        assert member(c, v)[0] == oracles.in_cone_brute(rays, v, dim)


@given(strict_cones())
def test_extremal_rays_are_irredundant(c):
    ext = extremal_rays(c)
    for r in ext:
        others = [s for s in ext if s != r]
        assert not ray_member(others, r)[0]
    for r in c.rays:
        assert ray_member(ext, r)[0]


@given(strict_cones(max_dim=4), strict_cones(max_dim=4))
def test_minkowski_contains_summands(a, b):
    assume(a.ambient_dim == b.ambient_dim)
    s = minkowski_sum(a, b)
    for r in dd_convert(a).rays + dd_convert(b).rays:
        assert s.contains(r)
    gens = set(dd_convert(a).rays) | set(dd_convert(b).rays)
    assert set(s.rays) <= gens


@given(strict_cones(max_dim=5))
def test_rays_satisfy_facets(c):
    c = dd_convert(c)
    for r in c.rays:
        assert all(la.dot(f, r) >= 0 for f in c.facets)
        assert la.primitive(r) == r
    assert list(c.rays) == sorted(set(c.rays))


@given(strict_cones(max_dim=4))
def test_double_dual(c):
    assert equal(dual_cone(dual_cone(c)), c)
