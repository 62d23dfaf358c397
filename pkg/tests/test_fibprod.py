import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nefcone import linalg as la
from nefcone import fibprod as fp
from nefcone import surface as sf
from nefcone.cone import PolyCone, member, dd_convert
import oracles

F0 = fp.f0_factor()
F0F0 = fp.build_fiber_product(F0, F0)


def test_build_ranks():
    assert F0F0.rank == 3
    R = fp.res_factor()
    assert fp.build_fiber_product(R, R).rank == 19
    assert fp.build_fiber_product(R, F0).rank == 11


def test_pullbacks_meet_in_fibre():
    for a, b in [("f0", "f0"), ("blowup:2", "res"), ("res", "res")]:
        m = fp.build_fiber_product(fp.factor_preset(a), fp.factor_preset(b))
        assert la.matvec(m.pull_left, m.left.fiber) == m.fiber
        assert la.matvec(m.pull_right, m.right.fiber) == m.fiber
        stacked = [tuple(r) for r in la.transpose(m.pull_left)] + \
                  [tuple(r) for r in la.transpose(m.pull_right)]
        assert la.rank(stacked) == m.rank   # images span, with a one-dimensional overlap


@given(st.lists(st.integers(-5, 5), min_size=12, max_size=12))
def test_split_inverts_pull(x):
    m = fp.build_fiber_product(fp.factor_preset("blowup:2"), fp.factor_preset("res"))
    x = tuple(x)
    assert m.pull(*m.split(x)) == x


def test_bad_section_rejected():
    bad = fp.FiberedFactor("bad", ((0, 1), (1, 0)), (1, 0), (0, 2), ((1, 0),), mori=((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        fp.build_fiber_product(bad, F0)


def test_thresholds():
    assert fp.nef_threshold(F0, (-2, 1)) == 2
    assert fp.nef_threshold(F0, (0, 1)) == 0
    R = fp.res_factor()
    assert fp.nef_threshold(R, R.section) == 1
    with pytest.raises(fp.VerticalViolation, match="vertical curve violation"):
        fp.nef_threshold(F0, (0, -1))


def test_res_threshold_brute_force():
    R = fp.res_factor()
    m = R.res
    rng = random.Random(2)
    for _ in range(10):
        d = la.add(la.scale(rng.randint(1, 2), m.zero_section),
                   m.frame_vector(tuple(rng.randint(-1, 1) for _ in range(8))))
        t = fp.nef_threshold(R, d)
        direct = -min(m.pair(d, s) for s in sf.res_extremal_witnesses(m, 4))
        cert = sf.res_nef_test(m, d)
        assert t == -cert.value == -m.pair(d, sf.res_section_class(m, cert.frame_point))
        assert direct <= t
        if m.height(cert.frame_point) <= 4:
            assert direct == t
        shifted = la.add(d, la.scale(t, m.fiber))
        assert sf.res_nef_test(m, shifted).nef
        assert not sf.res_nef_test(m, la.add(shifted, la.scale(-1, m.fiber))).nef


def test_decompose_examples():
    dec = fp.decompose_nef(F0F0, (2, 1), (-2, 1))
    assert (dec.d1, dec.d2, dec.t) == ((0, 1), (0, 1), 2)
    dec = fp.decompose_nef(F0F0, (1, 1), (0, 1))
    assert dec.t == 0
    with pytest.raises(fp.NotNefError) as e:
        fp.decompose_nef(F0F0, (0, -1), (0, 1))
    assert e.value.value < 0
    assert fp.product_nef_test(F0F0, (1, 0), (0, 0)).nef


def test_example_nef_pairs_with_all_curves():
    lat = sf.blowup_lattice(4)
    d = (2, -1, -1, -1, -1)
    vals = {c: lat.pair(d, c) for c in sf.enumerate_neg_curves(lat).classes}
    assert all(v >= 0 for v in vals.values())
    assert sorted(c for c, v in vals.items() if v == 0) == sorted(
        c for c in vals if c[0] == 1)


def test_example_decomposability():
    emb1 = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0), (0, 0, 0))
    emb2 = ((1, 0, 0), (0, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1))
    nef2 = sf.nef_cone_delpezzo(sf.blowup_lattice(2))
    res = fp.decomposability_over_surface_base(emb1, emb2, nef2, nef2, (2, -1, -1, -1, -1))
    assert not res.member and la.dot(res.separator, (2, -1, -1, -1, -1)) < 0
    assert fp.decomposability_over_surface_base(emb1, emb2, nef2, nef2, (2, 0, 0, 0, 0)).member
    d = la.add(la.matvec(emb1, (1, -1, 0)), la.matvec(emb2, (1, -1, 0)))
    res = fp.decomposability_over_surface_base(emb1, emb2, nef2, nef2, d)
    assert res.member
    assert la.lincomb(res.coefficients, res.rays, 5) == d


def test_correspondence_examples():
    rep = fp.extremal_correspondence_check(F0F0)
    assert rep.ok and len(rep.sum_rays) == 3
    m = fp.build_fiber_product(fp.blowup_factor(2), fp.blowup_factor(2))
    rep = fp.extremal_correspondence_check(m)
    assert rep.ok and len(rep.sum_rays) == 3 + 3 - 1
    with pytest.raises(ValueError, match="use sampled variant"):
        fp.extremal_correspondence_check(fp.build_fiber_product(fp.res_factor(), F0))


def test_degenerate_right_factor():
    line = fp.FiberedFactor("pt", ((0, 1), (1, 0)), (1, 0), (0, 1), ((1, 0),),
                            mori=((0, 1), (1, 0)))
    m = fp.build_fiber_product(fp.blowup_factor(2), line)
    total = fp.sum_cone(m)
    left = dd_convert(PolyCone(m.rank, rays=[la.matvec(m.pull_left, r)
                                             for r in fp.blowup_factor(2).nef_cone().rays]))
    for r in left.rays:
        assert total.contains(r)


MODELS = [("f0", "f0"), ("f0", "blowup:1"), ("blowup:1", "blowup:2"), ("blowup:2", "blowup:2"),
          ("blowup:1", "f0")]


@pytest.mark.parametrize("names", MODELS)
def test_decompose_properties(names):
    m = fp.build_fiber_product(*map(fp.factor_preset, names))
    total = fp.sum_cone(m)
    rng = random.Random(7)
    for _ in range(40):
        x = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(m.rank))
        d1, d2 = m.split(x)
        v = fp.product_nef_test(m, d1, d2)
        assert v.nef == member(total, x)[0]
        if v.nef:
            dec = v.decomposition
            assert m.pull(dec.d1, dec.d2) == la.vec(x)
            assert m.left.nef_test(dec.d1)[0] and m.right.nef_test(dec.d2)[0]
            for c in m.left.vertical_curves:
                assert m.left.pair(dec.d1, c) >= 0
            lo, hi = dec.interval
            mid = (Fraction(lo) + Fraction(hi)) / 2
            assert m.left.nef_test(la.sub(d1, la.scale(mid, m.left.fiber)))[0]
            assert m.right.nef_test(la.add(d2, la.scale(mid, m.right.fiber)))[0]
        else:
            assert m.is_curve(v.curve) and v.value < 0
            assert m.curve_pairing(d1, d2, v.curve) == v.value
            assert la.dot(m.curve_functional(v.curve), x) == v.value


@given(st.lists(st.integers(-8, 8), min_size=3, max_size=3))
def test_f0_product_matches_sum_cone(x):
    x = tuple(x)
    d1, d2 = F0F0.split(x)
    v = fp.product_nef_test(F0F0, d1, d2)
    assert v.nef == oracles.in_cone_brute(list(fp.sum_cone(F0F0).rays), x, 3)
