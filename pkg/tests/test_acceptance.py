"""End-to-end acceptance criteria; one PASS/FAIL line each in the terminal summary."""

import random
import time
from fractions import Fraction

from nefcone import linalg as la
from nefcone import fibprod as fp
from nefcone import fundomain as fd
from nefcone import surface as sf
from nefcone import scenarios as sc
from nefcone.cone import PolyCone, dd_convert, equal, member
from nefcone.lattice import upper_form
from conftest import builtin_report
import oracles


def verdicts(report):
    return {v["name"]: v for v in report.to_dict()["verdicts"]}


def test_criterion_01_four_point_example(acceptance):
    start = time.perf_counter()
    lat = sf.blowup_lattice(4)
    d = (2, -1, -1, -1, -1)
    nef = member(sf.nef_cone_delpezzo(lat), d)[0]
    lines = [(1,) + tuple(-1 if i in (a, b) else 0 for i in range(4))
             for a in range(4) for b in range(a + 1, 4)]
    excs = [la.unit(5, i) for i in range(1, 5)]
    pairings = (all(lat.pair(d, c) == 0 for c in lines) and len(lines) == 6
                and all(lat.pair(d, e) == 1 for e in excs))
    rep = sc.run_builtin("example-3-3")
    v = verdicts(rep)
    cert = v["decomposable"]["certificate"]
    refused = v["decomposable"]["value"] is False and cert["separator_on_D"] < 0
    ok = nef and pairings and refused and rep.passed
    elapsed = time.perf_counter() - start
    assert acceptance(1, "four-point example: nef, pairings, not decomposable", ok, elapsed, 1)


MINKOWSKI_MODELS = [("f0", "f0"), ("f0", "blowup:1"), ("blowup:1", "blowup:1"),
                    ("blowup:2", "f0"), ("f0", "blowup:2")]


def test_criterion_02_product_test_matches_minkowski(acceptance):
    start = time.perf_counter()
    rng = random.Random(2)
    ok = True
    counts = []
    for names in MINKOWSKI_MODELS:
        m = fp.build_fiber_product(*map(fp.factor_preset, names))
        assert m.rank <= 5
        total = fp.sum_cone(m)
        nef = 0
        for i in range(200):
            x = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(m.rank))
            if i % 2:
                # half the samples sit near the cone so both verdicts occur often
                near = la.lincomb([rng.randint(0, 3) for _ in total.rays], total.rays, m.rank)
                x = la.add(near, la.scale(Fraction(1, 8), x))
            verdict = fp.product_nef_test(m, *m.split(x)).nef
            ok &= verdict == member(total, x)[0]
            nef += verdict
        counts.append(nef)
    elapsed = time.perf_counter() - start
    assert acceptance(2, "product nef test equals sum-cone membership", ok, elapsed, 30,
                      f"{len(counts)} models x 200 classes, nef counts {counts}")


CORRESPONDENCE_MODELS = [("f0", "f0"), ("f0", "blowup:1"), ("blowup:1", "blowup:2"),
                         ("blowup:2", "blowup:2"), ("blowup:2", "blowup:3"),
                         ("blowup:3", "blowup:3")]


def test_criterion_03_extremal_correspondence(acceptance):
    start = time.perf_counter()
    ok = True
    for names in CORRESPONDENCE_MODELS:
        m = fp.build_fiber_product(*map(fp.factor_preset, names))
        rep = fp.extremal_correspondence_check(m)
        ok &= rep.ok and not rep.spurious and not rep.lost
        # every factor ray pulls back to a sum ray and every sum ray comes from a factor
        pulled = {la.primitive(la.matvec(m.pull_left, r)) for r in m.left.nef_cone().rays}
        pulled |= {la.primitive(la.matvec(m.pull_right, r)) for r in m.right.nef_cone().rays}
        ok &= pulled == set(rep.sum_rays)
    elapsed = time.perf_counter() - start
    assert acceptance(3, "sum-cone extremal rays are pulled back factor rays", ok, elapsed, 30,
                      f"{len(CORRESPONDENCE_MODELS)} models")


def test_criterion_04_delpezzo_counts(acceptance):
    start = time.perf_counter()
    expected = {2: 3, 3: 6, 4: 10, 5: 16, 6: 27}
    ok = True
    for k, n in expected.items():
        brute = oracles.brute_neg_curves(k, 3, 3)
        lat = sf.blowup_lattice(k)
        got = list(sf.enumerate_neg_curves(lat).classes)
        ok &= len(brute) == n and got == brute
        nef = sf.nef_cone_delpezzo(lat)
        back = dd_convert(PolyCone(lat.rank, facets=nef.facets))
        forth = dd_convert(PolyCone(lat.rank, rays=nef.rays))
        ok &= back.rays == nef.rays and forth.facets == nef.facets
    elapsed = time.perf_counter() - start
    assert acceptance(4, "(-1)-curve counts 3/6/10/16/27 and nef round trip", ok, elapsed, 60)


def test_criterion_05_res_model(acceptance):
    start = time.perf_counter()
    m = sf.res_model()
    f, o = m.fiber, m.zero_section
    ok = m.pair(f, f) == 0 and m.pair(o, o) == -1 and m.pair(f, o) == 1
    g = [[m.pair(a, b) for b in m.frame_basis] for a in m.frame_basis]
    neg = [[-x for x in row] for row in g]
    try:
        upper_form(neg)
        definite = True
    except ValueError:
        definite = False
    ok &= definite and la.det(g) == 1 and all(g[i][i] % 2 == 0 for i in range(8))
    height_one = [s for s in sf.res_extremal_witnesses(m, 1)
                  if m.height(la.to_int(m.frame_part(s))) == 1]
    ok &= len(height_one) == 240
    rng = random.Random(5)
    gram = m.lattice.gram
    for _ in range(50):
        w = tuple(rng.randint(-3, 3) for _ in range(8))
        w2 = tuple(rng.randint(-3, 3) for _ in range(8))
        t, t2 = sf.res_translation_matrix(m, w), sf.res_translation_matrix(m, w2)
        ok &= la.matmul(la.matmul(la.transpose(t), gram), t) == gram
        ok &= la.matmul(t, t2) == sf.res_translation_matrix(m, la.add(w, w2))
    elapsed = time.perf_counter() - start
    assert acceptance(5, "elliptic surface lattice and translation group law", ok, elapsed, 60)


def test_criterion_06_res_nef_oracle(acceptance):
    rep = builtin_report("res-nef-demo")
    v = verdicts(rep)
    tested = v["truncation_agreement"]["value"]["tested"]
    ok = rep.passed and tested >= 100 and v["O_plus_2f_nef"]["value"] == 1
    assert acceptance(6, "elliptic surface nef oracle vs truncated conditions", ok,
                      rep.elapsed, 120, f"{tested} classes")


def _nef_res_class(m, rng):
    c = rng.randint(1, 3)
    v = [0] * 8
    for i in rng.sample(range(8), rng.randint(0, 3)):
        v[i] = rng.choice((-1, 1))
    base = la.add(la.scale(c, m.zero_section), m.frame_vector(v))
    value, _, _ = sf.res_section_minimum(m, base)
    return la.add(base, la.scale(-value, m.fiber))


def _tight_f0(factor, rng):
    d = (0, rng.randint(0, 3))
    t = fp.nef_threshold(factor, d)
    return la.add(d, la.scale(t, factor.fiber))


def _check_model(m, left_class, rng, want):
    """Draw classes on the nef boundary, shift by the fibre, and check the verdicts."""
    found = {True: 0, False: 0}
    ok = True
    while min(found.values()) < want:
        d1 = left_class(rng)
        d2 = _tight_f0(m.right, rng)
        k = rng.choice((-2, -1, 0, 1, 2))
        x = la.sub(m.pull(d1, d2), la.scale(Fraction(k, rng.randint(1, 3)), m.fiber))
        nef = k <= 0
        if found[nef] >= want:
            continue
        found[nef] += 1
        a, b = m.split(x)
        verdict = fp.product_nef_test(m, a, b)
        ok &= verdict.nef == nef
        if verdict.nef:
            dec = verdict.decomposition
            ok &= m.pull(dec.d1, dec.d2) == la.vec(x)
            ok &= m.left.nef_test(dec.d1)[0] and m.right.nef_test(dec.d2)[0]
        else:
            ok &= m.is_curve(verdict.curve) and verdict.value < 0
            ok &= la.dot(m.curve_functional(verdict.curve), x) < 0
    return ok


def test_criterion_07_decomposition(acceptance):
    start = time.perf_counter()
    rng = random.Random(7)
    F0 = fp.f0_factor()
    f0f0 = fp.build_fiber_product(F0, F0)
    res = fp.build_fiber_product(fp.res_factor(), F0)
    ok = _check_model(f0f0, lambda r: _tight_f0(F0, r), rng, 100)
    total = fp.sum_cone(f0f0)
    for _ in range(50):
        x = tuple(rng.randint(-5, 5) for _ in range(3))
        ok &= fp.product_nef_test(f0f0, *f0f0.split(x)).nef == member(total, x)[0]
    m = res.left.res
    ok &= _check_model(res, lambda r: _nef_res_class(m, r), rng, 100)
    elapsed = time.perf_counter() - start
    assert acceptance(7, "decomposition or violating curve on F0xF0 and RESxF0", ok, elapsed, 120,
                      "100 nef + 100 non-nef per model")


def test_criterion_08_z2_toy(acceptance):
    start = time.perf_counter()
    rep = sc.run_builtin("fundomain-z2", word_bound=1)
    quad = PolyCone.from_rays([(1, 0), (0, 1)])
    act = fd.GroupAction(2, [((0, 1), (1, 0))], quad)
    cand = fd.dirichlet_domain(act, (2, 1), 1)
    wanted = PolyCone(2, facets=[(-1, 1), (1, 0)])
    tile = fd.tiling_check(cand, act, [(3, 1), (1, 3), (2, 2), (5, 4)], 1)
    ok = rep.passed and equal(cand.domain, wanted) and tile.all_covered and tile.all_disjoint
    elapsed = time.perf_counter() - start
    assert acceptance(8, "swap action domain {x <= y} in the quadrant tiles", ok, elapsed, 1)


def test_criterion_09_schoen(acceptance):
    rep = builtin_report("schoen-19")
    v = verdicts(rep)
    samples = len(v["coverage"]["value"])
    pairs = v["disjointness"]["value"]
    ok = (rep.passed and v["ambient_rank"]["value"] == 19 and samples >= 20
          and pairs == 545 - 1 and rep.bounds["word_bound"] == 2)
    assert acceptance(9, "rank 19 product domain, coverage and disjointness", ok,
                      rep.elapsed, 300, f"{samples} samples, {pairs} ball elements")


def test_criterion_10_growth(acceptance):
    start = time.perf_counter()
    m = sf.res_model()
    counts = [len(sf.res_extremal_witnesses(m, b)) for b in (0, 1, 2)]
    ok = counts[0] < counts[1] < counts[2]
    elapsed = time.perf_counter() - start
    assert acceptance(10, "(-1)-class counts grow with the height bound", ok, elapsed, 60,
                      "counts " + "/".join(map(str, counts)))
