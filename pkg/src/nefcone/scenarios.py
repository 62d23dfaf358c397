"""Built-in reproductions and JSON scenarios, producing deterministic reports."""

import json
import random
import time
from fractions import Fraction

from . import linalg as la
from . import surface as sf
from . import fibprod as fp
from . import fundomain as fd
from .cone import (PolyCone, ConeError, dd_convert, extremal_rays, member, minkowski_sum,
                   is_strict, dual_cone, equal, cone_from_json, cone_to_json, map_cone)

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 20
DEFAULT_HEIGHT = 6


class SchemaError(ValueError):
    """Malformed scenario document."""


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, PolyCone):
        return cone_to_json(x) if x.rays is not None and x.facets is not None else \
            {"dim": x.ambient_dim, "facets": jsonable(x.facets)}
    raise TypeError(f"cannot serialise {type(x).__name__}")


class Report:
    def __init__(self, name, seed=None, bounds=None):
        self.name = name
        self.seed = seed
        self.bounds = dict(bounds or {})
        self.verdicts = []
        self.certification = {}
        self.data = {}
        self.elapsed = None

    def check(self, name, passed, value=None, certificate=None):
        self.verdicts.append({"name": name, "pass": bool(passed),
                              "value": value, "certificate": certificate})
        return passed

    @property
    def passed(self):
        return all(v["pass"] for v in self.verdicts)

    def to_dict(self, timing=False):
        out = {"scenario": self.name, "seed": self.seed, "bounds": self.bounds,
               "passed": self.passed, "verdicts": self.verdicts,
               "certification": self.certification}
        if self.data:
            out["data"] = self.data
        out = jsonable(out)
        if timing and self.elapsed is not None:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# builtins


def _example_3_3(report, seed, L):
    lat = sf.blowup_lattice(4)
    d = (2, -1, -1, -1, -1)
    nef4 = sf.nef_cone_delpezzo(lat)
    ok, coeffs = member(nef4, d)
    report.check("D_nef", ok, ok, {"rays": nef4.rays, "coefficients": coeffs})
    curves = sf.enumerate_neg_curves(lat).classes
    pairings = {lat.label(c): lat.pair(d, c) for c in curves}
    lines = [c for c in curves if c[0] == 1]
    excs = [c for c in curves if c[0] == 0]
    report.check("D_pairings", len(lines) == 6 and len(excs) == 4
                 and all(lat.pair(d, c) == 0 for c in lines)
                 and all(lat.pair(d, c) == 1 for c in excs), pairings)
    emb1 = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0), (0, 0, 0))
    emb2 = ((1, 0, 0), (0, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1))
    nef2 = sf.nef_cone_delpezzo(sf.blowup_lattice(2))
    line = (1, -1, -1)
    report.check("D_is_sum_of_lines",
                 la.add(la.matvec(emb1, line), la.matvec(emb2, line)) == d)
    res = fp.decomposability_over_surface_base(emb1, emb2, nef2, nef2, d)
    total = minkowski_sum(map_cone(nef2, emb1), map_cone(nef2, emb2))
    sep = res.separator
    valid = (not res.member and la.dot(sep, d) < 0
             and all(la.dot(sep, r) >= 0 for r in total.rays))
    report.check("decomposable", valid, res.member,
                 {"separator": sep, "separator_on_D": la.dot(sep, d) if sep else None})


NEG_COUNTS = {0: 0, 1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


def _delpezzo(k):
    def run(report, seed, L):
        lat = sf.blowup_lattice(k)
        curves = sf.enumerate_neg_curves(lat).classes
        report.check("neg_curve_count", len(curves) == NEG_COUNTS[k], len(curves))
        report.check("adjunction", all(lat.pair(c, c) == -1 and -lat.pair(lat.canonical_class, c) == 1
                                       for c in curves))
        if k <= 7:
            nef = sf.nef_cone_delpezzo(lat)
            report.data["nef_rays"] = nef.rays
            report.check("nef_ray_count", True, len(nef.rays))
            mori = dd_convert(PolyCone(lat.rank, rays=sf.mori_generators(lat)))
            # the dual of the nef cone, in curve coordinates, is the Mori cone
            dual_curves = PolyCone(lat.rank, rays=[la.solve(lat.gram, f) for f in nef.facets])
            report.check("dual_round_trip", equal(dual_curves, mori)
                         and equal(dual_cone(dual_cone(nef)), nef))
            bad = [c for c in curves if member(nef, c)[0]]
            report.check("curves_not_nef", not bad, None, {"nef_curves": bad} if bad else None)
        else:
            nef = sf.nef_cone_delpezzo(lat, with_rays=False)
            report.check("nef_facet_count", len(nef.facets) == 240, len(nef.facets))
            anti = la.neg(lat.canonical_class)
            report.check("anticanonical_nef", all(la.dot(f, anti) >= 0 for f in nef.facets))
            report.check("curves_not_nef", all(lat.pair(c, c) < 0 for c in curves))
            report.certification["nef_cone"] = "facets only"
    return run


def _res_nef_demo(report, seed, L, samples=100, height=DEFAULT_HEIGHT):
    m = sf.res_model()
    c = sf.res_nef_test(m, m.fiber)
    report.check("f_nef", c.nef, c.nef, {"curve": c.curve, "value": c.value})
    c = sf.res_nef_test(m, m.zero_section)
    report.check("O_not_nef", not c.nef, c.nef, {"curve": c.curve, "value": c.value})
    a = la.add(m.zero_section, la.scale(2, m.fiber))
    c = sf.res_nef_test(m, a)
    report.check("O_plus_2f_nef", c.nef and c.value == 1 and not any(c.frame_point),
                 c.value, {"frame_point": c.frame_point, "radius": c.info["radius"]})
    rng = random.Random(seed)
    agree = tested = 0
    mismatches = []
    drawn = 0
    while tested < samples and drawn < 20 * samples:
        drawn += 1
        d = _random_res_class(m, rng)
        bound = sf.certified_height_bound(m, d)
        if bound is None or bound > height:
            continue
        tested += 1
        oracle = sf.res_nef_test(m, d).nef
        trunc = sf.truncated_nef_test(m, d, height)
        if oracle == trunc:
            agree += 1
        else:
            mismatches.append(d)
    report.check("truncation_agreement", not mismatches and tested > 0,
                 {"tested": tested, "agree": agree, "drawn": drawn}, {"mismatches": mismatches} if mismatches else None)


def _random_res_class(m, rng):
    c = rng.randint(1, 3)
    v = [0] * 8
    for i in rng.sample(range(8), rng.randint(0, 3)):
        v[i] = rng.choice((-1, 1))
    base = la.add(la.scale(c, m.zero_section), m.frame_vector(v))
    value, _, _ = sf.res_section_minimum(m, base)
    n = -value + rng.randint(-2, 2)
    return la.vec(la.add(base, la.scale(n, m.fiber)))


def _res_growth(report, seed, L, bounds=(0, 1, 2, 3)):
    m = sf.res_model()
    counts = [len(sf.res_extremal_witnesses(m, b)) for b in bounds]
    report.check("counts_strictly_increase", all(a < b for a, b in zip(counts, counts[1:])),
                 dict(zip(bounds, counts)))
    report.check("height_one", counts[1] == 241 if len(counts) > 1 else True, counts[1])
    w = sf.res_extremal_witnesses(m, 2)
    report.check("minus_one_classes", all(m.pair(s, s) == -1 and m.pair(s, m.fiber) == 1 for s in w)
                 and len({la.primitive(s) for s in w}) == len(w))


def _decompose_f0(report, seed, L):
    F = fp.f0_factor()
    model = fp.build_fiber_product(F, F)
    report.check("threshold_s_minus_2f", fp.nef_threshold(F, (-2, 1)) == 2, fp.nef_threshold(F, (-2, 1)))
    report.check("threshold_s", fp.nef_threshold(F, (0, 1)) == 0, fp.nef_threshold(F, (0, 1)))
    dec = fp.decompose_nef(model, (2, 1), (-2, 1))
    report.check("decompose", (dec.d1, dec.d2) == ((0, 1), (0, 1)),
                 {"d1": dec.d1, "d2": dec.d2, "t": dec.t, "interval": dec.interval})
    v = fp.product_nef_test(model, (0, -1), (0, 1))
    report.check("not_nef", not v.nef and v.value < 0 and model.is_curve(v.curve), v.nef,
                 {"curve": v.curve, "value": v.value})
    v = fp.product_nef_test(model, (1, 0), (0, 0))
    report.check("fiber_nef", v.nef, v.nef)


def _cor_1_6(report, seed, L):
    F = fp.f0_factor()
    model = fp.build_fiber_product(F, F)
    rep = fp.extremal_correspondence_check(model)
    report.check("bijection", rep.ok and len(rep.sum_rays) == 3,
                 {"sum_rays": rep.sum_rays,
                  "pulled": [[r, src] for r, src in sorted(rep.pulled.items())]},
                 {"spurious": rep.spurious, "lost": rep.lost} if not rep.ok else None)


def _fundomain_z2(report, seed, L):
    quad = PolyCone.from_rays([(1, 0), (0, 1)])
    act = fd.GroupAction(2, [((0, 1), (1, 0))], quad, name="swap")
    report.check("ball_size", len(fd.orbit_ball(act, L)) == 2, len(fd.orbit_ball(act, L)))
    cand = fd.dirichlet_domain(act, (2, 1), L)
    report.check("domain", cand.domain.rays == ((0, 1), (1, 1)),
                 {"rays": cand.domain.rays, "facets": cand.domain.facets})
    report.certification["domain"] = cand.certification
    samples = [(3, 1), (1, 3), (2, 2)]
    tile = fd.tiling_check(cand, act, samples, L)
    report.check("coverage", tile.all_covered,
                 [{"sample": c.sample, "image": c.image} for c in tile.coverage])
    report.check("disjointness", tile.all_disjoint, None,
                 [{"element": d.element, "method": d.method, "certificate": d.certificate}
                  for d in tile.disjointness])
    swap = ((0, 1), (1, 0))
    boundary = (2, 2)
    report.check("boundary_shared", fd.domain_contains(cand, boundary)
                 and fd.domain_contains(cand, la.matvec(swap, boundary)))
    tiles = list(cand.domain.rays) + [la.matvec(swap, r) for r in cand.domain.rays]
    report.check("union_is_cone", equal(PolyCone.from_rays(tiles), quad))
    st = fd.trivial_stabilizer_search(act, L, 3)
    report.check("stabilizer", st.eta == (2, 1), st.eta)
    pr = fd.xi_perturb(act, (1, 1), L)
    report.check("perturb", pr.xi == (Fraction(8, 7), 1), {"xi": pr.xi, "eta": pr.eta})


def _res_samples(m, rng, count):
    return fd.SectionConeOracle(m).sample(rng, count)


def _fundomain_e8(report, seed, L, samples=DEFAULT_SAMPLES):
    m = sf.res_model()
    simple = fd.res_translation_action(m, "simple")
    report.check("simple_ball_L1", len(fd.orbit_ball(simple, 1)) == 17, len(fd.orbit_ball(simple, 1)))
    cand, act = fd.res_dirichlet_candidate(m)
    report.check("domain_facets", len(cand.domain.facets) == 241, len(cand.domain.facets))
    report.check("containment", cand.info["containment"] == "root decomposition",
                 cand.info["containment"])
    report.certification["domain"] = cand.certification
    rng = random.Random(seed)
    pts = _res_samples(m, rng, samples)
    tile = fd.tiling_check(cand, act, pts, L)
    report.check("coverage", tile.all_covered,
                 [{"sample": c.sample, "translation": c.word, "length": c.length}
                  for c in tile.coverage])
    report.check("disjointness", tile.all_disjoint, len(tile.disjointness),
                 {"methods": sorted({d.method for d in tile.disjointness})})
    eta = pts[0]
    moved = True
    for _ in range(20):
        w = tuple(rng.randint(-2, 2) for _ in range(8))
        if any(w):
            moved &= la.matvec(sf.res_translation_matrix(m, w), eta) != eta
    report.check("free_orbit", moved, {"eta": eta})


def _schoen_19(report, seed, L, samples=DEFAULT_SAMPLES):
    m = sf.res_model()
    R = fp.res_factor()
    model = fp.build_fiber_product(R, R)
    report.check("ambient_rank", model.rank == 19, model.rank)
    cand, act = fd.res_dirichlet_candidate(m)
    prod = fd.product_domain(cand, cand, model)
    report.check("product_domain", len(prod.domain.facets) > 0, len(prod.domain.facets))
    report.certification["domain"] = prod.certification
    action = fd.schoen_action(model)
    rng = random.Random(seed)
    left = _res_samples(m, rng, samples)
    right = _res_samples(m, rng, samples)
    pts = [model.pull(a, b) for a, b in zip(left, right)]
    tile = fd.tiling_check(prod, action, pts, L)
    report.check("coverage", tile.all_covered,
                 [{"translation": c.word, "length": c.length} for c in tile.coverage])
    report.check("disjointness", tile.all_disjoint, len(tile.disjointness),
                 {"methods": sorted({d.method for d in tile.disjointness})})


BUILTINS = {
    "example-3-3": (_example_3_3, 1),
    **{f"delpezzo-nef-{k}": (_delpezzo(k), 1) for k in range(9)},
    "res-nef-demo": (_res_nef_demo, 1),
    "res-extremal-growth": (_res_growth, 1),
    "decompose-f0": (_decompose_f0, 1),
    "cor-1-6-f0": (_cor_1_6, 1),
    "fundomain-z2": (_fundomain_z2, 4),
    "fundomain-e8": (_fundomain_e8, 1),
    "schoen-19": (_schoen_19, 2),
}


def list_builtins():
    return list(BUILTINS)


def run_builtin(name, seed=None, word_bound=None):
    if name not in BUILTINS:
        raise SchemaError(f"unknown builtin {name!r}")
    fn, default_l = BUILTINS[name]
    seed = DEFAULT_SEED if seed is None else seed
    L = default_l if word_bound is None else word_bound
    if L < 0:
        raise SchemaError("word bound must be nonnegative")
    report = Report(name, seed, {"word_bound": L})
    start = time.perf_counter()
    fn(report, seed, L)
    report.elapsed = time.perf_counter() - start
    return report


# --------------------------------------------------------------------------
# scenario documents


KINDS = ("cone-op", "surface", "fibprod", "fundomain", "builtin")


def _need(params, key, kind=None):
    if key not in params:
        raise SchemaError(f"missing parameter {key!r}")
    v = params[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"parameter {key!r} has the wrong type")
    return v


def _vector(x):
    if not isinstance(x, list):
        raise SchemaError("a vector must be a list")
    try:
        return la.vec(x)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad vector entry: {e}") from None


def _matrix(x):
    if not isinstance(x, list) or not x:
        raise SchemaError("a matrix must be a nonempty list of rows")
    return tuple(_vector(r) for r in x)


def _cone(x):
    try:
        return cone_from_json(x)
    except (ConeError, ValueError, TypeError, AttributeError) as e:
        raise SchemaError(f"bad cone literal: {e}") from None


def _run_cone_op(report, p):
    op = _need(p, "op", str)
    cone = _cone(_need(p, "cone"))
    if op == "dd_convert":
        c = dd_convert(cone)
        report.check("dd_convert", True, cone_to_json(c))
    elif op == "extremal_rays":
        try:
            report.check("extremal_rays", True, extremal_rays(cone))
        except ConeError as e:
            report.check("extremal_rays", False, str(e), {"line": e.witness})
    elif op == "member":
        ok, cert = member(cone, _vector(_need(p, "vector")))
        report.check("member", ok, ok, {"coefficients" if ok else "separator": cert})
    elif op == "minkowski_sum":
        report.check("minkowski_sum", True, cone_to_json(minkowski_sum(cone, _cone(_need(p, "other")))))
    elif op == "is_strict":
        s = is_strict(cone)
        report.check("is_strict", True, s)
    else:
        raise SchemaError(f"unknown cone op {op!r}")


def _run_surface(report, p):
    op = _need(p, "op", str)
    if op in ("negcurves", "nef"):
        k = _need(p, "k", int)
        try:
            lat = sf.blowup_lattice(k)
            if op == "negcurves":
                cl = sf.enumerate_neg_curves(lat).classes
                report.check("negcurves", True, {"count": len(cl), "classes": cl})
            else:
                nef = sf.nef_cone_delpezzo(lat)
                report.check("nef", True, cone_to_json(nef))
        except ValueError as e:
            raise SchemaError(str(e)) from None
    elif op == "res-nef":
        m = sf.res_model()
        d = _vector(_need(p, "class"))
        if len(d) != m.rank:
            raise SchemaError("class must have 10 coordinates")
        c = sf.res_nef_test(m, d)
        report.check("res_nef", c.nef, c.nef,
                     {"curve": c.curve, "value": c.value, "frame_point": c.frame_point})
    else:
        raise SchemaError(f"unknown surface op {op!r}")


def _preset(name):
    try:
        return fp.factor_preset(name)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def _run_fibprod(report, p):
    op = _need(p, "op", str)
    if op == "example-3-3":
        _example_3_3(report, None, None)
        return
    model = fp.build_fiber_product(_preset(_need(p, "left", str)), _preset(_need(p, "right", str)))
    if op == "decompose":
        d1, d2 = _vector(_need(p, "d1")), _vector(_need(p, "d2"))
        if len(d1) != model.left.rank or len(d2) != model.right.rank:
            raise SchemaError("class dimensions do not match the factors")
        v = fp.product_nef_test(model, d1, d2)
        if v.nef:
            dec = v.decomposition
            report.check("nef", True, True, {"d1": dec.d1, "d2": dec.d2, "t": dec.t,
                                             "interval": dec.interval})
        else:
            report.check("nef", False, False, {"curve": v.curve, "value": v.value})
    elif op == "corr-check":
        try:
            rep = fp.extremal_correspondence_check(model)
        except ValueError as e:
            raise SchemaError(str(e)) from None
        report.check("bijection", rep.ok, {"sum_rays": rep.sum_rays},
                     {"spurious": rep.spurious, "lost": rep.lost})
    else:
        raise SchemaError(f"unknown fibprod op {op!r}")


def _run_fundomain(report, p, L):
    op = _need(p, "op", str)
    gens = [_matrix(g) for g in _need(p, "generators", list)]
    cone = _cone(_need(p, "cone"))
    try:
        act = fd.GroupAction(cone.ambient_dim, gens, cone)
    except ValueError as e:
        raise SchemaError(str(e)) from None
    if op == "stabilizer":
        st = fd.trivial_stabilizer_search(act, L, p.get("search_box", 5))
        report.check("stabilizer", True, st.eta)
        report.certification["stabilizer"] = st.certification
        return
    xi = _vector(_need(p, "xi"))
    cand = fd.dirichlet_domain(act, xi, L)
    report.certification["domain"] = cand.certification
    report.check("dirichlet", True, cone_to_json(cand.domain) if cand.domain.rays is not None
                 else {"facets": cand.domain.facets})
    if op == "tile":
        samples = [_vector(s) for s in _need(p, "samples", list)]
        tile = fd.tiling_check(cand, act, samples, L)
        uncovered = [c.sample for c in tile.coverage if not c.covered]
        report.check("coverage", not uncovered, [c.image for c in tile.coverage],
                     {"uncovered": uncovered} if uncovered else None)
        report.check("disjointness", tile.all_disjoint, None,
                     [{"element": d.element, "method": d.method, "certificate": d.certificate}
                      for d in tile.disjointness])
    elif op != "dirichlet":
        raise SchemaError(f"unknown fundomain op {op!r}")


def run_scenario(doc):
    """Run a scenario document (dict or JSON text) and return a ``Report``."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError("scenario must be an object")
    kind = _need(doc, "kind", str)
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    params = doc.get("parameters", {})
    if not isinstance(params, dict):
        raise SchemaError("parameters must be an object")
    seed = doc.get("seed", DEFAULT_SEED)
    bounds = doc.get("bounds", {})
    if not isinstance(seed, int) or not isinstance(bounds, dict):
        raise SchemaError("seed must be an integer and bounds an object")
    if kind == "builtin":
        rep = run_builtin(_need(params, "name", str), seed, bounds.get("word_bound"))
        if "name" in doc:
            rep.name = doc["name"]
        return rep
    L = bounds.get("word_bound", 4)
    if not isinstance(L, int) or L < 0:
        raise SchemaError("word_bound must be a nonnegative integer")
    report = Report(doc.get("name", kind), seed, bounds)
    start = time.perf_counter()
    if kind == "cone-op":
        _run_cone_op(report, params)
    elif kind == "surface":
        _run_surface(report, params)
    elif kind == "fibprod":
        _run_fibprod(report, params)
    else:
        _run_fundomain(report, params, L)
    report.elapsed = time.perf_counter() - start
    return report
