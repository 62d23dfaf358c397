"""Fundamental domains for groups of lattice automorphisms acting on a cone.

Group elements are integer matrices acting on column vectors (divisor
classes). A linear functional ``xi`` is a covector; the Dirichlet domain is
the part of the preserved cone where ``xi`` is smallest along the orbit:
``xi . x <= xi . (g x)`` for all ``g`` in a ball of words.

Preserved cones are either ``PolyCone`` or an oracle object; see
``SectionConeOracle`` for the elliptic surface case.
"""

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .cone import PolyCone, dd_convert, is_strict
from . import surface as sf

DEFAULT_BALL_CAP = 100000


def ball_cap():
    raw = os.environ.get("NEFCONE_BALL_CAP")
    if raw is None:
        return DEFAULT_BALL_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"NEFCONE_BALL_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("NEFCONE_BALL_CAP must be positive")
    return cap


class BallCapExceeded(RuntimeError):
    def __init__(self, cap):
        super().__init__(f"orbit ball exceeds the cap of {cap} elements")
        self.cap = cap


def _mul(a, b):
    """Integer matrix product, skipping zero entries."""
    n = len(b[0])
    out = []
    for row in a:
        acc = [0] * n
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def _covector_after(phi, g):
    """The covector ``x -> phi . (g x)``."""
    return la.matvec(la.transpose(g), phi)


# --------------------------------------------------------------------------
# oracle cones


class SectionConeOracle:
    """Nef cone of a section model: the curves are ``f`` and all ``s(v)``."""

    def __init__(self, model):
        self.model = model
        self.rank = model.rank
        g = model.lattice.gram
        self._gram = g
        self.outer_facets = (la.matvec(g, model.fiber), la.matvec(g, model.zero_section))

    def contains(self, x):
        return sf.res_nef_test(self.model, x).nef

    def interior(self, x):
        """Ample test: positive on ``f`` and on every section."""
        m = self.model
        if m.pair(x, m.fiber) <= 0:
            return False
        value, _, _ = sf.res_section_minimum(m, x)
        return value > 0

    def dual_interior(self, xi):
        """Sufficient test that ``xi`` is positive on the cone minus the origin.

        ``xi = G A`` with ``A.A > 0`` and ``A.f > 0`` puts ``A`` inside the
        positive cone, which pairs positively with its closure, and every
        nef class lies in that closure.
        """
        a = la.solve(self._gram, xi)
        m = self.model
        return m.pair(a, a) > 0 and m.pair(a, m.fiber) > 0

    def section_facet(self, u):
        """Covector of ``x -> x.(s(u) - O)``."""
        m = self.model
        return la.matvec(self._gram, la.sub(sf.res_section_class(m, u), m.zero_section))

    def certify_subcone(self, facets):
        """Containment in the nef cone for a facet-described cone.

        Holds when the facets include ``x.O >= 0`` and ``x.(s(r) - O) >= 0``
        for every root ``r``: any ``s(u) - O`` is then a nonnegative
        combination of root terms and ``f`` (see ``surface.root_decomposition``).
        """
        have = {la.primitive(f) for f in facets}
        if la.primitive(self.outer_facets[1]) not in have:
            return False, "missing x.O >= 0"
        for r, h in sf.frame_vectors_up_to(self.model, 1):
            if h == 1 and la.primitive(self.section_facet(r)) not in have:
                return False, f"missing root facet {r}"
        return True, "root decomposition"

    def sample(self, rng, count, frame_range=2):
        """Ample classes ``c O + v + n f`` with random data."""
        m = self.model
        out = []
        while len(out) < count:
            c = rng.randint(1, 3)
            v = tuple(rng.randint(-frame_range, frame_range) for _ in range(m.frame_rank))
            base = la.add(la.scale(c, m.zero_section), m.frame_vector(v))
            value, _, _ = sf.res_section_minimum(m, base)
            n = -value + rng.randint(1, 4)
            x = la.vec(la.add(base, la.scale(n, m.fiber)))
            if self.interior(x):
                out.append(x)
        return out


class ProductConeOracle:
    """Nef cone of a fibre product, through the decomposition test."""

    def __init__(self, model):
        from . import fibprod
        self.model = model
        self.rank = model.rank
        self._fp = fibprod

    def contains(self, x):
        return self._fp.product_nef_test(self.model, *self.model.split(x)).nef

    def interior(self, x):
        # ample on the product iff some split has ample components
        m = self.model
        d1, d2 = m.split(x)
        try:
            dec = self._fp.decompose_nef(m, d1, d2)
        except self._fp.NotNefError:
            return False
        lo, hi = dec.interval
        if lo >= hi:
            return False
        mid = (Fraction(lo) + Fraction(hi)) / 2
        a = la.vec(la.sub(d1, la.scale(mid, m.left.fiber)))
        b = la.vec(la.add(d2, la.scale(mid, m.right.fiber)))
        return _factor_ample(m.left, a) and _factor_ample(m.right, b)


def _factor_ample(factor, d):
    if factor.polyhedral:
        return all(factor.pair(d, c) > 0 for c in factor.mori)
    return SectionConeOracle(factor.res).interior(d)


def _is_oracle(cone):
    return not isinstance(cone, PolyCone)


# --------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class GroupAction:
    rank: int
    generators: tuple
    preserved_cone: object
    gram: tuple = None
    reduce: object = None        # x -> (g, word, length) with g x in the domain
    certifier: object = None     # (g, domain facets) -> disjointness certificate or None
    name: str = "action"
    inverses: tuple = field(default=(), compare=False)
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(la.to_int(r) for r in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        invs = []
        for g in gens:
            if len(g) != self.rank or any(len(r) != self.rank for r in g):
                raise ValueError("generator has the wrong shape")
            if abs(la.det(g)) != 1:
                raise ValueError("generator is not invertible over the integers")
            invs.append(tuple(la.to_int(r) for r in la.inverse(g)))
        object.__setattr__(self, "inverses", tuple(invs))


def validate_action(action, rng=None, samples=20):
    """Check isometry and cone preservation; returns a dict of findings.

    Polyhedral cones are checked exactly on rays, oracle cones on
    ``samples`` random interior points.
    """
    out = {"isometry": None, "preserves_cone": True, "cone_check": "exact"}
    if action.gram is not None:
        g = action.gram
        out["isometry"] = all(la.matmul(la.matmul(la.transpose(m), g), m) == g
                              for m in action.generators + action.inverses)
    cone = action.preserved_cone
    mats = action.generators + action.inverses
    if _is_oracle(cone):
        rng = rng or random.Random(0)
        pts = cone.sample(rng, samples)
        out["cone_check"] = f"sampled {samples}"
        out["preserves_cone"] = all(cone.contains(la.matvec(m, x)) for m in mats for x in pts)
    else:
        c = dd_convert(cone)
        out["preserves_cone"] = all(c.contains(la.matvec(m, r)) for m in mats for r in c.rays)
    return out


def _ball(action, L):
    """BFS ball and whether it is closed under one more multiplication."""
    cap = ball_cap()
    ident = la.identity(action.rank)
    seen = {ident}
    order = [ident]
    frontier = [ident]
    steps = action.generators + action.inverses
    for _ in range(L):
        nxt = []
        for m in frontier:
            for g in steps:
                p = _mul(g, m)
                if p not in seen:
                    seen.add(p)
                    order.append(p)
                    nxt.append(p)
                    if len(order) > cap:
                        raise BallCapExceeded(cap)
        frontier = nxt
        if not frontier:
            return order, True
    for m in frontier:
        for g in steps:
            if _mul(g, m) not in seen:
                return order, False
    return order, True


def orbit_ball(action, L):
    """All products of at most ``L`` generators or inverses, identity first."""
    if L < 0:
        raise ValueError("word bound must be nonnegative")
    return _ball(action, L)[0]


# --------------------------------------------------------------------------
# Dirichlet domains


@dataclass(frozen=True)
class DomainCandidate:
    domain: PolyCone
    xi: tuple
    word_bound: int
    certification: str               # "exact-finite-group" or "bounded-word"
    info: dict = field(default_factory=dict, compare=False)


def _dual_interior(cone, xi):
    if _is_oracle(cone):
        return cone.dual_interior(xi)
    c = dd_convert(cone)
    return is_strict(c) and all(la.dot(xi, r) > 0 for r in c.rays)


def prune_pair_redundant(facets):
    """Drop facets that are positive multiples of the sum of two others."""
    facets = sorted({la.primitive(f) for f in facets})
    have = set(facets)
    drop = set()
    for i, a in enumerate(facets):
        for b in facets[i + 1:]:
            s = la.add(a, b)
            if any(s):
                p = la.primitive(s)
                if p in have and p != a and p != b:
                    drop.add(p)
    return [f for f in facets if f not in drop]


def dirichlet_domain(action, xi, L, materialize=None):
    """Dirichlet domain of ``xi`` over the ball of radius ``L``."""
    xi = la.vec(xi)
    cone = action.preserved_cone
    if not _dual_interior(cone, xi):
        raise ValueError("xi is not in the interior of the dual cone")
    ball, saturated = _ball(action, L)
    facets = []
    for g in ball[1:]:
        d = la.sub(_covector_after(xi, g), xi)
        if not any(d):
            raise ValueError("xi has nontrivial stabilizer; perturb")
        facets.append(d)
    info = {"ball_size": len(ball)}
    if _is_oracle(cone):
        facets += list(cone.outer_facets)
        facets = prune_pair_redundant(facets)
        ok, how = cone.certify_subcone(facets)
        info["containment"] = how if ok else f"unverified: {how}"
    else:
        facets += list(dd_convert(cone).facets)
        info["containment"] = "exact"
    dom = PolyCone(action.rank, facets=facets)
    if materialize is None:
        materialize = action.rank * len(dom.facets) <= 400
    if materialize:
        dom = dd_convert(dom)
        if any(la.dot(xi, r) <= 0 for r in dom.rays):
            raise AssertionError("xi is not positive on the domain")
    return DomainCandidate(dom, xi, L, "exact-finite-group" if saturated else "bounded-word", info)


def domain_contains(candidate, x):
    return all(la.dot(f, x) >= 0 for f in candidate.domain.facets)


def domain_interior(candidate, x):
    return all(la.dot(f, x) > 0 for f in candidate.domain.facets)


# --------------------------------------------------------------------------
# tiling


@dataclass(frozen=True)
class Coverage:
    sample: tuple
    covered: bool
    image: tuple = None
    word: object = None
    length: int = None


@dataclass(frozen=True)
class Disjointness:
    element: tuple
    disjoint: bool
    method: str
    certificate: tuple = None     # (y, z): lists of (coeff, facet) pairs


@dataclass(frozen=True)
class TilingReport:
    coverage: tuple
    disjointness: tuple
    word_bound: int

    @property
    def all_covered(self):
        return all(c.covered for c in self.coverage)

    @property
    def all_disjoint(self):
        return all(d.disjoint for d in self.disjointness)


def verify_disjointness_certificate(facets, g, cert):
    """Check ``sum y_i phi_i + sum z_j (phi_j o g^-1) = 0`` with ``y, z >= 0`` not all zero."""
    y, z = cert
    have = set(facets)
    if not y and not z:
        return False
    if any(c < 0 for c, _ in y) or any(c < 0 for c, _ in z):
        return False
    if not all(phi in have for _, phi in y) or not all(phi in have for _, phi in z):
        return False
    if all(c == 0 for c, _ in y) and all(c == 0 for c, _ in z):
        return False
    ginv = la.inverse(g)
    total = (0,) * len(g)
    for c, phi in y:
        total = la.add(total, la.scale(c, phi))
    for c, phi in z:
        total = la.add(total, la.scale(c, _covector_after(phi, ginv)))
    return not any(total)


def _opposing_pair(facets, g):
    have = set(facets)
    for phi in facets:
        psi = la.primitive(la.neg(_covector_after(phi, g)))
        if psi in have:
            # phi + c (psi o g^-1) = 0 for the positive c matching scales
            back = _covector_after(psi, la.inverse(g))
            c = next(Fraction(-a, b) for a, b in zip(phi, back) if b)
            return [(1, phi)], [(la.vec([c])[0], psi)]
    return None


def _lp_certificate(facets, g):
    """Gordan alternative by exact LP; None when interiors meet."""
    ginv = la.inverse(g)
    cols = list(facets) + [_covector_after(phi, ginv) for phi in facets]
    n = len(g)
    a = [tuple(col[i] for col in cols) for i in range(n)]
    a.append(tuple(1 for _ in cols))
    b = (0,) * n + (1,)
    ok, sol = la.nonneg_solution(a, b)
    if not ok:
        return None
    k = len(facets)
    y = [(sol[i], facets[i]) for i in range(k) if sol[i]]
    z = [(sol[k + i], facets[i]) for i in range(k) if sol[k + i]]
    return y, z


def interior_disjoint(candidate, action, g):
    """Exact test that the interiors of the domain and ``g`` (domain) are disjoint."""
    facets = list(candidate.domain.facets)
    attempts = []
    if action.certifier is not None:
        attempts.append(("certifier", lambda: action.certifier(g, facets)))
    attempts.append(("opposing-facets", lambda: _opposing_pair(facets, g)))
    attempts.append(("lp", lambda: _lp_certificate(facets, g)))
    for name, fn in attempts:
        cert = fn()
        if cert is not None and verify_disjointness_certificate(facets, g, cert):
            return Disjointness(g, True, name, cert)
    return Disjointness(g, False, "lp", None)


def _cover(candidate, action, x, ball):
    if action.reduce is not None:
        g, word, length = action.reduce(x)
        y = la.matvec(g, x)
        return Coverage(x, domain_contains(candidate, y), y, word, length)
    xi = candidate.xi
    best = None
    for i, g in enumerate(ball):
        y = la.matvec(g, x)
        key = (la.dot(xi, y), i)
        if domain_contains(candidate, y) and (best is None or key < best[0]):
            best = (key, y, i)
    if best is None:
        return Coverage(x, False)
    return Coverage(x, True, best[1], best[2], None)


def tiling_check(candidate, action, samples, L, disjoint_bound=None):
    """Coverage of samples and interior disjointness over the ball of radius ``L``.

    Coverage uses ``action.reduce`` when present (the reported length is the
    word length it found), otherwise the ball itself. ``disjoint_bound``
    defaults to ``L``.
    """
    ball = orbit_ball(action, L)
    cone = action.preserved_cone
    for x in samples:
        inside = cone.interior(x) if _is_oracle(cone) else \
            all(la.dot(f, x) > 0 for f in dd_convert(cone).facets)
        if not inside:
            raise ValueError(f"sample {x} is not in the interior of the preserved cone")
    cover = tuple(_cover(candidate, action, la.vec(x), ball) for x in samples)
    db = L if disjoint_bound is None else disjoint_bound
    dball = ball if db == L else orbit_ball(action, db)
    disj = tuple(interior_disjoint(candidate, action, g) for g in dball[1:])
    return TilingReport(cover, disj, L)


# --------------------------------------------------------------------------
# stabilizers and perturbation


def _interior(cone, x):
    if _is_oracle(cone):
        return cone.interior(x)
    return all(la.dot(f, x) > 0 for f in dd_convert(cone).facets)


def _points_by_norm(n, box):
    """Integer points of ``[-box, box]^n`` by L1 norm, then descending lexicographic."""
    for norm in range(1, n * box + 1):
        pts = []

        def rec(i, left, cur):
            if i == n - 1:
                if abs(left) <= box:
                    for v in sorted({left, -left}, reverse=True):
                        pts.append(tuple(cur + [v]))
                return
            for v in range(min(box, left), -min(box, left) - 1, -1):
                rec(i + 1, left - abs(v), cur + [v])

        rec(0, norm, [])
        yield from sorted(set(pts), reverse=True)


@dataclass(frozen=True)
class StabilizerResult:
    eta: tuple
    certification: str


def trivial_stabilizer_search(action, L, search_box):
    """An interior integer class moved by every non-identity ball element."""
    ball, saturated = _ball(action, L)
    cone = action.preserved_cone
    for x in _points_by_norm(action.rank, search_box):
        if not _interior(cone, x):
            continue
        if all(la.matvec(g, x) != x for g in ball[1:]):
            return StabilizerResult(x, "exact-finite-group" if saturated else "bounded-word")
    raise ValueError("enlarge search box")


@dataclass(frozen=True)
class PerturbResult:
    xi: tuple
    eta: tuple


def _separates(ball, xi, eta):
    """Minimiser of ``xi`` over the ball orbit of ``eta`` if it is unique and
    strictly below every other orbit point of itself."""
    vals = sorted((la.dot(xi, la.matvec(g, eta)), i) for i, g in enumerate(ball))
    if len(vals) > 1 and vals[0][0] == vals[1][0]:
        return None
    m = la.matvec(ball[vals[0][1]], eta)
    base = la.dot(xi, m)
    for g in ball[1:]:
        y = la.matvec(g, m)
        if y == m or la.dot(xi, y) <= base:
            return None
    return m


def xi_perturb(action, xi, L, max_denominator=64, search_box=4):
    """Perturb ``xi`` until it has a unique minimiser on a free orbit.

    Tries ``xi`` itself, then ``xi + e_j / q`` for ``q = 7, 8, ...``.
    """
    xi = la.vec(xi)
    cone = action.preserved_cone
    if not _dual_interior(cone, xi):
        raise ValueError("xi is not in the interior of the dual cone")
    ball = orbit_ball(action, L)
    eta = trivial_stabilizer_search(action, L, search_box).eta
    stab_free = lambda c: all(_covector_after(c, g) != c for g in ball[1:])
    candidates = [xi]
    for q in range(7, max_denominator + 1):
        for j in range(action.rank):
            candidates.append(la.vec(la.add(xi, la.scale(Fraction(1, q), la.unit(action.rank, j)))))
    for c in candidates:
        if not stab_free(c) or not _dual_interior(cone, c):
            continue
        m = _separates(ball, c, eta)
        if m is not None:
            return PerturbResult(c, m)
    raise ValueError(f"cannot separate the orbit with denominators up to {max_denominator}")


# --------------------------------------------------------------------------
# products


def _lift_covector(model, g1, g2):
    """Ambient covector ``x -> g1(d1) + g2(d2)`` for ``(d1, d2) = split(x)``."""
    out = []
    for i in range(model.rank):
        d1, d2 = model.split(la.unit(model.rank, i))
        out.append(la.dot(g1, d1) + la.dot(g2, d2))
    return la.vec(out)


def _factor_facets(candidate):
    c = candidate.domain
    return c.facets if c.facets is not None else dd_convert(c).facets


def product_domain(left, right, model):
    """Cone generated by the pulled back rays of both domains.

    Its dual is the fibre product of the two dual cones over evaluation at
    ``f``, so the facets are computed from factor facets without rays.
    """
    f1, f2 = model.left.fiber, model.right.fiber
    if left.domain.ambient_dim != model.left.rank or right.domain.ambient_dim != model.right.rank:
        raise ValueError("dimension mismatch")
    z1, z2 = la.zeros(model.left.rank), la.zeros(model.right.rank)
    g1 = _factor_facets(left)
    g2 = _factor_facets(right)
    facets = [_lift_covector(model, g, z2) for g in g1 if la.dot(g, f1) == 0]
    facets += [_lift_covector(model, z1, g) for g in g2 if la.dot(g, f2) == 0]
    pos1 = [g for g in g1 if la.dot(g, f1) > 0]
    pos2 = [g for g in g2 if la.dot(g, f2) > 0]
    for a in pos1:
        for b in pos2:
            facets.append(_lift_covector(model, la.scale(Fraction(1, la.dot(a, f1)), a),
                                         la.scale(Fraction(1, la.dot(b, f2)), b)))
    xi1 = la.scale(Fraction(1, la.dot(left.xi, f1)), left.xi)
    xi2 = la.scale(Fraction(1, la.dot(right.xi, f2)), right.xi)
    xi = _lift_covector(model, xi1, xi2)
    dom = PolyCone(model.rank, facets=facets)
    if left.domain.rays is not None and right.domain.rays is not None:
        rays = [la.matvec(model.pull_left, r) for r in left.domain.rays]
        rays += [la.matvec(model.pull_right, r) for r in right.domain.rays]
        dom = dd_convert(PolyCone(model.rank, rays=rays, facets=dom.facets))
    cert = "exact-finite-group" if (left.certification == right.certification
                                    == "exact-finite-group") else "bounded-word"
    info = {"containment": "product of factor domains", "facet_count": len(dom.facets)}
    return DomainCandidate(dom, xi, min(left.word_bound, right.word_bound), cert, info)


def product_action(model, act1, act2, reduce=None, certifier=None, name="product"):
    """``H1 x H2`` acting on the glued lattice; generators must fix the fibre."""
    def lift(g, side):
        cols = []
        for i in range(model.rank):
            d1, d2 = model.split(la.unit(model.rank, i))
            if side == "left":
                d1 = la.matvec(g, d1)
            else:
                d2 = la.matvec(g, d2)
            cols.append(model.pull(d1, d2))
        return la.transpose(cols)

    for g in act1.generators:
        if la.matvec(g, model.left.fiber) != model.left.fiber:
            raise ValueError("left generator does not fix the fibre class")
    for g in act2.generators:
        if la.matvec(g, model.right.fiber) != model.right.fiber:
            raise ValueError("right generator does not fix the fibre class")
    gens = [lift(g, "left") for g in act1.generators] + [lift(g, "right") for g in act2.generators]
    return GroupAction(model.rank, tuple(gens), ProductConeOracle(model),
                       reduce=reduce, certifier=certifier, name=name)


# --------------------------------------------------------------------------
# Mordell-Weil translations


def _translation_of(model, g):
    """Frame vector ``w`` with ``g == t_w``, read off from ``g O``."""
    w = model.frame_part(la.matvec(g, model.zero_section))
    return la.to_int(w)


def _root_terms(oracle, u):
    """``D_u`` as a nonnegative combination of root facets, as (coeff, facet) pairs."""
    model = oracle.model
    roots = sf.root_decomposition(model, u)
    terms = {}
    for r in roots:
        terms[r] = terms.get(r, 0) + 1
    k = model.height(u) - len(roots)
    if k:
        # x.f = (D_r + D_-r) / 2 for any root r
        r0 = sf.frame_vectors_up_to(model, 1)[1][0]
        for r in (r0, la.neg(r0)):
            terms[r] = terms.get(r, 0) + Fraction(k, 2)
    return [(c, oracle.section_facet(r)) for r, c in sorted(terms.items())]


def _normalise(terms, facets):
    """Rescale (coeff, covector) pairs onto the stored primitive facets."""
    have = set(facets)
    out = []
    for c, phi in terms:
        p = la.primitive(phi)
        if p not in have:
            return None
        ratio = next(Fraction(a, b) for a, b in zip(phi, p) if b)
        out.append((la.vec([c * ratio])[0], p))
    return out


def res_certifier(oracle):
    """Disjointness certificates for ``t_w`` on the root-Voronoi domain."""
    model = oracle.model

    def certify(g, facets):
        w = _translation_of(model, g)
        if not any(w) or sf.res_translation_matrix(model, w) != g:
            return None
        y = _normalise(_root_terms(oracle, w), facets)
        z = _normalise(_root_terms(oracle, la.neg(w)), facets)
        if y is None or z is None:
            return None
        return y, z

    return certify


def res_reduce(model, word_length=None):
    """Translate an ample class into the domain by minimising ``x.s(u)``."""
    def reduce(x):
        if model.pair(x, model.fiber) <= 0:
            return la.identity(model.rank), (0,) * model.frame_rank, 0
        _, pts, _ = sf.res_section_minimum(model, x)
        w = la.neg(pts[0])
        n = word_length(w) if word_length else len(sf.root_decomposition(model, w))
        return sf.res_translation_matrix(model, w), w, n
    return reduce


def _positive_roots(model):
    roots = [v for v, h in sf.frame_vectors_up_to(model, 1) if h == 1]
    return sorted(r for r in roots if la.oriented(r) == r)


def res_translation_action(model, generators="roots"):
    """Translations by positive roots (default) or by the simple roots."""
    oracle = SectionConeOracle(model)
    if generators == "roots":
        ws = _positive_roots(model)
        length = None
    elif generators == "simple":
        ws = [la.unit(model.frame_rank, i) for i in range(model.frame_rank)]
        length = lambda w: sum(abs(x) for x in w)
    else:
        raise ValueError(f"unknown generator set {generators!r}")
    gens = tuple(sf.res_translation_matrix(model, w) for w in ws)
    return GroupAction(model.rank, gens, oracle, gram=model.lattice.gram,
                       reduce=res_reduce(model, length), certifier=res_certifier(oracle),
                       name=f"translations:{generators}")


def res_xi(model):
    """Covector of pairing with ``O + 2 f``."""
    a = la.add(model.zero_section, la.scale(2, model.fiber))
    return la.matvec(model.lattice.gram, a)


def res_dirichlet_candidate(model=None):
    """Dirichlet domain of ``O + 2f`` for the root translations at word length 1."""
    model = model or sf.res_model()
    action = res_translation_action(model, "roots")
    return dirichlet_domain(action, res_xi(model), 1), action


def _split_translations(model, g):
    left, right = model.left.res, model.right.res
    o1 = model.pull(left.zero_section, la.zeros(model.right.rank))
    o2 = model.pull(la.zeros(model.left.rank), right.zero_section)
    w1 = la.to_int(left.frame_part(model.split(la.matvec(g, o1))[0]))
    w2 = la.to_int(right.frame_part(model.split(la.matvec(g, o2))[1]))
    return w1, w2


def schoen_action(model):
    """``E8 x E8`` translations on the glued rank-19 lattice (simple-root generators)."""
    left, right = model.left.res, model.right.res
    a1 = res_translation_action(left, "simple")
    a2 = res_translation_action(right, "simple")
    o1, o2 = SectionConeOracle(left), SectionConeOracle(right)
    z1, z2 = la.zeros(model.left.rank), la.zeros(model.right.rank)

    def reduce(x):
        d1, d2 = model.split(x)
        _, p1, _ = sf.res_section_minimum(left, d1)
        _, p2, _ = sf.res_section_minimum(right, d2)
        w1, w2 = la.neg(p1[0]), la.neg(p2[0])
        t1 = sf.res_translation_matrix(left, w1)
        t2 = sf.res_translation_matrix(right, w2)
        cols = []
        for i in range(model.rank):
            e1, e2 = model.split(la.unit(model.rank, i))
            cols.append(model.pull(la.matvec(t1, e1), la.matvec(t2, e2)))
        n = sum(abs(v) for v in w1) + sum(abs(v) for v in w2)
        return la.transpose(cols), (w1, w2), n

    def certify(g, facets):
        w1, w2 = _split_translations(model, g)
        if any(w1):
            oracle, w, lift = o1, w1, (lambda phi: _lift_covector(model, phi, z2))
        elif any(w2):
            oracle, w, lift = o2, w2, (lambda phi: _lift_covector(model, z1, phi))
        else:
            return None
        y = [(c, lift(phi)) for c, phi in _root_terms(oracle, w)]
        z = [(c, lift(phi)) for c, phi in _root_terms(oracle, la.neg(w))]
        y, z = _normalise(y, facets), _normalise(z, facets)
        if y is None or z is None:
            return None
        return y, z

    return product_action(model, a1, a2, reduce=reduce, certifier=certify, name="schoen")
