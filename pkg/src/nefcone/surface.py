"""Picard lattices of blow-ups of the plane and of a general rational elliptic surface.

Classes are written in the basis ``(H, E_1, ..., E_k)``: the vector
``(d, a_1, ..., a_k)`` means ``d H + sum a_i E_i``. The intersection form is
``diag(1, -1, ..., -1)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .cone import PolyCone, dd_convert
from .lattice import E8_CARTAN, upper_form, minimize_quadratic, short_vectors, _sqrt_up


@dataclass(frozen=True)
class SurfaceLattice:
    rank: int
    gram: tuple
    basis_labels: tuple
    canonical_class: tuple

    def pair(self, a, b):
        return la.dot(a, la.matvec(self.gram, b))

    def functional(self, curve):
        """Coordinate normal ``G c`` so that ``D . c == functional . D``."""
        return la.matvec(self.gram, curve)

    def label(self, v):
        terms = []
        for c, name in zip(v, self.basis_labels):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"+{name}")
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c:+}{name}" if isinstance(c, int) else f"+({c}){name}")
        s = "".join(terms).lstrip("+")
        return s or "0"


def blowup_lattice(k):
    """Picard lattice of the plane blown up in ``k`` points, ``0 <= k <= 9``."""
    if not isinstance(k, int) or not 0 <= k <= 9:
        raise ValueError(f"number of blown-up points must be in 0..9, got {k!r}")
    n = k + 1
    gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n))
                 for i in range(n))
    labels = ("H",) + tuple(f"E{i}" for i in range(1, k + 1))
    canonical = (-3,) + (1,) * k
    return SurfaceLattice(n, gram, labels, canonical)


def _blowup_k(lat):
    k = lat.rank - 1
    if lat.gram != blowup_lattice(k).gram:
        raise ValueError("lattice is not a blow-up lattice")
    return k


@dataclass(frozen=True)
class NegCurveSet:
    k: int
    classes: tuple


def enumerate_neg_curves(lat):
    """All (-1)-classes ``d H - sum m_i E_i`` on a blow-up in ``k <= 8`` points.

    These are the classes with ``C^2 = -1``, ``-K.C = 1``, ``d >= 0`` and
    ``m_i >= 0`` when ``d >= 1``, together with the exceptional ``E_i``.
    """
    k = _blowup_k(lat)
    if k >= 9:
        raise ValueError("infinite family; use ResModel oracle")
    out = [la.unit(k + 1, i) for i in range(1, k + 1)]
    # sum m = 3d - 1 and sum m^2 = d^2 + 1; Cauchy-Schwarz bounds d
    d = 1
    while k and (3 * d - 1) ** 2 <= k * (d * d + 1):
        for ms in _multiplicities(k, 3 * d - 1, d * d + 1):
            out.append((d,) + tuple(-m for m in ms))
        d += 1
    return NegCurveSet(k, tuple(sorted(out)))


def _multiplicities(k, total, squares):
    """Nonnegative integer k-tuples with the given sum and sum of squares."""
    res = []
    cur = []

    def rec(i, s, q):
        left = k - i
        if left == 0:
            if s == 0 and q == 0:
                res.append(tuple(cur))
            return
        # with left entries summing to s, squares are at least s^2/left
        if s < 0 or q < 0 or s * s > q * left:
            return
        m = 0
        while m * m <= q and m <= s:
            cur.append(m)
            rec(i + 1, s - m, q - m * m)
            cur.pop()
            m += 1

    rec(0, total, squares)
    return res


def mori_generators(lat):
    """Generators of the cone of curves of a del Pezzo blow-up, ``k <= 8``."""
    k = _blowup_k(lat)
    if k == 0:
        return [(1,)]
    if k == 1:
        return [(0, 1), (1, -1)]
    return list(enumerate_neg_curves(lat).classes)


def nef_cone_delpezzo(lat, with_rays=True):
    """Nef cone as the dual of the curve cone; facets are ``G C``."""
    k = _blowup_k(lat)
    if k >= 9:
        raise ValueError("infinite family; use ResModel oracle")
    facets = [lat.functional(c) for c in mori_generators(lat)]
    cone = PolyCone(lat.rank, facets=facets)
    return dd_convert(cone) if with_rays else cone


# --------------------------------------------------------------------------
# rational elliptic surface


@dataclass(frozen=True)
class ResModel:
    lattice: SurfaceLattice
    fiber: tuple
    zero_section: tuple
    frame_basis: tuple
    frame_gram: tuple      # intersection form on the frame (negative definite)
    height_form: tuple     # -frame_gram, positive definite: h(v) = v^T M v / 2
    change_of_basis: tuple  # columns f, O, frame_1..8 in (H, E) coordinates
    change_inverse: tuple

    @property
    def rank(self):
        return self.lattice.rank

    @property
    def frame_rank(self):
        return len(self.frame_basis)

    def pair(self, a, b):
        return self.lattice.pair(a, b)

    def frame_vector(self, v):
        """Class in (H, E) coordinates of frame coordinates ``v``."""
        return la.lincomb(v, self.frame_basis, self.rank)

    def height(self, v):
        """``h(v) = -v.v/2`` for frame coordinates ``v`` (a nonnegative integer)."""
        return la.dot(v, la.matvec(self.height_form, v)) // 2

    def coordinates(self, d):
        """Coordinates of ``d`` in the basis ``(f, O, frame)``."""
        return la.matvec(self.change_inverse, d)

    def frame_part(self, d):
        return self.coordinates(d)[2:]

    def frame_pairing(self, d):
        """The linear form ``v -> D . v`` on frame coordinates."""
        return tuple(self.pair(d, b) for b in self.frame_basis)


@lru_cache(maxsize=None)
def res_model():
    """The rank-10 model: f = -K = 3H - sum E_i, O = E_9, frame = E8(-1)."""
    lat = blowup_lattice(9)
    n = 10
    fiber = (3,) + (-1,) * 9
    zero = la.unit(n, 9)

    def e(i):
        return la.unit(n, i)

    # Bourbaki order: 1-3-4-5-6-7-8 chain, node 2 attached to node 4
    roots_chain = [la.sub(e(i), e(i + 1)) for i in range(1, 8)]   # E_i - E_{i+1}
    branch = (1, -1, -1, -1, 0, 0, 0, 0, 0, 0)                    # H - E1 - E2 - E3
    frame = (roots_chain[0], branch) + tuple(roots_chain[1:])
    hf = tuple(tuple(-lat.pair(a, b) for b in frame) for a in frame)
    if hf != E8_CARTAN():
        raise AssertionError("frame basis does not realise the E8 Cartan matrix")
    return _assemble(lat, fiber, zero, frame)


def _assemble(lat, fiber, zero, frame):
    fg = tuple(tuple(lat.pair(a, b) for b in frame) for a in frame)
    hf = tuple(tuple(-x for x in row) for row in fg)
    cob = la.transpose((fiber, zero) + tuple(frame))
    inv = la.inverse(cob)
    if not all(la.is_integral(r) for r in inv):
        raise ValueError("frame and <f, O> do not span the lattice")
    return ResModel(lat, tuple(fiber), tuple(zero), tuple(frame), fg, hf, cob, inv)


def section_model(gram, fiber, zero, frame, labels=None):
    """A lattice ``<f, O> + frame`` of the same shape as the elliptic surface model.

    Requires ``f.f = 0``, ``f.O = 1``, ``O.O = -1``, frame orthogonal to both
    and even negative definite. Used for small toy versions of the E8 case.
    """
    gram = la.mat(gram)
    n = len(gram)
    labels = tuple(labels) if labels else tuple(f"b{i}" for i in range(n))
    lat = SurfaceLattice(n, gram, labels, la.neg(fiber))
    if (lat.pair(fiber, fiber), lat.pair(fiber, zero), lat.pair(zero, zero)) != (0, 1, -1):
        raise ValueError("need f.f = 0, f.O = 1, O.O = -1")
    for b in frame:
        if lat.pair(b, fiber) or lat.pair(b, zero):
            raise ValueError("frame must be orthogonal to f and O")
        if lat.pair(b, b) % 2 or lat.pair(b, b) >= 0:
            raise ValueError("frame must be even and negative definite")
    model = _assemble(lat, la.vec(fiber), la.vec(zero), [la.vec(b) for b in frame])
    upper_form(model.height_form)  # raises unless positive definite
    return model


def res_section_class(model, v):
    """Section class ``s(v) = O + v + h(v) f``."""
    v = tuple(v)
    if not la.is_integral(v):
        raise ValueError("frame coordinates must be integral")
    h = model.height(v)
    return la.add(la.add(model.zero_section, model.frame_vector(v)), la.scale(h, model.fiber))


@dataclass(frozen=True)
class NefCertificate:
    """Outcome of a nef test.

    ``nef`` true: ``curve`` is a minimising section (or the fibre when only
    fibres matter) and ``value`` its pairing. ``nef`` false: ``curve`` is an
    effective curve with ``D . curve = value < 0``.
    """
    nef: bool
    curve: tuple
    value: Fraction
    frame_point: tuple = None
    info: dict = None


def res_section_minimum(model, d):
    """``min_v D.s(v)`` for ``D.f > 0``: exact value, minimisers, search record."""
    a = model.pair(d, model.fiber)
    if a <= 0:
        raise ValueError("needs D.f > 0")
    c = model.pair(d, model.zero_section)
    lin = model.frame_pairing(d)
    return minimize_quadratic(model.height_form, a, lin, c)


def _unbounded_direction(model, d, below):
    """Frame vector with ``D.s(v) < below`` when ``D.f = 0`` and the frame part is nonzero."""
    lin = model.frame_pairing(d)
    c = model.pair(d, model.zero_section)
    j = next(i for i, x in enumerate(lin) if x != 0)
    step = -1 if lin[j] > 0 else 1
    t = 1
    while True:
        v = tuple(step * t if i == j else 0 for i in range(len(lin)))
        if c + la.dot(lin, v) < below:
            return v
        t *= 2


def res_nef_test(model, d):
    """Exact nef test for the general rational elliptic surface model.

    The curve cone is generated by the fibre ``f`` and all sections ``s(v)``.
    """
    d = la.vec(d)
    a = model.pair(d, model.fiber)
    if a < 0:
        return NefCertificate(False, model.fiber, a)
    c = model.pair(d, model.zero_section)
    lin = model.frame_pairing(d)
    if a == 0:
        if any(lin):
            v = _unbounded_direction(model, d, 0)
            s = res_section_class(model, v)
            return NefCertificate(False, s, model.pair(d, s), v)
        s = model.zero_section
        return NefCertificate(c >= 0, s, c, (0,) * len(lin), {"constant": True})
    value, pts, info = res_section_minimum(model, d)
    v = pts[0]
    return NefCertificate(value >= 0, res_section_class(model, v), value, v, info)


def certified_height_bound(model, d):
    """Integer ``R`` such that every minimising section of ``D`` has ``h(v) <= R``.

    From the convexity of ``v -> D.s(v)`` alone (no enumeration): minimisers
    lie in the ellipsoid around the continuous optimum whose radius is fixed
    by the rounded optimum. Returns None when ``D.f <= 0``.
    """
    a = model.pair(d, model.fiber)
    if a <= 0:
        return None
    m = model.height_form
    c = model.pair(d, model.zero_section)
    lin = [Fraction(x) for x in model.frame_pairing(d)]
    vstar = [-x / a for x in la.matvec(la.inverse(m), lin)]

    def q(v):
        return c + la.dot(lin, v) + a * Fraction(la.dot(v, la.matvec(m, v))) / 2

    guess = tuple(round(x) for x in vstar)
    r = 2 * (q(guess) - q(vstar)) / a
    # |v|_M <= |v*|_M + sqrt(r); h = |v|_M^2 / 2
    norm_star = Fraction(la.dot(vstar, la.matvec(m, vstar)))
    bound = (_sqrt_up(norm_star) + _sqrt_up(r)) ** 2 / 2
    return int(bound)


def truncated_nef_test(model, d, radius):
    """Necessary conditions only: ``D.f >= 0`` and ``D.s(v) >= 0`` for ``h(v) <= radius``."""
    a = model.pair(d, model.fiber)
    if a < 0:
        return False
    c = model.pair(d, model.zero_section)
    lin = model.frame_pairing(d)
    # D.s(v) = D.O + D.v + h(v) D.f
    return all(c + la.dot(lin, v) + h * a >= 0 for v, h in frame_vectors_up_to(model, radius))


@lru_cache(maxsize=16)
def _frame_vectors(form, radius):
    return tuple(short_vectors(form, 2 * radius))


def frame_vectors_up_to(model, radius):
    """Frame vectors with ``h(v) <= radius`` as ``(v, h)``, sorted by height."""
    return [(v, int(n) // 2) for v, n in _frame_vectors(model.height_form, radius)]


def res_translation_matrix(model, w):
    """Matrix in (H, E) coordinates of the Mordell-Weil translation by ``w``.

    On the basis ``f, O, frame``: ``f -> f``, ``O -> s(w)``,
    ``v -> v - (v.w) f``.
    """
    w = tuple(w)
    if not la.is_integral(w):
        raise ValueError("translation vector must be integral")
    n = model.rank
    h = model.height(w)
    # columns of the matrix in the (f, O, frame) basis
    cols = [la.unit(n, 0), (h, 1) + tuple(w)]
    fw = la.matvec(model.frame_gram, w)
    for j in range(len(model.frame_basis)):
        col = [0] * n
        col[0] = -fw[j]
        col[2 + j] = 1
        cols.append(tuple(col))
    t_basis = la.transpose(cols)
    t = la.matmul(la.matmul(model.change_of_basis, t_basis), model.change_inverse)
    return tuple(la.to_int(r) for r in t)


def res_extremal_witnesses(model, height_bound):
    """All section classes ``s(v)`` with ``h(v) <= height_bound``."""
    if height_bound < 0:
        raise ValueError("height bound must be nonnegative")
    return [res_section_class(model, v) for v, _ in frame_vectors_up_to(model, height_bound)]


def root_decomposition(model, u):
    """Write a frame vector as a sum of roots with pairwise nonnegative products.

    Returns the list of roots (frame coordinates). The number of roots is at
    most ``h(u)``, so ``D_u = sum D_r + (h(u) - #roots) x.f`` where
    ``D_u(x) = x.(s(u) - O)``.
    """
    roots = [v for v, h in frame_vectors_up_to(model, 1) if h == 1]
    m = model.height_form
    out = []
    u = tuple(u)
    while any(u):
        mu = la.matvec(m, u)
        best = max(roots, key=lambda r: (la.dot(r, mu), r))
        if la.dot(best, mu) < 2:
            raise ArithmeticError(f"no root with product >= 2 against {u}")
        out.append(best)
        u = la.sub(u, best)
    return out
