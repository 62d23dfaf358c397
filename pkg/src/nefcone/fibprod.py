"""Fiber products of fibred surfaces over a curve, at the level of N^1.

A factor is a lattice with a fibre class ``f``, a unit-degree section, its
vertical curves and a nef oracle. The product lattice is
``(N_1 + N_2) / (f_1 - f_2)``. Curves on the product are pairs ``(c_1, c_2)``
of factor curves with equal degree over the base; a divisor ``(d_1, d_2)``
pairs with such a curve as ``d_1.c_1 + d_2.c_2``.

``decompose_nef`` writes a class as a sum of pulled back nef classes or
returns a curve on which it is negative.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .cone import PolyCone, dd_convert, minkowski_sum, map_cone, member, extremal_rays
from . import surface as sf


class NotNefError(ValueError):
    """The class is not nef; ``curve`` is an ambient curve ``(c1, c2)`` with
    ``value = D.curve < 0``."""

    def __init__(self, message, curve, value):
        super().__init__(message)
        self.curve = curve
        self.value = value


class VerticalViolation(NotNefError):
    """A curve inside a fibre pairs negatively with the class."""


@dataclass(frozen=True)
class FiberedFactor:
    name: str
    gram: tuple
    fiber: tuple
    section: tuple
    vertical_curves: tuple
    mori: tuple = None          # curve generators when the factor is polyhedral
    res: object = None          # ResModel when the nef cone is an oracle

    @property
    def rank(self):
        return len(self.gram)

    @property
    def polyhedral(self):
        return self.mori is not None

    def pair(self, d, c):
        return la.dot(d, la.matvec(self.gram, c))

    def degree(self, c):
        """Degree of a curve over the base."""
        return self.pair(self.fiber, c)

    def nef_cone(self):
        if not self.polyhedral:
            raise ValueError(f"factor {self.name} has no polyhedral nef cone")
        return dd_convert(PolyCone(self.rank, facets=[la.matvec(self.gram, c) for c in self.mori]))

    def nef_test(self, d):
        """``(nef, curve, value)``: a curve with ``d.curve = value < 0`` if not nef."""
        d = la.vec(d)
        if self.polyhedral:
            best = min(self.mori, key=lambda c: (self.pair(d, c), c))
            v = self.pair(d, best)
            return v >= 0, best, v
        cert = sf.res_nef_test(self.res, d)
        return cert.nef, cert.curve, cert.value


def _validate(factor):
    if factor.degree(factor.section) != 1:
        raise ValueError(f"factor {factor.name}: section does not have degree 1 over the base")
    if factor.degree(factor.fiber) != 0:
        raise ValueError(f"factor {factor.name}: fibre class is not isotropic")
    for c in factor.vertical_curves:
        if factor.degree(c) != 0:
            raise ValueError(f"factor {factor.name}: vertical curve {c} meets the fibre")
    if not any(abs(x) == 1 for x in factor.fiber):
        raise ValueError(f"factor {factor.name}: fibre class needs a unit coordinate")
    return factor


def f0_factor():
    """P^1 x P^1 over P^1, basis ``(f, s)``."""
    gram = ((0, 1), (1, 0))
    return _validate(FiberedFactor("f0", gram, (1, 0), (0, 1), ((1, 0),), mori=((0, 1), (1, 0))))


def blowup_factor(k):
    """Plane blown up in ``k >= 1`` points, fibred by the pencil of lines through the first."""
    if k < 1 or k > 8:
        raise ValueError("blowup factor needs 1 <= k <= 8")
    lat = sf.blowup_lattice(k)
    fiber = la.sub(la.unit(k + 1, 0), la.unit(k + 1, 1))
    mori = tuple(sf.mori_generators(lat))
    pair = lat.pair
    vertical = tuple(sorted({c for c in mori if pair(fiber, c) == 0} | {fiber}))
    return _validate(FiberedFactor(f"blowup:{k}", lat.gram, fiber, la.unit(k + 1, 1),
                                   vertical, mori=mori))


def res_factor():
    m = sf.res_model()
    return _validate(FiberedFactor("res", m.lattice.gram, m.fiber, m.zero_section,
                                   (m.fiber,), res=m))


def factor_preset(name):
    if name == "f0":
        return f0_factor()
    if name == "res":
        return res_factor()
    if name.startswith("blowup:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad preset {name!r}") from None
        return blowup_factor(k)
    raise ValueError(f"unknown factor preset {name!r}")


# --------------------------------------------------------------------------
# the glued lattice


def _split_basis(factor):
    """Index of a unit coordinate of ``f`` and the inverse change of basis.

    Basis ``(f, e_j for j != i)`` is unimodular; returns ``(i, proj)`` where
    ``proj(d)`` gives coordinates of ``d`` in that basis.
    """
    i = next(j for j, x in enumerate(factor.fiber) if abs(x) == 1)
    f = factor.fiber

    def proj(d):
        a = Fraction(d[i]) / f[i]
        rest = tuple(d[j] - a * f[j] for j in range(len(d)) if j != i)
        return (a,) + rest

    return i, proj


@dataclass(frozen=True)
class FiberProductModel:
    left: FiberedFactor
    right: FiberedFactor
    rank: int
    pull_left: tuple
    pull_right: tuple
    _index: tuple = field(repr=False, default=())

    @property
    def fiber(self):
        return la.unit(self.rank, 0)

    def pull(self, d1, d2):
        return la.add(la.matvec(self.pull_left, d1), la.matvec(self.pull_right, d2))

    def split(self, x):
        """A pair ``(d1, d2)`` with ``pull(d1, d2) == x`` (fibre part on the left)."""
        x = la.vec(x)
        n1 = self.left.rank
        i1, i2 = self._index
        d1 = list(la.scale(x[0], self.left.fiber))
        rest = iter(x[1:n1])
        for j in range(n1):
            if j != i1:
                d1[j] += next(rest)
        rest = iter(x[n1:])
        d2 = [0 if j == i2 else next(rest) for j in range(self.right.rank)]
        return la.vec(d1), la.vec(d2)

    def curve_pairing(self, d1, d2, curve):
        c1, c2 = curve
        return self.left.pair(d1, c1) + self.right.pair(d2, c2)

    def curve_functional(self, curve):
        """Ambient covector ``phi`` with ``phi . x = x . curve``."""
        out = []
        for i in range(self.rank):
            d1, d2 = self.split(la.unit(self.rank, i))
            out.append(self.curve_pairing(d1, d2, curve))
        return la.vec(out)

    def is_curve(self, curve):
        c1, c2 = curve
        return self.left.degree(c1) == self.right.degree(c2)


def _pull_matrix(factor, rank, offset, proj):
    cols = []
    for j in range(factor.rank):
        coords = proj(la.unit(factor.rank, j))
        col = [0] * rank
        col[0] = coords[0]
        for k, a in enumerate(coords[1:]):
            col[offset + k] = a
        cols.append(la.vec(col))
    return la.transpose(cols)


def build_fiber_product(a, b):
    """Glue two factors along their fibre classes."""
    _validate(a)
    _validate(b)
    rank = a.rank + b.rank - 1
    i1, p1 = _split_basis(a)
    i2, p2 = _split_basis(b)
    pl = _pull_matrix(a, rank, 1, p1)
    pr = _pull_matrix(b, rank, a.rank, p2)
    if not (all(la.is_integral(r) for r in pl) and all(la.is_integral(r) for r in pr)):
        raise AssertionError("pullback matrices are not integral")
    pl = tuple(la.to_int(r) for r in pl)
    pr = tuple(la.to_int(r) for r in pr)
    return FiberProductModel(a, b, rank, pl, pr, (i1, i2))


# --------------------------------------------------------------------------
# thresholds and decomposition


INFINITE = None


def _vertical_check(factor, d):
    for c in factor.vertical_curves:
        v = factor.pair(d, c)
        if v < 0:
            return c, v
    if factor.polyhedral:
        for c in factor.mori:
            if factor.degree(c) == 0 and factor.pair(d, c) < 0:
                return c, factor.pair(d, c)
    return None


def _threshold(factor, d):
    """``(t, curve)``: least ``t`` with ``d + t f`` nef and a horizontal curve
    attaining it, or ``(INFINITE, None)`` when no shift helps.

    Assumes the vertical check passed.
    """
    d = la.vec(d)
    if factor.polyhedral:
        best = None
        for c in factor.mori:
            e = factor.degree(c)
            if e > 0:
                t = Fraction(-factor.pair(d, c), e)
                if best is None or (t, c) > best:
                    best = (t, c)
        t, c = best
        return (t.numerator if t.denominator == 1 else t), c
    m = factor.res
    a = m.pair(d, m.fiber)
    if a > 0:
        value, pts, _ = sf.res_section_minimum(m, d)
        return -value, sf.res_section_class(m, pts[0])
    if any(m.frame_pairing(d)):
        return INFINITE, None
    return -m.pair(d, m.zero_section), m.zero_section


def nef_threshold(factor, d):
    """Least ``t`` such that ``d + t f`` is nef on the factor.

    May be negative. Raises ``VerticalViolation`` when a vertical curve pairs
    negatively with ``d`` (no shift by ``f`` can repair that), and
    ``NotNefError`` when ``d + t f`` is never nef.
    """
    bad = _vertical_check(factor, d)
    if bad is not None:
        c, v = bad
        raise VerticalViolation(f"vertical curve violation on {factor.name}", c, v)
    t, c = _threshold(factor, d)
    if t is INFINITE:
        m = factor.res
        v = sf._unbounded_direction(m, d, 0)
        s = sf.res_section_class(m, v)
        raise NotNefError(f"no fibre shift makes the class nef on {factor.name}", s, m.pair(d, s))
    return t


@dataclass(frozen=True)
class Decomposition:
    d1: tuple
    d2: tuple
    t: Fraction
    interval: tuple          # (t_lo, t_hi): all t with d1 - t f1, d2 + t f2 nef


def _unbounded_certificate(model, side, factor, d, other, od):
    """Curve pair negative on the class when ``factor`` has no finite threshold."""
    oc = other.section
    base = other.pair(od, oc)
    m = factor.res
    v = sf._unbounded_direction(m, d, -base)
    s = sf.res_section_class(m, v)
    return (oc, s) if side == "right" else (s, oc)


def decompose_nef(model, d1, d2):
    """Nef decomposition ``(d1 - t f1, d2 + t f2)`` with ``t`` the right threshold.

    Raises ``NotNefError`` carrying an ambient curve ``(c1, c2)`` on which the
    total class is negative when no decomposition exists.
    """
    left, right = model.left, model.right
    d1, d2 = la.vec(d1), la.vec(d2)
    for side, fac, d in (("left", left, d1), ("right", right, d2)):
        bad = _vertical_check(fac, d)
        if bad is not None:
            c, v = bad
            curve = (c, la.zeros(right.rank)) if side == "left" else (la.zeros(left.rank), c)
            raise VerticalViolation(f"vertical curve violation on the {side} factor", curve, v)
    t2, c2 = _threshold(right, d2)
    t1, c1 = _threshold(left, d1)
    if t2 is INFINITE or t1 is INFINITE:
        if t2 is INFINITE:
            curve = _unbounded_certificate(model, "right", right, d2, left, d1)
        else:
            curve = _unbounded_certificate(model, "left", left, d1, right, d2)
        raise NotNefError("input class is not nef", curve, model.curve_pairing(d1, d2, curve))
    if t1 + t2 > 0:
        e1, e2 = left.degree(c1), right.degree(c2)
        curve = (la.scale(e2, c1), la.scale(e1, c2))
        raise NotNefError("input class is not nef", curve, model.curve_pairing(d1, d2, curve))
    out1 = la.vec(la.sub(d1, la.scale(t2, left.fiber)))
    out2 = la.vec(la.add(d2, la.scale(t2, right.fiber)))
    return Decomposition(out1, out2, t2, (t2, -t1))


@dataclass(frozen=True)
class NefVerdict:
    nef: bool
    decomposition: Decomposition = None
    curve: tuple = None
    value: Fraction = None


def product_nef_test(model, d1, d2):
    try:
        dec = decompose_nef(model, d1, d2)
    except NotNefError as e:
        return NefVerdict(False, curve=e.curve, value=e.value)
    return NefVerdict(True, decomposition=dec)


def sum_cone(model):
    """``pull_left(Nef_1) + pull_right(Nef_2)`` for polyhedral factors."""
    if not (model.left.polyhedral and model.right.polyhedral):
        raise ValueError("use sampled variant")
    a = map_cone(model.left.nef_cone(), model.pull_left)
    b = map_cone(model.right.nef_cone(), model.pull_right)
    return minkowski_sum(a, b)


@dataclass(frozen=True)
class CorrespondenceReport:
    sum_rays: tuple
    pulled: dict            # ambient ray -> list of ("left"|"right", factor ray)
    spurious: tuple         # sum rays not pulled back from a factor ray
    lost: tuple             # pulled factor rays that are not extremal in the sum

    @property
    def ok(self):
        return not self.spurious and not self.lost


def extremal_correspondence_check(model):
    """Compare the extremal rays of the sum cone with pulled back factor rays."""
    total = sum_cone(model)
    rays = tuple(extremal_rays(total))
    pulled = {}
    for side, fac, pm in (("left", model.left, model.pull_left),
                          ("right", model.right, model.pull_right)):
        for r in extremal_rays(fac.nef_cone()):
            img = la.primitive(la.matvec(pm, r))
            pulled.setdefault(img, []).append((side, r))
    spurious = tuple(r for r in rays if r not in pulled)
    lost = tuple(sorted(r for r in pulled if r not in set(rays)))
    return CorrespondenceReport(rays, pulled, spurious, lost)


@dataclass(frozen=True)
class SumMembership:
    member: bool
    coefficients: tuple = None    # over rays, when a member
    rays: tuple = None
    separator: tuple = None       # functional >= 0 on the sum, < 0 on D


def decomposability_over_surface_base(emb1, emb2, nef1, nef2, d):
    """Is ``d`` in ``emb1(Nef_1) + emb2(Nef_2)``? Works over any base."""
    a = map_cone(nef1, emb1)
    b = map_cone(nef2, emb2)
    total = minkowski_sum(a, b)
    ok, cert = member(total, d)
    if ok:
        return SumMembership(True, coefficients=cert, rays=total.rays)
    return SumMembership(False, separator=cert)
