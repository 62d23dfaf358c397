"""Rational polyhedral cones with generator and inequality representations.

A cone is stored as primitive integer vectors. ``rays`` generate it by
nonnegative combinations; ``facets`` are inward normals ``a`` with
``a . x >= 0``. Linear subspaces are encoded by opposite pairs in either
list. The double description method converts between the two.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg as la


class ConeError(ValueError):
    """Raised for malformed cones; ``witness`` carries an offending vector."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _canon(vectors, dim):
    seen = set()
    for v in vectors:
        if len(v) != dim:
            raise ConeError(f"vector {tuple(v)} does not have dimension {dim}")
        if not any(v):
            continue
        seen.add(la.primitive(v))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class PolyCone:
    ambient_dim: int
    rays: Optional[tuple] = None
    facets: Optional[tuple] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.ambient_dim <= 0:
            raise ConeError("ambient dimension must be positive")
        if self.rays is None and self.facets is None:
            raise ConeError("a cone needs rays or facets")
        if self.rays is not None:
            object.__setattr__(self, "rays", _canon(self.rays, self.ambient_dim))
        if self.facets is not None:
            object.__setattr__(self, "facets", _canon(self.facets, self.ambient_dim))

    @classmethod
    def from_rays(cls, rays, dim=None):
        rays = [la.vec(r) for r in rays]
        if dim is None:
            if not rays:
                raise ConeError("cannot infer dimension of an empty ray list")
            dim = len(rays[0])
        return cls(dim, rays=rays)

    @classmethod
    def from_facets(cls, facets, dim=None):
        facets = [la.vec(f) for f in facets]
        if dim is None:
            if not facets:
                raise ConeError("cannot infer dimension of an empty facet list")
            dim = len(facets[0])
        return cls(dim, facets=facets)

    @property
    def rep_state(self):
        if self.rays is not None and self.facets is not None:
            return "both"
        return "rays" if self.rays is not None else "facets"

    def __repr__(self):
        parts = [f"dim={self.ambient_dim}"]
        if self.rays is not None:
            parts.append(f"rays={len(self.rays)}")
        if self.facets is not None:
            parts.append(f"facets={len(self.facets)}")
        return f"PolyCone({', '.join(parts)})"

    # convenience mirrors of the module functions
    def with_both(self):
        return dd_convert(self)

    def contains(self, v):
        return member(self, v)[0]

    def to_dict(self):
        c = dd_convert(self)
        return {"dim": c.ambient_dim,
                "rays": [list(r) for r in c.rays],
                "facets": [list(f) for f in c.facets]}


# --------------------------------------------------------------------------
# double description


def _pointed_extreme_rays(a):
    """Extreme rays of ``{z : a z >= 0}``; ``a`` must have full column rank.

    Incremental double description with the combinatorial adjacency test.
    """
    d = len(a[0])
    a = [la.primitive(r) for r in a]
    base = la.independent_rows(a)
    if len(base) != d:
        raise ConeError("inequality system is not pointed")
    inv = la.inverse([a[i] for i in base])
    # columns of the inverse are the initial rays
    rays = [la.primitive(col) for col in la.transpose(inv)]
    # zero sets as bitmasks over processed row indices
    zeros = []
    for r in rays:
        z = 0
        for i in base:
            if la.dot(a[i], r) == 0:
                z |= 1 << i
        zeros.append(z)
    done = set(base)
    for i, row in enumerate(a):
        if i in done:
            continue
        vals = [la.dot(row, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos + zer]
        new_zeros = [zeros[k] for k in pos] + [zeros[k] | (1 << i) for k in zer]
        if neg:
            candidates = pos + zer + neg
            for p in pos:
                for n in neg:
                    common = zeros[p] & zeros[n]
                    if bin(common).count("1") < d - 2:
                        continue
                    adjacent = True
                    for k in candidates:
                        if k != p and k != n and (zeros[k] & common) == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    r = la.primitive(la.sub(la.scale(vals[p], rays[n]),
                                            la.scale(vals[n], rays[p])))
                    new_rays.append(r)
                    new_zeros.append(common | (1 << i))
        rays, zeros = new_rays, new_zeros
        done.add(i)
    return rays


def _generators_of(ineqs, dim):
    """Generators (pointed extreme rays plus +-lineality) of ``{x: A x >= 0}``."""
    ineqs = [r for r in ineqs if any(r)]
    lineal = la.nullspace(ineqs, dim) if ineqs else [la.unit(dim, i) for i in range(dim)]
    out = []
    for l in lineal:
        out.append(l)
        out.append(la.neg(l))
    if len(lineal) == dim:
        return out
    # restrict to the row space, where the system is pointed
    basis = [tuple(r) for r in la.rref(ineqs)[0]]
    basis = [la.primitive(b) for b in basis]
    bt = la.transpose(basis)  # dim x k
    reduced = [tuple(la.dot(row, col) for col in la.transpose(bt)) for row in ineqs]
    for w in _pointed_extreme_rays(reduced):
        out.append(la.primitive(la.matvec(bt, w)))
    return out


def lineality_space(cone):
    """Integer basis of the largest linear subspace contained in ``cone``."""
    c = dd_convert(cone)
    return la.nullspace(list(c.facets), c.ambient_dim) if c.facets else \
        [la.unit(c.ambient_dim, i) for i in range(c.ambient_dim)]


def dd_convert(cone):
    """Return ``cone`` with both representations, irredundant and consistent.

    If both are given on input they are checked against each other and a
    ``ConeError`` with a witness vector is raised on mismatch.
    """
    if "both" in cone._cache:
        return cone._cache["both"]
    dim = cone.ambient_dim
    if cone.rays is not None:
        facets = _generators_of(list(cone.rays), dim) if cone.rays else \
            _generators_of([], dim)
        rays = _generators_of(facets, dim)
        if cone.facets is not None:
            _check_pair(cone, rays, facets)
    else:
        rays = _generators_of(list(cone.facets), dim)
        facets = _generators_of(rays, dim) if rays else _generators_of([], dim)
    out = PolyCone(dim, rays=rays, facets=facets)
    out._cache["both"] = out
    cone._cache["both"] = out
    return out


def _check_pair(cone, rays, facets):
    for r in cone.rays:
        for f in cone.facets:
            if la.dot(f, r) < 0:
                raise ConeError("ray violates a stated facet", witness=r)
    for r in _generators_of(list(cone.facets), cone.ambient_dim):
        if any(la.dot(f, r) < 0 for f in facets):
            raise ConeError("facets admit a vector outside the ray cone", witness=r)


def is_strict(cone):
    """True iff the cone contains no line."""
    return not lineality_space(cone)


def extremal_rays(cone):
    """Minimal generating set of a strict cone (sorted primitive vectors)."""
    c = dd_convert(cone)
    lines = lineality_space(c)
    if lines:
        raise ConeError("cone contains a line", witness=la.oriented(lines[0]))
    return list(c.rays)


def member(cone, v):
    """Membership with certificate.

    Returns ``(True, coefficients)`` where ``v = sum c_i * rays[i]`` with all
    ``c_i >= 0`` (rays of the converted cone), or ``(False, normal)`` with a
    facet normal ``a`` such that ``a . v < 0``.
    """
    v = la.vec(v)
    if len(v) != cone.ambient_dim:
        raise ConeError(f"dimension mismatch: {len(v)} vs {cone.ambient_dim}")
    c = dd_convert(cone)
    for f in c.facets:
        if la.dot(f, v) < 0:
            return False, f
    if not any(v):
        return True, (0,) * len(c.rays)
    ok, x = la.nonneg_solution(la.transpose(c.rays), v)
    if not ok:  # cannot happen for a consistent pair; keep the certificate honest
        raise ConeError("facet and ray representations disagree", witness=v)
    return True, x


def ray_member(rays, v):
    """Membership in ``cone(rays)`` by exact LP, no conversion.

    Returns ``(True, coefficients)`` or ``(False, y)`` with ``y . r >= 0`` for
    every ray and ``y . v < 0``.
    """
    v = la.vec(v)
    if not rays:
        if any(v):
            # any coordinate functional that is negative on v separates
            i = next(i for i, x in enumerate(v) if x)
            y = la.unit(len(v), i)
            return False, y if v[i] < 0 else la.neg(y)
        return True, ()
    return la.nonneg_solution(la.transpose(rays), v)


def minkowski_sum(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise ConeError("ambient dimensions differ")
    ra = dd_convert(a).rays
    rb = dd_convert(b).rays
    return dd_convert(PolyCone(a.ambient_dim, rays=list(ra) + list(rb)))


def map_cone(cone, m, injective=False):
    """Image of ``cone`` under the matrix ``m`` (rows x cols, acting on columns)."""
    m = la.mat(m)
    if not m or len(m[0]) != cone.ambient_dim:
        raise ConeError("matrix does not match the cone dimension")
    if injective and la.rank(m) < len(m[0]):
        raise ConeError("embedding matrix is rank deficient")
    rays = dd_convert(cone).rays
    images = [la.matvec(m, r) for r in rays]
    return dd_convert(PolyCone(len(m), rays=images))


def dual_cone(cone):
    c = dd_convert(cone)
    return dd_convert(PolyCone(c.ambient_dim, rays=c.facets))


def equal(a, b):
    return dd_convert(a).rays == dd_convert(b).rays


# --------------------------------------------------------------------------
# JSON literals


def _parse_scalar(x):
    return la.as_fraction(x)


def _fmt_scalar(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cone_from_json(doc):
    if isinstance(doc, str):
        doc = json.loads(doc)
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim <= 0:
        raise ConeError("cone literal needs a positive integer 'dim'")
    rays = doc.get("rays")
    facets = doc.get("facets")
    conv = (lambda vs: [tuple(_parse_scalar(x) for x in v) for v in vs])
    return PolyCone(dim,
                    rays=conv(rays) if rays is not None else None,
                    facets=conv(facets) if facets is not None else None)


def cone_to_json(cone):
    c = dd_convert(cone)
    return {"dim": c.ambient_dim,
            "rays": [[_fmt_scalar(x) for x in r] for r in c.rays],
            "facets": [[_fmt_scalar(x) for x in f] for f in c.facets]}


def format_vector(v):
    return [_fmt_scalar(x) for x in v]
