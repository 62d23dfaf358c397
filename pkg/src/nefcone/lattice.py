"""Exact enumeration of integer points in ellipsoids of a positive definite form.

Used for the E8 frame: short vectors, and certified minimisation of
integral convex quadratics ``c + l.v + (a/2) v^T M v``.
"""

from fractions import Fraction
from math import floor, ceil, isqrt

from . import linalg as la


def E8_CARTAN():
    """Cartan matrix of E8 in Bourbaki order (chain 1-3-4-5-6-7-8, branch 2-4)."""
    edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
    m = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return tuple(tuple(r) for r in m)


def upper_form(m):
    """Coefficients ``q`` with ``x^T M x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2``."""
    n = len(m)
    q = [[Fraction(x) for x in row] for row in m]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return [[q[i][j] if j >= i else Fraction(0) for j in range(n)] for i in range(n)]


def _sqrt_up(t):
    """A rational upper bound for sqrt(t), t >= 0 rational."""
    t = Fraction(t)
    if t <= 0:
        return Fraction(0)
    num, den = t.numerator, t.denominator
    return Fraction(isqrt(num * den) + 1, den)


def ellipsoid_points(m, center, radius, q=None):
    """All integer ``x`` with ``(x-center)^T M (x-center) <= radius``.

    Yields ``(x, value)``. Exact: candidate ranges are widened by a rational
    square-root upper bound and every point is tested exactly.
    """
    n = len(m)
    q = q or upper_form(m)
    center = [Fraction(c) for c in center]
    radius = Fraction(radius)
    if radius < 0:
        return
    x = [0] * n

    def rec(i, remaining):
        # shift from already fixed coordinates j > i
        shift = sum((q[i][j] * (x[j] - center[j]) for j in range(i + 1, n)), Fraction(0))
        mid = center[i] - shift
        bound = _sqrt_up(remaining / q[i][i])
        lo = floor(mid - bound)
        hi = ceil(mid + bound)
        for xi in range(lo, hi + 1):
            y = xi - mid
            used = q[i][i] * y * y
            if used > remaining:
                continue
            x[i] = xi
            if i == 0:
                yield tuple(x), radius - (remaining - used)
            else:
                yield from rec(i - 1, remaining - used)

    yield from rec(n - 1, radius)


def short_vectors(m, max_norm):
    """Integer vectors with ``x^T M x <= max_norm``, sorted by (norm, x)."""
    pts = [(v, x) for x, v in ellipsoid_points(m, [0] * len(m), max_norm)]
    pts.sort()
    return [(x, v) for v, x in pts]


def minimize_quadratic(m, a, lin, const):
    """Exact minimum of ``const + lin.v + (a/2) v^T M v`` over integer ``v``.

    ``a > 0``. Returns ``(value, minimisers, info)`` where ``minimisers`` is
    the sorted list of all integer minimisers and ``info`` records the
    continuous optimum and the enumeration radius that certifies the result.
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("leading coefficient must be positive")
    lin = [Fraction(x) for x in lin]
    n = len(m)
    minv = la.inverse(m)
    vstar = [-x / a for x in la.matvec(minv, lin)]

    def value(v):
        return Fraction(const) + la.dot(lin, v) + a * Fraction(la.dot(v, la.matvec(m, v))) / 2

    vstar_val = value(vstar)
    guess = tuple(round(c) for c in vstar)
    best = value(guess)
    # q(v) = q(v*) + (a/2) (v-v*)^T M (v-v*)
    radius = 2 * (best - vstar_val) / a
    q = upper_form(m)
    best_pts = []
    count = 0
    for x, norm in ellipsoid_points(m, vstar, radius, q):
        count += 1
        val = vstar_val + a * norm / 2
        if val < best:
            best, best_pts = val, [x]
        elif val == best:
            best_pts.append(x)
    best_pts.sort()
    info = {"center": tuple(vstar), "center_value": vstar_val,
            "radius": radius, "enumerated": count}
    return best, best_pts, info
