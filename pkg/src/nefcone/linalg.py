"""Exact rational linear algebra on tuples of ``Fraction``/``int``.

Vectors are tuples, matrices are tuples of row tuples. Nothing here ever
touches a float.
"""

from fractions import Fraction
from math import gcd
from functools import reduce


def as_fraction(x):
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact scalar: {x!r}")


def vec(entries):
    """Return an exact vector; integral entries stay ``int``."""
    out = []
    for e in entries:
        q = as_fraction(e)
        out.append(q.numerator if q.denominator == 1 else q)
    return tuple(out)


def mat(rows):
    return tuple(vec(r) for r in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n):
    return (0,) * n


def unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def dot(u, v):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v) if a and b)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def neg(v):
    return tuple(-a for a in v)


def lincomb(coeffs, vectors, dim):
    out = [0] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


def transpose(m):
    return tuple(zip(*m)) if m else ()


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def is_integral(v):
    return all(Fraction(x).denominator == 1 for x in v)


def to_int(v):
    if not is_integral(v):
        raise ValueError(f"vector is not integral: {v}")
    return tuple(int(x) for x in v)


def primitive(v):
    """Scale a nonzero rational vector to a primitive integer vector.

    The sign is preserved: ``primitive((-2, 4)) == (-1, 2)``.
    """
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise ValueError("zero vector has no primitive form")
    den = reduce(lambda a, b: a * b // gcd(a, b), (q.denominator for q in fr), 1)
    ints = [int(q * den) for q in fr]
    g = reduce(gcd, (abs(i) for i in ints if i), 0)
    return tuple(i // g for i in ints)


def oriented(v):
    """Primitive form with first nonzero coordinate positive (for lines)."""
    p = primitive(v)
    for x in p:
        if x:
            return p if x > 0 else neg(p)
    return p


def rref(m):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m):
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m, ncols=None):
    """Integer basis (primitive vectors) of the right kernel of ``m``."""
    if not m:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [unit(ncols, i) for i in range(ncols)]
    ncols = len(m[0])
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(primitive(v))
    return basis


def independent_rows(m):
    """Indices of a maximal linearly independent subset of rows, greedily."""
    chosen = []
    basis = []
    for i, row in enumerate(m):
        if rank(basis + [row]) > len(basis):
            basis.append(row)
            chosen.append(i)
    return chosen


def solve(a, b):
    """Solve ``a x = b`` exactly for square invertible ``a``."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(rows[i][n] for i in range(n))


def inverse(a):
    n = len(a)
    aug = [list(a[i]) + list(unit(n, i)) for i in range(n)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return tuple(vec(rows[i][n:]) for i in range(n))


def det(a):
    n = len(a)
    m = [[Fraction(x) for x in r] for r in a]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d.numerator if d.denominator == 1 else d


def solve_any(a, b):
    """Some solution of ``a x = b`` (any shape), or None if inconsistent."""
    if not a:
        return None
    ncols = len(a[0])
    aug = [list(a[i]) + [b[i]] for i in range(len(a))]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return tuple(x)


# --------------------------------------------------------------------------
# exact linear programming


def nonneg_solution(a, b):
    """Decide ``{x >= 0 : a x = b}`` exactly.

    Returns ``(True, x)`` with a feasible point, or ``(False, y)`` with a
    Farkas certificate: ``y^T a >= 0`` componentwise and ``y^T b < 0``.
    Phase-one simplex with Bland's rule over ``Fraction``.
    """
    m = len(a)
    if m == 0:
        return True, ()
    n = len(a[0])
    a = [[Fraction(x) for x in row] for row in a]
    b = [Fraction(x) for x in b]
    sign = []
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
            sign.append(-1)
        else:
            sign.append(1)
    # tableau columns: n original, m artificial
    tab = [a[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [b[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    ncol = n + m
    # objective: minimise sum of artificials; reduced costs row
    cost = [Fraction(0)] * (ncol + 1)
    for i in range(m):
        for j in range(ncol + 1):
            cost[j] -= tab[i][j]
    for i in range(m):
        cost[n + i] += 1
    while True:
        enter = next((j for j in range(ncol) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][ncol] / tab[i][enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded cannot happen in phase one
            raise ArithmeticError("phase-one LP unbounded")
        r = best[1]
        p = tab[r][enter]
        tab[r] = [x / p for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[r])]
        basis[r] = enter
    if cost[ncol] == 0:
        x = [Fraction(0)] * n
        for i, bj in enumerate(basis):
            if bj < n:
                x[bj] = tab[i][ncol]
        return True, vec(x)
    # dual values of the phase-one optimum give a Farkas certificate
    y = [-(cost[n + i] - 1) for i in range(m)]
    y = [-yi * s for yi, s in zip(y, sign)]
    return False, vec(y)
