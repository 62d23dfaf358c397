import itertools
from collections import Counter
from fractions import Fraction

from hypothesis import given, strategies as st

from nefcone import linalg as la
from nefcone.lattice import E8_CARTAN, upper_form, short_vectors, minimize_quadratic
import oracles


def test_e8_cartan_unimodular_even():
    m = E8_CARTAN()
    assert la.det(m) == 1
    assert all(m[i][i] == 2 for i in range(8))
    upper_form(m)  # positive definite


def test_e8_theta_series():
    counts = Counter(n for _, n in short_vectors(E8_CARTAN(), 6))
    assert [counts[2 * k] for k in range(4)] == [oracles.e8_theta(k) for k in range(4)]


def test_upper_form_reconstructs():
    m = ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    q = upper_form(m)
    for x in itertools.product(range(-2, 3), repeat=3):
        direct = la.dot(x, la.matvec(m, x))
        s = sum(q[i][i] * (x[i] + sum(q[i][j] * x[j] for j in range(i + 1, 3))) ** 2
                for i in range(3))
        assert s == direct


forms = st.sampled_from([((2,),), ((2, -1), (-1, 2)), ((2, 1), (1, 4)),
                         ((2, -1, 0), (-1, 2, -1), (0, -1, 2)), ((4, 1, 0), (1, 2, 0), (0, 0, 2))])


@given(forms, st.integers(1, 4), st.data())
def test_minimize_matches_box_search(m, a, data):
    n = len(m)
    # keep the continuous optimum well inside the search box
    span = 9 if n <= 2 else 4
    lin = [data.draw(st.integers(-span, span)) for _ in range(n)]
    const = data.draw(st.integers(-5, 5))
    value, pts, info = minimize_quadratic(m, a, lin, const)

    def q(v):
        return const + la.dot(lin, v) + Fraction(a) * la.dot(v, la.matvec(m, v)) / 2

    box = list(itertools.product(range(-12, 13), repeat=n)) if n <= 2 else \
        list(itertools.product(range(-10, 11), repeat=n))
    best = min(q(v) for v in box)
    assert value == best
    assert pts == sorted(v for v in box if q(v) == best)
    assert info["radius"] >= 0
