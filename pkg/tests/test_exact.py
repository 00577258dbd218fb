import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact.exact import (GaussianRational, PolyRing, QuadraticSurd, SingularSystem, det, det_expand,
                            nullspace, poly_coeffs_from_roots, solve, sylvester_resultant)

R = PolyRing(["x", "y"])
small = st.integers(-5, 5)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def poly_strategy():
    mono = st.tuples(st.integers(0, 3), st.integers(0, 3))
    return st.dictionaries(mono, small, max_size=5).map(lambda d: R.zero() + sum(
        (R.monomial({"x": a, "y": b}, c) for (a, b), c in d.items()), R.zero()))


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == R.zero()


@given(poly_strategy(), poly_strategy(), fracs, fracs)
def test_evaluation_is_a_homomorphism(a, b, u, v):
    pt = {"x": u, "y": v}
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@given(poly_strategy(), poly_strategy())
def test_leibniz_rule(a, b):
    assert (a * b).diff("x") == a.diff("x") * b + a * b.diff("x")


def test_division_by_monomial_and_negative_powers():
    x = R.var("x")
    p = (x ** 2 + x) / x
    assert p == x + 1
    assert (x ** -1) * x == R.one()


@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_leibniz_and_numpy(m):
    d = det(m)
    assert d == det_expand(m)
    assert abs(float(d) - np.linalg.det(np.array(m, dtype=float))) < 1e-8 * (1 + abs(float(d)))


@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(fracs, min_size=3, max_size=3))
def test_solve_roundtrip(a, b):
    if det(a) == 0:
        with pytest.raises(SingularSystem):
            solve(a, b)
        return
    x = solve(a, b)
    assert [sum(a[i][j] * x[j] for j in range(3)) for i in range(3)] == b


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_vectors_are_killed(a):
    basis = nullspace(a)
    for v in basis:
        assert all(sum(Fraction(r[j]) * v[j] for j in range(4)) == 0 for r in a)
    rank = np.linalg.matrix_rank(np.array(a, dtype=float))
    assert len(basis) == 4 - rank


@given(st.lists(fracs, min_size=1, max_size=3), st.lists(fracs, min_size=1, max_size=3))
def test_resultant_is_product_of_root_differences(rf, rg):
    # monic polys prod (X + r): resultant = prod (s - r) over roots -r of f and -s of g
    f = poly_coeffs_from_roots(rf)
    g = poly_coeffs_from_roots(rg)
    want = Fraction(1)
    for r, s in itertools.product(rf, rg):
        want *= (s - r)
    assert sylvester_resultant(f, g) == want


def test_poly_coeffs_from_roots_example():
    assert poly_coeffs_from_roots([1, 2]) == [1, 3, 2]


@given(fracs, fracs, fracs, fracs)
def test_gaussian_rational_field(a, b, c, d):
    z = GaussianRational(a, b)
    w = GaussianRational(c, d)
    assert complex(z * w) == pytest.approx(complex(z) * complex(w))
    if w:
        assert (z / w) * w == z


@given(st.sampled_from([2, 3, 5, 7]), fracs, fracs, fracs, fracs)
def test_quadratic_surd_arithmetic_and_sign(d, a, b, c, e):
    x = QuadraticSurd(a, b, d)
    y = QuadraticSurd(c, e, d)
    fx, fy = float(x), float(y)
    assert float(x * y) == pytest.approx(fx * fy, abs=1e-9)
    assert float(x - y) == pytest.approx(fx - fy, abs=1e-9)
    if y:
        assert (x / y) * y == x
    if abs(fx) > 1e-9:
        assert x.sign() == (1 if fx > 0 else -1)


@pytest.mark.parametrize("d,k", [(2, 3), (5, -3), (3, 4), (7, -1)])
def test_sqrt_power(d, k):
    v = QuadraticSurd.sqrt_power(d, k)
    assert float(v) == pytest.approx(d ** (k / 2))
    assert v * QuadraticSurd.sqrt_power(d, -k) == QuadraticSurd(1, 0, d)
