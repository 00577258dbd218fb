import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import counting as C

ONE = C.DominantTorus((F(1),))


def torus(*xs):
    return C.DominantTorus(tuple(F(x) for x in xs))


# -- distance to the subgroup --------------------------------------------------------

def test_distance_examples():
    assert C.subgroup_distance([[1, 0], [0, 1]]) == 0
    assert C.subgroup_distance([[3, 0, 0], [1, 2, 0], [0, 0, 5]]) == 0  # block diagonal
    assert C.subgroup_distance([[0, 1], [1, 0]]) == 1
    assert C.subgroup_distance([[1, 0], [1, 1]]) == 1  # inverse has |c'/d'| = 1
    assert C.subgroup_distance([[1, F(1, 10)], [0, 1]]) == F(2, 10)


rat = st.fractions(min_value=-3, max_value=3, max_denominator=6)
mat2 = st.lists(rat, min_size=4, max_size=4).map(lambda v: [[v[0], v[1]], [v[2], v[3]]])
mat2 = mat2.filter(lambda g: g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0)


@given(mat2, st.fractions(min_value=F(1, 5), max_value=5).filter(bool))
def test_distance_scale_invariant_and_bounded(g, c):
    d = C.subgroup_distance(g)
    assert 0 <= d <= 1
    assert C.subgroup_distance([[c * x for x in row] for row in g]) == d


@given(mat2, st.fractions(min_value=F(1, 2), max_value=2), st.fractions(min_value=F(1, 2), max_value=2),
       st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_distance_quasi_invariant_under_compact(g, h1, h2, s1, s2):
    # multiplying by diag(h, 1) with h in a compact changes subgroup_distance by at most a fixed factor
    left = [[s1 * h1 * g[0][0], s1 * h1 * g[0][1]], [g[1][0], g[1][1]]]
    both = [[left[0][0] * s2 * h2, left[0][1]], [left[1][0] * s2 * h2, left[1][1]]]
    d, e = C.subgroup_distance(g), C.subgroup_distance(both)
    assert e <= 16 * d and d <= 16 * e


def test_distance_against_adjoint_distance():
    rng = np.random.default_rng(3)
    ratios = []
    for _ in range(200):
        eps = 10.0 ** rng.uniform(-4, -1)
        g = np.eye(3) + eps * rng.normal(size=(3, 3))
        gf = [[F(float(x)) for x in row] for row in g]
        ratios.append(float(C.subgroup_distance(gf)) / C.adjoint_distance(g))
    assert max(ratios) < 10


# -- enumeration ---------------------------------------------------------------------

def _brute_unit_box(R):
    out = set()
    for a, b, c, d in itertools.product(range(-R, R + 1), repeat=4):
        if abs(a * d - b * c) == 1 and (b, c) != (0, 0):
            out.add(C._canonical([[a, b], [c, d]]))
    return sorted(out)


def test_unit_instance_matches_direct_enumeration():
    got = C.enumerate_sigma(C.SigmaInstance(ONE, ONE, 1, 1, 1, 2))
    assert got == _brute_unit_box(2)
    assert len(got) == 50


def test_tiny_box_and_small_X_are_empty():
    assert C.enumerate_sigma(C.SigmaInstance(ONE, ONE, 1, 1, 1, F(1, 2))) == []
    assert C.enumerate_sigma(C.SigmaInstance(ONE, ONE, 1, 1, F(1, 1000), 2)) == []


@pytest.mark.parametrize("t,u,ell,X,R", [(1, 1, 1, 1, 2), (2, 1, 2, 1, 2), (2, F(1, 2), 5, 1, 2),
                                         (4, 1, 3, F(1, 2), 3), (F(1, 2), 2, 6, F(3, 4), 2)])
def test_vectorized_path_matches_generic(t, u, ell, X, R):
    inst = C.SigmaInstance(torus(t), torus(u), ell, ell, X, R)
    assert C.enumerate_sigma(inst) == C.enumerate_sigma(inst, "generic")


@pytest.mark.parametrize("t,u,l,lp,X", [(2, 1, 2, 2, 1), (2, F(1, 2), 5, 5, 1), (1, 1, 3, 3, F(1, 2)),
                                        (1, 1, 1, 4, 1), (4, 2, 2, 2, 1)])
def test_swapping_roles_inverts_the_set(t, u, l, lp, X):
    a = C.enumerate_sigma(C.SigmaInstance(torus(t), torus(u), l, lp, X, 2))
    b = C.enumerate_sigma(C.SigmaInstance(torus(u), torus(t), lp, l, X, 2))
    # compare projective classes through their primitive lifts
    prim = lambda flat: C._canonical([[x // C._content([flat]) for x in flat]])
    assert sorted(prim(C.inverse_class(x, 2)) for x in a) == sorted(prim(y) for y in b)
    assert len(a) == len(b)


def test_monotone_in_X_and_R():
    t, u = torus(2), torus(1)
    sizes_X = [len(C.enumerate_sigma(C.SigmaInstance(t, u, 3, 3, X, 2))) for X in (F(1, 8), F(1, 4), F(1, 2), 1)]
    sizes_R = [len(C.enumerate_sigma(C.SigmaInstance(t, u, 3, 3, 1, R))) for R in (1, 2, 3, 4)]
    assert sizes_X == sorted(sizes_X) and sizes_R == sorted(sizes_R)
    a = set(C.enumerate_sigma(C.SigmaInstance(t, u, 3, 3, F(1, 4), 2)))
    assert a <= set(C.enumerate_sigma(C.SigmaInstance(t, u, 3, 3, F(1, 2), 2)))


def test_rank_two_unit_instance():
    one = torus(1, 1)
    small = C.SigmaInstance(one, one, 1, 1, F(1, 2), 1)
    big = C.SigmaInstance(one, one, 1, 1, 1, 1)
    s, b = C.enumerate_sigma(small), C.enumerate_sigma(big)
    assert set(s) <= set(b) and len(b) > 0
    for flat in b:
        m = [list(flat[i * 3:(i + 1) * 3]) for i in range(3)]
        assert abs(C.det(m)) == 1 and not C._in_subgroup(m)
        assert all(abs(x) <= 1 for x in flat)


def test_search_budget_guard():
    inst = C.SigmaInstance(torus(64), torus(F(1, 64)), 20, 20, 1, 2, budget=10)
    with pytest.raises(C.SearchBudgetExceeded):
        C.enumerate_sigma(inst)


def test_instance_validation():
    with pytest.raises(ValueError):
        C.SigmaInstance(ONE, ONE, 0, 1)
    with pytest.raises(ValueError):
        C.SigmaInstance(ONE, ONE, 1, 1, X=2)
    with pytest.raises(ValueError):
        C.DominantTorus((F(1), F(2)))


def test_crude_bound_on_small_sweep():
    sweep = C.default_sweep(kmax=2, ells=(1, 2, 3, 5, 8))
    rep = C.run_sweep(sweep)
    assert rep.crude_ok and rep.crude_constant <= rep.crude_explicit
    assert rep.nonempty_ok
    for row in rep.rows:
        assert row.count <= row.crude * F(rep.crude_explicit)


# -- combinatorial lemmas -------------------------------------------------------------

def test_perm_distance_examples():
    assert C.perm_distance((1, 5, 2), (1, 5, 2)) == 0
    assert C.perm_distance((0, 1), (1, 0)) == 0
    assert C.perm_distance((0, 10), (3, 4)) == 6
    assert C.perm_distance((), ()) == 0


@given(st.lists(st.tuples(st.integers(-30, 30), st.integers(-30, 30)), min_size=1, max_size=6))
def test_sorted_matching_property(pairs):
    a, b = zip(*pairs)
    assert C.perm_distance(a, b) == C.sorted_distance(a, b)


def test_sorted_matching_ten_thousand_cases():
    assert C.sorted_matching_check(10_000, np.random.default_rng(0))["failures"] == 0


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-10, 10), min_size=n + 1, max_size=n + 1),
    st.lists(st.integers(-10, 10), min_size=n + 1, max_size=n + 1),
    st.integers(1, n + 1), st.integers(1, n + 1))))
def test_removal_lemma_property(data):
    a, b, k, l = data
    b[l - 1] = a[k - 1]
    c = C.perm_distance(a, b)
    assert C.removal_lemma_check(a, b, k, l, c)


def test_removal_lemma_search_and_factor_two_is_needed():
    res = C.removal_lemma_search(10_000, np.random.default_rng(1))
    assert res["failures"] == 0
    assert res["cases_exceeding_c"] > 0
    # explicit case where c alone does not suffice
    a, b = (0, 2), (2, 4)
    assert C.perm_distance(a, b) == 2
    assert C.perm_distance(C.remove(a, 2), C.remove(b, 1)) == 4


def test_removal_lemma_rejects_bad_hypotheses():
    with pytest.raises(ValueError):
        C.removal_lemma_check((0, 1), (5, 6), 1, 1, 1)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(
    st.fractions(min_value=F(1, 50), max_value=50, max_denominator=50), min_size=n, max_size=n)))
def test_t_dagger_bounds_property(t):
    t = sorted(t, reverse=True)
    assert C.torus_height(t) >= 1
    assert C.torus_height_bounds(t)


def test_t_dagger_examples():
    assert C.torus_height((1, 1, 1)) == 1
    for n in range(2, 6):
        for r in (2, 3, F(5, 2)):
            td, bound = C.torus_height_example(r, n)
            assert td == F(r) ** (2 * (n - 1))
            assert bound == max(F(r) ** (n * (n - 1)), F(r) ** n)
            assert td <= bound


def test_t_dagger_ten_thousand_random():
    assert C.torus_height_search(10_000, np.random.default_rng(2))["failures"] == 0
