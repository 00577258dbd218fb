import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import hecke as H
from artifact.exact import QuadraticSurd, det

PRIMES = [2, 3, 5]


@pytest.mark.parametrize("p", PRIMES + [7])
def test_gl2_degree_one_cosets(p):
    reps = H.coset_reps(p, (1, 0))
    assert len(reps) == p + 1
    want = {((p, b), (0, 1)) for b in range(p)} | {((1, 0), (0, p))}
    assert {tuple(map(tuple, m)) for m in reps} == want


def test_trivial_and_central_cosets():
    assert [tuple(map(tuple, m)) for m in H.coset_reps(3, (0, 0, 0))] == [((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    assert [tuple(map(tuple, m)) for m in H.coset_reps(5, (1, 1))] == [((5, 0), (0, 5))]


def _dominant_small(m):
    return st.lists(st.integers(0, 3), min_size=m, max_size=m).map(lambda v: tuple(sorted(v, reverse=True))) \
        .filter(lambda a: sum(a) - len(a) * a[-1] <= 3)


@settings(max_examples=30)
@given(st.sampled_from([2, 3]), st.integers(1, 3).flatmap(_dominant_small))
def test_coset_count_matches_flag_count(p, a):
    reps = H.coset_reps(p, a)
    assert len(reps) == H.macdonald_count(p, a)
    assert len({tuple(map(tuple, m)) for m in reps}) == len(reps)
    for m in reps:
        assert H.smith_type(m, p) == a
        assert H.valuation(det(m), p) == sum(a)


def test_flag_count_examples():
    # number of index-p sublattices of Z^3 is p^2 + p + 1
    assert H.macdonald_count(2, (1, 0, 0)) == 7
    assert H.macdonald_count(3, (1, 1, 0)) == 13
    assert H.macdonald_count(2, (2, 1, 0)) == 42


@pytest.mark.parametrize("p", PRIMES)
def test_lambda0_of_degree_one_operator(p):
    assert H.lambda_0(H.T(p, (1, 0))) == QuadraticSurd.sqrt_power(p, 1) * 2
    assert H.lambda_0(H.t_normalized(p, 1, 2)) == 2
    assert H.lambda_0(H.T(p, (0, 0))) == 1


@pytest.mark.parametrize("p", PRIMES)
def test_satake_against_closed_form_gl2(p):
    rng = np.random.default_rng(p)
    for s in rng.normal(size=(10, 2)) + 1j * rng.normal(size=(10, 2)):
        closed = math.sqrt(p) * (p ** -s[0] + p ** -s[1])
        assert abs(H.satake_numeric(H.T(p, (1, 0)), s) - closed) < 1e-10 * max(1, abs(closed))


def test_satake_identity_is_one():
    assert H.satake_numeric(H.T(3, (0, 0, 0)), [0.3j, 1.0, -2j]) == pytest.approx(1)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("a", [(1, 0), (2, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0)])
def test_tempered_inequality(p, a):
    samples = H.unitary_samples(len(a), 100, np.random.default_rng(0))
    res = H.tempered_inequality_check(H.T(p, a), samples)
    assert res["passed"]
    assert abs(H.satake_numeric(H.T(p, a), [0] * len(a)) - res["lambda_0"]) < 1e-9 * res["lambda_0"]


def test_inequality_fails_off_unitary_axis():
    res = H.tempered_inequality_check(H.T(2, (1, 0)), np.array([[-0.3, 0.3]]))
    assert not res["passed"]


def test_signed_combination_can_violate_inequality():
    el = H.HeckeElement(2, 2, {(1, 0): 1, (0, 0): -2})
    l0 = float(H.lambda_0(el))
    s = np.array([1j * math.pi / math.log(2), 0])
    assert abs(H.satake_numeric(el, s)) > l0


@pytest.mark.parametrize("p,a,b", [(2, (1, 0), (1, 0)), (3, (1, 0), (1, 1)), (2, (1, 0, 0), (1, 0, 0)),
                                   (2, (1, 0, 0), (1, 1, 0)), (3, (2, 0), (1, 0))])
def test_satake_is_multiplicative(p, a, b):
    for z in [(1, 1, 1)[:len(a)], (2, Fraction(1, 3), 5)[:len(a)]]:
        assert H.homomorphism_check(p, a, b, z)


def test_convolution_structure_gl2():
    # T(1,0)^2 = T(2,0) + (p+1) T(1,1)
    for p in (2, 3):
        conv = H.convolve(p, (1, 0), (1, 0))
        assert conv["consistent"] and conv["structure"] == {(2, 0): 1, (1, 1): p + 1}


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
@pytest.mark.parametrize("j", [1, 2])
def test_restricted_main_term_gl2_gl1(p, j):
    # hand computation: the restriction is p^(-j/2) (T(j) + T(-j)) on GL_1
    res = H.restricted_main_term(p, j)
    assert res["value"] == QuadraticSurd.sqrt_power(p, -j) * 2
    assert res["ratio"] == 2


def test_restricted_main_term_identity_and_same_prime():
    assert H.restricted_main_term(5, 0)["value"] == 1
    for p in (2, 3, 5):
        assert H.restricted_main_term(p, 1, same_prime=True)["ratio"] == 2


def test_restricted_main_term_gl3_gl2_bounded():
    ratios = [H.restricted_main_term(p, 1, "gl3-gl2")["ratio_float"] for p in (2, 3, 5, 7)]
    assert max(ratios) < 4
    assert H.restricted_main_term(3, 1, "gl3-gl2")["ratio"] == QuadraticSurd(2, Fraction(1, 3), 3)


def test_sweep_constant_over_primes_to_50():
    primes = [p for p in range(2, 51) if all(p % d for d in range(2, p))]
    for j in (1, 2):
        sw = H.main_term_sweep(primes, j)
        assert len(sw["rows"]) == 15 and sw["constant"] == pytest.approx(2.0)


def test_unsupported_pair():
    with pytest.raises(H.UnsupportedPair):
        H.restricted_main_term(2, 1, "gl4-gl3")


def test_non_dominant_operator_rejected():
    with pytest.raises(ValueError):
        H.HeckeOperator(2, (0, 1))
