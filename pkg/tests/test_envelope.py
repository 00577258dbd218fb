import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact.envelope import GL, hc_project, random_element, symbol_ring, symmetrize, unsymmetrize

seeds = st.integers(0, 10 ** 6)


def _matrix_rep(z, n):
    """Image of z in End(C^n) under the defining representation E_ij -> unit matrix."""
    out = np.zeros((n, n))
    for mono, c in z.terms.items():
        m = np.eye(n)
        for g in mono:
            i, j = z.alg.order[g]
            u = np.zeros((n, n))
            u[i - 1, j - 1] = 1.0
            m = m @ u
        out += float(c) * m
    return out


@pytest.mark.parametrize("n", [2, 3])
def test_commutation_relations(n):
    alg = GL(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    lhs = alg.gen(i, j).commutator(alg.gen(k, l))
                    rhs = alg.zero()
                    if j == k:
                        rhs = rhs + alg.gen(i, l)
                    if l == i:
                        rhs = rhs - alg.gen(k, j)
                    assert lhs == rhs


@given(seeds)
def test_associativity_of_pbw_product(seed):
    rng = random.Random(seed)
    a, b, c = (random_element(2, 2, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(seeds)
def test_product_respects_defining_representation(seed):
    rng = random.Random(seed)
    a, b = random_element(3, 2, rng), random_element(3, 2, rng)
    assert np.allclose(_matrix_rep(a * b, 3), _matrix_rep(a, 3) @ _matrix_rep(b, 3))


@given(seeds)
def test_unsymmetrize_inverts_symmetrize(seed):
    rng = random.Random(seed)
    z = random_element(2, 3, rng)
    p = unsymmetrize(z)
    assert symmetrize(p, 2) == z


def test_symmetrization_of_a_product_of_two_letters():
    r = symbol_ring(2)
    z = symmetrize(r.var("e[1][2]") * r.var("e[2][1]"), 2)
    alg = GL(2)
    e12, e21 = alg.gen(1, 2), alg.gen(2, 1)
    assert z == (e12 * e21 + e21 * e12).scale(Fraction(1, 2))


def test_hc_projection_of_casimir():
    # Casimir sum E_ij E_ji on gl2 projects to the rho-shifted quadratic
    alg = GL(2)
    cas = alg.zero()
    for i in (1, 2):
        for j in (1, 2):
            cas = cas + alg.gen(i, j) * alg.gen(j, i)
    h = hc_project(cas)
    x1, x2 = h.ring.var("e[1][1]"), h.ring.var("e[2][2]")
    assert h == x1 ** 2 + x2 ** 2 - Fraction(1, 2)
