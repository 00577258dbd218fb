import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import eisenstein as E


@pytest.fixture(scope="module")
def packet():
    pk, rep = E.enforce_hypotheses(64)
    assert rep.passed
    return pk


@pytest.fixture(scope="module")
def g0():
    return E.random_sl2(np.random.default_rng(0))


# -- transforms ----------------------------------------------------------------------

def _standard_gaussian():
    return E.Gaussian(1.0 + 0j, np.eye(2), np.zeros(2), np.zeros(2))


def test_standard_gaussian_is_self_dual():
    g = _standard_gaussian()
    assert g.dual().same_as(g)
    xs = ys = np.arange(-6, 6, 1 / 16)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    px, py = np.array([0.0, 0.3, -1.1]), np.array([0.0, 0.7, 0.2])
    got = E.symplectic_fourier(g.values(X, Y), xs, ys, px, py)
    assert np.allclose(got, np.exp(-np.pi * (px ** 2 + py ** 2)), atol=1e-12)


def test_transform_of_zero_is_zero():
    xs = ys = np.arange(-2, 2, 0.25)
    assert np.all(E.symplectic_fourier_grid(np.zeros((xs.size, ys.size)), xs, ys) == 0)


gauss = st.tuples(st.floats(0.6, 1.8), st.floats(0.6, 1.8), st.floats(-0.3, 0.3),
                  st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))


def _make(params):
    a, b, c, p1, p2, k1, k2 = params
    return E.Gaussian(1.0 + 0.5j, np.array([[a, c], [c, b]]), np.array([p1, p2]), np.array([k1, k2]))


@settings(max_examples=15)
@given(gauss)
def test_closed_form_dual_matches_quadrature(params):
    g = _make(params)
    xs = ys = np.arange(-9, 9, 1 / 12)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    px, py = np.array([0.2, -0.8, 1.3]), np.array([0.5, 0.1, -0.9])
    quad = E.symplectic_fourier(g.values(X, Y), xs, ys, px, py)
    assert np.allclose(quad, g.dual().values(px, py), atol=1e-9)


@given(gauss)
def test_transform_is_an_involution(params):
    g = _make(params)
    assert g.dual().dual().same_as(g, tol=1e-9)


# -- the Mellin multiplier ------------------------------------------------------------

@pytest.mark.parametrize("d", [0, 1, -2, 0.5, 1 + 2j, -1.5 - 0.5j])
def test_euler_polynomial_eigenvalue(d):
    s = -(1 + d)
    assert abs(E.euler_eigen_check(d) - E.flat_multiplier(s)) < 1e-12 * max(1, abs(E.flat_multiplier(s)))


@settings(max_examples=15)
@given(gauss, st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
def test_euler_operator_against_finite_difference(params, x, y):
    g = _make(params)
    h = 1e-5
    fd = (g.values((1 + h) * x, (1 + h) * y) - g.values((1 - h) * x, (1 - h) * y)) / (2 * h)
    got = g.euler_poly_values(np.array(x), np.array(y), (0.0, 1.0))
    assert abs(got - fd) < 1e-6 * max(1.0, abs(fd))


def test_multiplier_vanishes_at_line_integral_points():
    # s = 0 is the line integral; s = 1 gives its dual counterpart
    assert E.flat_multiplier(0) == 0 and E.flat_multiplier(1) == 0 and E.flat_multiplier(-1) == 0


def test_flat_packet_has_vanishing_line_integrals(packet):
    assert np.max(np.abs(E.line_integrals(packet))) <= 1e-8 * packet.sup_norm()
    raw = packet.raw()
    assert np.max(np.abs(E.line_integrals(raw))) > 1e-3 * raw.sup_norm()


def test_mellin_multiplier_on_packet(packet):
    err = E.mellin_flat_check(packet, [0.3, 1.5 + 2j, -0.5 + 1j, 2, 1j], [0.0, 0.05, math.pi])
    assert err <= 1e-6


# -- packet shape -----------------------------------------------------------------------

def test_packet_is_even_and_self_dual(packet):
    rng = np.random.default_rng(4)
    x, y = E.sample_points(packet, 30, rng)
    assert np.allclose(packet(x, y), packet(-x, -y), atol=1e-14)
    assert E.self_dual_error(packet) < 1e-8
    assert E.double_transform_error(packet) < 1e-8
    assert E.angular_spectrum_leakage(packet) < 1e-6


def test_packet_radius_scales_like_root_T():
    for T in (16, 64, 256):
        pk = E.build_packet(T)
        r_in, r_out = pk.support_radii()
        assert r_in < pk.x0 < r_out
        assert pk.x0 == pytest.approx(math.sqrt(T / (2 * math.pi)))


def test_small_T_rejected():
    with pytest.raises(E.PacketBuildError):
        E.build_packet(2)


def test_zero_packet_gives_zero():
    pk = E.WavePacket(64.0, [])
    assert np.all(pk(np.array([0.1, 3.0]), np.array([0.2, -1.0])) == 0)


# -- lattice sums -------------------------------------------------------------------

def test_two_lattice_sums_agree(packet):
    rng = np.random.default_rng(5)
    for _ in range(6):
        g = E.random_sl2(rng)
        a = E.eisenstein_eval(packet, g, "full-flat")
        b = E.eisenstein_eval(packet, g, "primitive-sharp")
        assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


@pytest.mark.parametrize("gamma", [[[1, 1], [0, 1]], [[0, -1], [1, 0]], [[2, 1], [1, 1]]])
def test_lattice_invariance(packet, g0, gamma):
    gamma = np.array(gamma, dtype=float)
    a = E.eisenstein_eval(packet, g0)
    b = E.eisenstein_eval(packet, gamma @ g0)
    assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_unknown_mode(packet, g0):
    with pytest.raises(ValueError):
        E.eisenstein_eval(packet, g0, "other")


# -- Fourier expansion --------------------------------------------------------------------

def test_constant_term_matches_poisson_form(packet, g0):
    fd = E.fourier_expand(packet, g0)
    scale = max(abs(w) for w in fd.coefficients.values())
    assert abs(fd.constant - fd.constant_poisson) <= 1e-8 * scale


def test_divisor_structure(packet, g0):
    fd = E.fourier_expand(packet, g0)
    for l, cnt in fd.divisor_terms.items():
        ndiv = sum(1 for c in range(1, abs(l) + 1) if l % c == 0)
        assert cnt <= ndiv
        if all(abs(l) % d for d in range(2, abs(l))) and abs(l) > 1:
            assert cnt <= 2


def test_coefficients_against_direct_integrals(packet, g0):
    fd = E.fourier_expand(packet, g0)
    xs = np.arange(256) / 256
    psi = E.psi_along_unipotent(packet, g0, xs)
    for l in sorted(fd.coefficients, key=lambda l: -abs(fd.coefficients[l]))[:6] + [0]:
        direct = np.mean(psi * np.exp(-2j * np.pi * l * xs))
        want = fd.constant if l == 0 else fd.coefficients[l]
        assert abs(direct - want) <= 1e-3


def test_reconstruction_and_parseval(packet, g0):
    xs = np.linspace(0, 1, 9)
    scale = np.max(np.abs(E.psi_along_unipotent(packet, g0, xs)))
    assert E.reconstruction_error(packet, g0, xs) <= 1e-6 * scale
    channels, direct = E.parseval_check(packet, g0, samples=256)
    assert channels == pytest.approx(direct, rel=1e-3)


# -- local profile ----------------------------------------------------------------------

def test_profile_normalization_and_constant_term_decay(packet):
    omega = E.omega_grid(n_y=2, n_phi=8)
    rep = E.local_l2_profile(packet, [1.0, 2.0, 16.0], omega)
    rows = {r.t: r for r in rep.rows}
    assert rows[1.0].normalized == pytest.approx(1.0) and rows[1.0].ratio == pytest.approx(1.0)
    assert rows[16.0].envelope == 256.0
    assert rows[16.0].I0 <= 1e-6 * rows[1.0].measured
    assert rep.max_normalized(8.0) < 20
