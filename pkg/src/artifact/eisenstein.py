"""Numerical harness for SL_2 pseudo-Eisenstein series built from a wave packet.

The packet is a sum of Gaussian wave packets on the plane of row vectors,

    g(w) = a exp(-pi (w - p)^T M (w - p) + 2 pi i k.w),

for which the symplectic Fourier transform

    F f(x, y) = int f(u, v) e(x v - y u) du dv

is again of this form: M -> M / det M, p -> -J k, k -> J p,
a -> a det(M)^(-1/2) e(k.p), with J = [[0, 1], [-1, 0]].  Taking M = I,
p = (x0, 0) and k = J p gives an exact fixed point; x0 = sqrt(T / 2 pi)
makes the angular frequency of the packet equal to T.

The Mellin multiplier s^2 (s^2 - 1) acts as the polynomial
E^4 + 4 E^3 + 5 E^2 + 2 E in the radial Euler operator E = x d/dx + y d/dy
(from (E f)[s] = -(1 + s) f[s]); it is evaluated in closed form by
differentiating t -> g(t w) = exp(A t^2 + B t + C) along rays.  The result has
vanishing integral along every line through the origin and commutes with F.

Psi(g) = sum over nonzero v in Z^2 of f(v g).  Its Fourier coefficients along
n(x) = [[1, x], [0, 1]] are

    W(l, g) = 2 sum_{c | l, c >= 1} int f((c, x) g) e(-(l / c) x) dx    (l != 0)
    Psi_N(g) = sum_b f((0, b) g) + 2 sum_{c >= 1} int f((c, x) g) dx,

the factor 2 coming from the negative divisors (f is even); by Poisson
summation the constant term also equals sum_b (f + F f)((0, b) g).
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

J = np.array([[0.0, 1.0], [-1.0, 0.0]])

# E^4 + 4E^3 + 5E^2 + 2E, coefficients of E^0 .. E^4
FLAT_COEFFS = (0.0, 2.0, 5.0, 4.0, 1.0)


def flat_multiplier(s):
    """The Mellin multiplier s^2 (s^2 - 1)."""
    return s * s * (s * s - 1)


class PacketBuildError(ValueError):
    """The packet could not be brought into the required shape."""


# -- Gaussian packets ------------------------------------------------------------

@dataclass(frozen=True)
class Gaussian:
    amp: complex
    M: np.ndarray
    p: np.ndarray
    k: np.ndarray

    def values(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        dx, dy = x - self.p[0], y - self.p[1]
        q = self.M[0, 0] * dx * dx + 2 * self.M[0, 1] * dx * dy + self.M[1, 1] * dy * dy
        return self.amp * np.exp(-np.pi * q + 2j * np.pi * (self.k[0] * x + self.k[1] * y))

    def dual(self) -> "Gaussian":
        """Closed-form symplectic Fourier transform."""
        ev = np.linalg.eigvals(self.M.astype(complex))
        inv_sqrt_det = 1.0 / np.prod(np.sqrt(ev))
        det = np.linalg.det(self.M.astype(complex))
        amp = self.amp * inv_sqrt_det * np.exp(2j * np.pi * float(np.dot(self.k, self.p)))
        return Gaussian(complex(amp), self.M / det, -J @ self.k, J @ self.p)

    def same_as(self, other: "Gaussian", tol: float = 1e-12) -> bool:
        return (abs(self.amp - other.amp) <= tol * max(1.0, abs(self.amp))
                and np.allclose(self.M, other.M, atol=tol) and np.allclose(self.p, other.p, atol=tol)
                and np.allclose(self.k, other.k, atol=tol))

    def ray_data(self, x: np.ndarray, y: np.ndarray):
        """g(t w) = exp(A t^2 + B t + C) with w = (x, y)."""
        M, p = self.M, self.p
        A = -np.pi * (M[0, 0] * x * x + 2 * M[0, 1] * x * y + M[1, 1] * y * y)
        Mp = M @ p
        B = 2 * np.pi * (Mp[0] * x + Mp[1] * y) + 2j * np.pi * (self.k[0] * x + self.k[1] * y)
        C = -np.pi * float(np.real(p @ M @ p)) + np.log(complex(self.amp))
        return A, B, C

    def euler_poly_values(self, x: np.ndarray, y: np.ndarray, coeffs: Sequence[float],
                          dtype=complex) -> np.ndarray:
        """(sum_j coeffs[j] E^j) g at the points (x, y).  The polynomial part
        cancels heavily for wide packets; pass dtype=np.clongdouble when the
        values feed a cancelling integral."""
        A, B, C = self.ray_data(x, y)
        shape = np.shape(A)
        A = np.ravel(A).astype(dtype)
        B = np.ravel(B).astype(dtype)
        # P_j(t) as coefficient rows (power of t) x points; E(t^m e^h) = (m t^m + 2A t^{m+2} + B t^{m+1}) e^h
        P = np.zeros((1, A.size), dtype=dtype)
        P[0] = 1.0
        total = coeffs[0] * P.sum(axis=0)
        for j in range(1, len(coeffs)):
            deg = P.shape[0] - 1
            Q = np.zeros((deg + 3, A.size), dtype=dtype)
            m = np.arange(deg + 1)[:, None]
            Q[: deg + 1] += m * P
            Q[2: deg + 3] += 2 * A * P
            Q[1: deg + 2] += B * P
            P = Q
            if coeffs[j]:
                total = total + coeffs[j] * P.sum(axis=0)
        return (total * np.exp(A + B + np.asarray(C, dtype=dtype))).reshape(shape)

    def majorant(self, r: np.ndarray, coeffs: Sequence[float]) -> np.ndarray:
        """Certified upper bound for |(sum c_j E^j) g| on the circle |w| = r."""
        r = np.asarray(r, dtype=float)
        Mn = float(np.linalg.norm(self.M, 2))
        lam = float(np.min(np.linalg.eigvalsh(np.real(self.M))))
        pn = float(np.linalg.norm(self.p))
        kn = float(np.linalg.norm(self.k))
        a_bound = np.pi * Mn * r * r
        b_bound = 2 * np.pi * (Mn * pn + kn) * r
        poly = np.zeros_like(r)
        prod = np.ones_like(r)
        for j, c in enumerate(coeffs):
            if j > 0:
                prod = prod * (2 * (j - 1) + 2 * a_bound + b_bound)
            poly = poly + abs(c) * prod
        return abs(self.amp) * poly * np.exp(-np.pi * lam * (r - pn) ** 2)


@dataclass
class WavePacket:
    """Even, self-dual packet at radius x0 = sqrt(T / 2 pi), optionally with the
    Mellin multiplier applied ("flat"), normalized to unit L^2 norm."""

    T: float
    pieces: List[Gaussian]
    flat: bool = True
    scale: float = 1.0
    tol: float = 1e-12
    grid_step: float = 1.0 / 32
    margin: float = 8.0
    _radii: Optional[Tuple[float, float]] = field(default=None, repr=False)
    _sup: Optional[float] = field(default=None, repr=False)

    @property
    def x0(self) -> float:
        return math.sqrt(self.T / (2 * math.pi))

    @property
    def coeffs(self) -> Tuple[float, ...]:
        return FLAT_COEFFS if self.flat else (1.0,)

    def __call__(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape, dtype=complex)
        xb, yb = np.broadcast_arrays(x, y)
        for g in self.pieces:
            if self.flat:
                out = out + g.euler_poly_values(xb, yb, FLAT_COEFFS)
            else:
                out = out + g.values(xb, yb)
        return self.scale * out

    def raw(self) -> "WavePacket":
        return WavePacket(self.T, self.pieces, False, 1.0, self.tol, self.grid_step, self.margin)

    def majorant(self, r) -> np.ndarray:
        return self.scale * sum(g.majorant(r, self.coeffs) for g in self.pieces)

    def support_radii(self) -> Tuple[float, float]:
        """(r_in, r_out): outside this annulus the certified majorant is below
        tol times the sup norm of the packet."""
        if self._radii is None:
            r = np.linspace(0.0, self.x0 + 40.0, 40001)
            b = self.majorant(r)
            ok = np.nonzero(b > self.tol * self.sup_norm())[0]
            self._radii = (float(r[ok[0]] if ok[0] > 0 else 0.0), float(r[min(ok[-1] + 1, r.size - 1)]))
        return self._radii

    def grid(self) -> Tuple[np.ndarray, np.ndarray]:
        """Quadrature grid covering the packet."""
        h = self.grid_step
        xm = self.x0 + self.margin
        xs = np.arange(-xm, xm + h / 2, h)
        ys = np.arange(-self.margin, self.margin + h / 2, h)
        return xs, ys

    def sup_norm(self) -> float:
        if self._sup is None:
            xs, ys = self.grid()
            X, Y = np.meshgrid(xs, ys, indexing="ij")
            self._sup = float(np.max(np.abs(self(X, Y))))
        return self._sup


def build_packet(T: float, flat: bool = True, normalize: bool = True) -> WavePacket:
    """Even self-dual packet: Gaussians at +-(x0, 0) with momenta J p."""
    if T < 4:
        raise PacketBuildError("T must be at least 4")
    x0 = math.sqrt(T / (2 * math.pi))
    pieces = []
    for sgn in (1.0, -1.0):
        p = np.array([sgn * x0, 0.0])
        pieces.append(Gaussian(1.0 + 0j, np.eye(2), p, J @ p))
    pk = WavePacket(float(T), pieces, flat)
    if normalize:
        xs, ys = pk.grid()
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        l2 = math.sqrt(float(np.sum(np.abs(pk(X, Y)) ** 2)) * pk.grid_step ** 2)
        pk.scale = 1.0 / l2
        pk._sup = pk._radii = None
    return pk


def symmetrize(pieces: Sequence[Gaussian]) -> List[Gaussian]:
    """1/2 (f + F f) on the packet level, merging coincident Gaussians."""
    out: List[Gaussian] = []
    for g in list(pieces) + [g.dual() for g in pieces]:
        g = Gaussian(0.5 * g.amp, g.M, g.p, g.k)
        for i, h in enumerate(out):
            if np.allclose(h.M, g.M) and np.allclose(h.p, g.p) and np.allclose(h.k, g.k):
                out[i] = Gaussian(h.amp + g.amp, h.M, h.p, h.k)
                break
        else:
            out.append(g)
    return out


# -- symplectic Fourier transform by quadrature --------------------------------------

def symplectic_fourier(values: np.ndarray, xs: np.ndarray, ys: np.ndarray,
                       px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """F f at the points (px, py) from samples of f on the grid xs x ys
    (trapezoid rule; spectrally accurate for rapidly decaying f)."""
    h2 = (xs[1] - xs[0]) * (ys[1] - ys[0])
    px = np.atleast_1d(px)
    py = np.atleast_1d(py)
    out = np.empty(px.shape, dtype=complex)
    for i, (x, y) in enumerate(zip(px.ravel(), py.ravel())):
        inner = values @ np.exp(2j * np.pi * x * ys)  # sum over v
        out.flat[i] = h2 * np.dot(np.exp(-2j * np.pi * y * xs), inner)
    return out


def symplectic_fourier_grid(values: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """F f on the same grid (as matrix products)."""
    h2 = (xs[1] - xs[0]) * (ys[1] - ys[0])
    Ey = np.exp(-2j * np.pi * np.outer(ys, xs))   # e(-y u): rows indexed by output y
    Ex = np.exp(2j * np.pi * np.outer(ys, xs))    # e(x v): rows v, cols output x
    # out[a, b] = sum_{u, v} values[u, v] e(x_a v) e(-y_b u)
    return h2 * (Ex.T @ (values.T @ Ey.T))


# -- hypothesis checks ---------------------------------------------------------------

@dataclass
class HypothesisReport:
    self_dual_error: float
    double_transform_error: float
    line_integral_error: float
    angular_leakage: float
    closed_form_fixed_point: bool
    passed: bool
    tolerances: Dict[str, float] = field(default_factory=dict)


def sample_points(pk: WavePacket, count: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Points near the packet's mass (plus a few generic ones)."""
    ang = rng.normal(0, 1.0 / pk.x0, count) + rng.integers(0, 2, count) * np.pi
    rad = pk.x0 + rng.normal(0, 0.7, count)
    return rad * np.cos(ang), rad * np.sin(ang)


def self_dual_error(pk: WavePacket, count: int = 24, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    xs, ys = pk.grid()
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vals = pk(X, Y)
    px, py = sample_points(pk, count, rng)
    Ff = symplectic_fourier(vals, xs, ys, px, py)
    return float(np.max(np.abs(Ff - pk(px, py))) / np.max(np.abs(vals)))


def double_transform_error(pk: WavePacket, count: int = 24, seed: int = 1) -> float:
    rng = np.random.default_rng(seed)
    xs, ys = pk.grid()
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vals = pk(X, Y)
    once = symplectic_fourier_grid(vals, xs, ys)
    px, py = sample_points(pk, count, rng)
    twice = symplectic_fourier(once, xs, ys, px, py)
    return float(np.max(np.abs(twice - pk(px, py))) / np.max(np.abs(vals)))


def line_integrals(pk: WavePacket, directions: int = 32, step: float = 1.0 / 64) -> np.ndarray:
    """int_R f(t v) dt for unit v at equally spaced angles in [0, pi)."""
    _, r_out = pk.support_radii()
    t = np.arange(-r_out, r_out + step / 2, step)
    out = []
    for th in np.linspace(0, np.pi, directions, endpoint=False):
        vals = pk(t * np.cos(th), t * np.sin(th))
        out.append(np.sum(vals) * step)
    return np.array(out)


def angular_spectrum_leakage(pk: WavePacket, cutoff_factor: float = 4.0, radii: int = 160) -> float:
    """Fraction of the L^2 energy at angular frequencies above cutoff_factor * T."""
    r_in, r_out = pk.support_radii()
    rs = np.linspace(max(r_in, 1e-3), r_out, radii)
    nang = 1 << int(math.ceil(math.log2(16 * pk.T + 64)))
    th = np.linspace(0, 2 * np.pi, nang, endpoint=False)
    freqs = np.fft.fftfreq(nang, d=1.0 / nang)
    high = np.abs(freqs) > cutoff_factor * pk.T
    tot = 0.0
    hi = 0.0
    for r in rs:
        coef = np.fft.fft(pk(r * np.cos(th), r * np.sin(th))) / nang
        e = np.abs(coef) ** 2 * r
        tot += e.sum()
        hi += e[high].sum()
    return float(hi / tot)


def enforce_hypotheses(T: float, self_dual_tol: float = 1e-8, line_tol: float = 1e-8,
                       leak_tol: float = 1e-6) -> Tuple[WavePacket, HypothesisReport]:
    """Build the packet, symmetrize it under F (closed form), apply the Mellin
    multiplier, and verify the three hypotheses numerically."""
    pk = build_packet(T)
    sym = symmetrize(pk.pieces)
    fixed = len(sym) == len(pk.pieces) and all(any(a.same_as(b) for b in sym) for a in pk.pieces)
    if not fixed:
        raise PacketBuildError("symmetrization changed the packet; support hypothesis not preserved")
    sd = self_dual_error(pk)
    dt = double_transform_error(pk)
    li = float(np.max(np.abs(line_integrals(pk)))) / pk.sup_norm()
    leak = angular_spectrum_leakage(pk)
    ok = sd <= self_dual_tol and dt <= self_dual_tol and li <= line_tol and leak <= leak_tol
    rep = HypothesisReport(sd, dt, li, leak, fixed, ok,
                           {"self_dual": self_dual_tol, "line": line_tol, "leakage": leak_tol})
    return pk, rep


# -- Mellin transforms ----------------------------------------------------------------

def radial_mellin(f: Callable, direction: float, s: complex, r_max: float, step: float = 1.0 / 1024) -> complex:
    """int_0^inf t^s f(t v) dt for the unit vector at angle `direction`."""
    t = np.arange(step, r_max, step)
    vals = f(t * np.cos(direction), t * np.sin(direction))
    return complex(np.sum(t ** s * vals) * step)


def _flat_mellin_extended(pk: WavePacket, direction: float, s: complex, r_max: float,
                          step: float = 1.0 / 1024) -> complex:
    """Mellin transform of the unscaled flattened packet, summed in extended precision."""
    t = np.arange(step, r_max, step)
    x, y = t * np.cos(direction), t * np.sin(direction)
    vals = sum(g.euler_poly_values(x, y, FLAT_COEFFS, dtype=np.clongdouble) for g in pk.pieces)
    tl = t.astype(np.longdouble)
    return complex(np.sum(np.exp(np.clongdouble(s) * np.log(tl)) * vals) * step)


def mellin_flat_check(pk: WavePacket, s_values: Sequence[complex], directions: Sequence[float]) -> float:
    """max relative deviation of Mellin(f_flat)(s) from s^2 (s^2 - 1) Mellin(f)(s).
    Directions should meet the packet; elsewhere both sides are at rounding level.
    The flattened side is evaluated in extended precision because its
    polynomial prefactor cancels by several orders of magnitude."""
    raw = pk.raw()
    _, r_out = pk.support_radii()
    worst = 0.0
    for th in directions:
        for s in s_values:
            a = _flat_mellin_extended(pk, th, s, r_out)
            b = flat_multiplier(s) * radial_mellin(raw, th, s, r_out)
            worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    return worst


def euler_eigen_check(degree: complex, point=(0.7, 0.4)) -> complex:
    """For the homogeneous function |w|^degree the multiplier acts by
    the polynomial in E evaluated at E = degree; returns the eigenvalue
    (should equal P(-(1 + degree)) with P(s) = s^2 (s^2 - 1))."""
    return sum(c * degree ** j for j, c in enumerate(FLAT_COEFFS))


def ray_sum(pk: WavePacket, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, float]:
    """sum_{c >= 1} f(c w), truncated where the certified majorant vanishes;
    returns the values and the truncation radius used."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r_in, r_out = pk.support_radii()
    rad = np.hypot(x, y)
    out = np.zeros(x.shape, dtype=complex)
    cmax = int(np.max(np.floor(r_out / np.maximum(rad, 1e-300)))) if rad.size else 0
    for c in range(1, max(cmax, 0) + 1):
        live = c * rad <= r_out
        if not np.any(live):
            break
        out[live] += pk(c * x[live], c * y[live])
    return out, r_out


# -- lattice sums -------------------------------------------------------------------

def _lattice_in_annulus(g: np.ndarray, r_in: float, r_out: float) -> np.ndarray:
    gi = np.linalg.inv(g)
    b0 = int(math.ceil(r_out * np.linalg.norm(gi[:, 0])))
    b1 = int(math.ceil(r_out * np.linalg.norm(gi[:, 1])))
    a, b = np.meshgrid(np.arange(-b0, b0 + 1), np.arange(-b1, b1 + 1), indexing="ij")
    v = np.stack([a.ravel(), b.ravel()], axis=1)
    w = v @ g
    rad = np.hypot(w[:, 0], w[:, 1])
    keep = (rad >= r_in) & (rad <= r_out) & ((v[:, 0] != 0) | (v[:, 1] != 0))
    return v[keep]


def eisenstein_eval(pk: WavePacket, g: np.ndarray, mode: str = "full-flat") -> complex:
    """Psi(g) either as the sum of f over all nonzero lattice points, or as
    the sum of ray_sum over primitive lattice points."""
    g = np.asarray(g, dtype=float)
    r_in, r_out = pk.support_radii()
    if mode == "full-flat":
        v = _lattice_in_annulus(g, r_in, r_out)
        w = v @ g
        return complex(np.sum(pk(w[:, 0], w[:, 1])))
    if mode == "primitive-sharp":
        v = _lattice_in_annulus(g, 0.0, r_out)
        prim = np.gcd(v[:, 0], v[:, 1]) == 1
        w = v[prim] @ g
        vals, _ = ray_sum(pk, w[:, 0], w[:, 1])
        return complex(np.sum(vals))
    raise ValueError(f"unknown mode {mode!r}")


def n_mat(x: float) -> np.ndarray:
    return np.array([[1.0, x], [0.0, 1.0]])


def a_mat(t: float) -> np.ndarray:
    return np.array([[t, 0.0], [0.0, 1.0 / t]])


def k_mat(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def random_sl2(rng: np.random.Generator, spread: float = 0.4) -> np.ndarray:
    return n_mat(rng.uniform(-0.5, 0.5)) @ a_mat(math.exp(rng.uniform(-spread, spread))) @ k_mat(rng.uniform(0, np.pi))


def psi_along_unipotent(pk: WavePacket, g: np.ndarray, xs: np.ndarray) -> np.ndarray:
    return np.array([eisenstein_eval(pk, n_mat(x) @ g) for x in xs])


# -- Fourier expansion ----------------------------------------------------------------

@dataclass
class FourierData:
    constant: complex
    constant_poisson: complex
    coefficients: Dict[int, complex]
    L: int
    tail_estimate: float
    divisor_terms: Dict[int, int]

    def energy(self) -> Tuple[float, float]:
        """(|constant|^2, sum over l != 0 of |W(l)|^2)."""
        return abs(self.constant) ** 2, float(sum(abs(w) ** 2 for w in self.coefficients.values()))

    def evaluate(self, x: float) -> complex:
        return self.constant + sum(w * np.exp(2j * np.pi * l * x) for l, w in self.coefficients.items())


def _line_transform(pk: WavePacket, r1: np.ndarray, r2: np.ndarray, c: int, qmax: int, r_out: float):
    """H_c(q) = int f(c r1 + x r2) e(-q x) dx for |q| <= qmax (None if the line
    misses the support disk)."""
    a = float(r2 @ r2)
    b = float(c * (r1 @ r2))
    cc = float(c * c * (r1 @ r1)) - r_out ** 2
    disc = b * b - a * cc
    if disc <= 0:
        return None
    lo = (-b - math.sqrt(disc)) / a
    hi = (-b + math.sqrt(disc)) / a
    band = (pk.x0 + 6.0) * math.sqrt(a)
    step = 1.0 / (2.0 * (band + qmax) + 8.0 * math.sqrt(a) + 1.0)
    xs = np.arange(lo, hi + step, step)
    vals = pk(c * r1[0] + xs * r2[0], c * r1[1] + xs * r2[1])
    q = np.arange(-qmax, qmax + 1)
    return q, step * (np.exp(-2j * np.pi * np.outer(q, xs)) @ vals)


def fourier_expand(pk: WavePacket, g: np.ndarray, L: Optional[int] = None) -> FourierData:
    """Fourier coefficients of x -> Psi(n(x) g) from the divisor formula."""
    g = np.asarray(g, dtype=float)
    r1, r2 = g[0], g[1]
    _, r_out = pk.support_radii()
    n2 = math.sqrt(float(r2 @ r2))
    qmax = int(math.ceil((pk.x0 + 6.0) * n2)) + 2
    cmax = int(math.floor(r_out * n2)) + 1  # distance of the line c r1 + R r2 to 0 is c / |r2|
    coeffs: Dict[int, complex] = {}
    divisor_terms: Dict[int, int] = {}
    const = 0j
    tail = 0.0
    for c in range(1, cmax + 1):
        res = _line_transform(pk, r1, r2, c, qmax, r_out)
        if res is None:
            continue
        q, H = res
        for qi, h in zip(q, H):
            qi = int(qi)
            if qi == 0:
                const += 2 * h
                continue
            l = c * qi
            if L is not None and abs(l) > L:
                continue
            coeffs[l] = coeffs.get(l, 0j) + 2 * h
            divisor_terms[l] = divisor_terms.get(l, 0) + 1
        tail = max(tail, float(abs(H[0])), float(abs(H[-1])))
    # a = 0 row: sum over b of f((0, b) g)
    bmax = int(math.ceil(r_out / max(n2, 1e-300)))
    b = np.arange(-bmax, bmax + 1)
    row = pk(b * r2[0], b * r2[1])
    const += np.sum(row)
    poisson = 2 * np.sum(row)
    Lused = L if L is not None else max((abs(l) for l in coeffs), default=0)
    return FourierData(complex(const), complex(poisson), coeffs, Lused, tail, divisor_terms)


def reconstruction_error(pk: WavePacket, g: np.ndarray, xs: Sequence[float]) -> float:
    fd = fourier_expand(pk, g)
    direct = psi_along_unipotent(pk, g, np.asarray(xs))
    recon = np.array([fd.evaluate(x) for x in xs])
    return float(np.max(np.abs(direct - recon)))


def parseval_check(pk: WavePacket, g: np.ndarray, samples: int = 512) -> Tuple[float, float]:
    """(sum of channel energies, direct mean of |Psi(n(x) g)|^2 over [0, 1))."""
    fd = fourier_expand(pk, g)
    e0, e1 = fd.energy()
    xs = np.arange(samples) / samples
    direct = psi_along_unipotent(pk, g, xs)
    return e0 + e1, float(np.mean(np.abs(direct) ** 2))


# -- local L^2 profile ---------------------------------------------------------------

@dataclass
class ProfileRow:
    t: float
    measured: float
    I0: float
    I1: float
    normalized: float
    envelope: float
    ratio: float


@dataclass
class ProfileReport:
    T: float
    rows: List[ProfileRow]
    omega: Dict[str, object]
    runtime: float

    def max_normalized(self, t_max: float) -> float:
        return max(r.normalized for r in self.rows if r.t <= t_max + 1e-12)

    def envelope_at(self, t: float) -> float:
        return min(self.rows, key=lambda r: abs(r.t - t)).envelope


def omega_grid(n_y: int = 6, n_phi: int = 48, y_range=(1.0, 2.0)) -> List[np.ndarray]:
    """Quadrature points for the fixed compact set {a(y^(1/2)) k(phi)}."""
    ys = np.exp(np.linspace(math.log(y_range[0]), math.log(y_range[1]), n_y))
    phis = np.linspace(0, np.pi, n_phi, endpoint=False)
    return [a_mat(math.sqrt(y)) @ k_mat(phi) for y in ys for phi in phis]


def local_energy(pk: WavePacket, t: float, omega: Sequence[np.ndarray]) -> Tuple[float, float]:
    """Mean over omega of (|Psi_N|^2, sum_{l != 0} |W(l)|^2) at diag(t, 1/t) g;
    by Parseval their sum is the mean of int_0^1 |Psi(n(x) diag(t, 1/t) g)|^2 dx."""
    R = a_mat(t)
    i0 = i1 = 0.0
    for g in omega:
        e0, e1 = fourier_expand(pk, R @ g).energy()
        i0 += e0
        i1 += e1
    return i0 / len(omega), i1 / len(omega)


def local_l2_profile(pk: WavePacket, tgrid: Sequence[float], omega: Optional[Sequence[np.ndarray]] = None,
                     omega_spec: Optional[dict] = None) -> ProfileReport:
    """Measured local L^2 mass (I0 + I1) at each t, normalized by its value at
    t = 1, against the trivial envelope t^2."""
    start = time.perf_counter()
    spec = omega_spec or {"n_y": 6, "n_phi": 48, "y_range": (1.0, 2.0)}
    if omega is None:
        omega = omega_grid(**spec)
    base0, base1 = local_energy(pk, 1.0, omega)
    base = base0 + base1
    rows = []
    for t in tgrid:
        i0, i1 = (base0, base1) if t == 1.0 else local_energy(pk, float(t), omega)
        meas = i0 + i1
        norm = meas / base if base > 0 else float("nan")
        env = float(t) ** 2
        rows.append(ProfileRow(float(t), meas, i0, i1, norm, env, norm / env))
    return ProfileReport(pk.T, rows, {**spec, "points": len(omega)}, time.perf_counter() - start)
