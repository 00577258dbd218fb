"""Unramified Whittaker data for GL_n over a p-adic field.

Weight multiplicities are counted with Gelfand-Tsetlin patterns; the same
counts give Schur polynomials and the Shintani formula

    W(m) = delta_N(m)^(1/2) S_{ord m}(q^{s_1}, ..., q^{s_n}),
    delta_N(diag(a)) = prod |a_i|^(n + 1 - 2i).

The basic vector is supported on the positive coroot cone:

    Theta(a_gamma) = q^<rho, gamma> K(gamma),  K(gamma) = sum_P q^(-|P|),

P running over multisets of positive coroots e_i - e_j (i < j) summing to
gamma, where a_gamma has ord(a_gamma) = -gamma.

Values depending on q are returned exactly: with ``q=None`` as Laurent
polynomials in the formal variable ``sqrt_q`` (so q = sqrt_q^2), with a
concrete prime as int/Fraction or :class:`QuadraticSurd`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .exact import Poly, PolyRing, QuadraticSurd, _reduce_scalar, det

Q_RING = PolyRing(["sqrt_q"])
Weight = Tuple[int, ...]


def q_half_power(k: int, q: Optional[int] = None):
    """q^(k/2), formal when q is None."""
    if q is None:
        return Q_RING.var("sqrt_q", k)
    if k % 2 == 0:
        return _reduce_scalar(Fraction(q) ** (k // 2))
    return QuadraticSurd.sqrt_power(q, k)


def q_power(k: int, q: Optional[int] = None):
    return q_half_power(2 * k, q)


def formal_q() -> Poly:
    return Q_RING.var("sqrt_q", 2)


def is_dominant(w: Sequence[int]) -> bool:
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


# -- Gelfand-Tsetlin patterns -------------------------------------------------------

def interlacing_rows(top: Weight) -> Iterator[Weight]:
    """Rows nu of length len(top) - 1 with top[i] >= nu[i] >= top[i+1]."""
    ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
    for nu in product(*ranges):
        yield tuple(nu)


def gt_patterns(top: Weight) -> Iterator[List[Weight]]:
    """All patterns with the given top row, listed top row first."""
    if len(top) == 1:
        yield [top]
        return
    for nu in interlacing_rows(top):
        for rest in gt_patterns(nu):
            yield [top] + rest


def pattern_weight(pattern: List[Weight]) -> Weight:
    """mu_k = |row of length k| - |row of length k-1|."""
    rows = list(reversed(pattern))
    sums = [0] + [sum(r) for r in rows]
    return tuple(sums[k + 1] - sums[k] for k in range(len(rows)))


@lru_cache(maxsize=None)
def _mult_sorted(lam: Weight, mu: Weight) -> int:
    n = len(lam)
    if sum(lam) != sum(mu):
        return 0
    if n == 1:
        return 1
    last = mu[-1]
    target = sum(lam) - last
    rest = tuple(sorted(mu[:-1], reverse=True))
    total = 0
    for nu in interlacing_rows(lam):
        if sum(nu) == target:
            total += _mult_sorted(nu, rest)
    return total


def weight_multiplicity(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Multiplicity of the weight mu in the irreducible GL_n representation of
    highest weight lam (0 when lam is not dominant).  The count is symmetric
    in mu, so mu is sorted before the memoized recursion."""
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) != len(mu):
        raise ValueError("weights of different length")
    if not is_dominant(lam):
        return 0
    return _mult_sorted(lam, tuple(sorted(mu, reverse=True)))


def weight_multiset(lam: Sequence[int]) -> Dict[Weight, int]:
    """All weights with multiplicity, by direct pattern enumeration."""
    out: Dict[Weight, int] = {}
    for p in gt_patterns(tuple(lam)):
        w = pattern_weight(p)
        out[w] = out.get(w, 0) + 1
    return out


def weyl_dimension(lam: Sequence[int]) -> int:
    n = len(lam)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def schur(lam: Sequence[int], z: Sequence):
    """S_lam(z) = sum_mu M_lam(mu) prod z_j^mu_j (0 for non-dominant lam)."""
    lam = tuple(lam)
    if not is_dominant(lam):
        return 0
    total = 0
    for w, m in weight_multiset(lam).items():
        term = m
        for zj, k in zip(z, w):
            term = term * zj ** k
        total = total + term
    return total


def schur_bialternant(lam: Sequence[int], z: Sequence):
    """det(z_i^(lam_j + n - j)) / det(z_i^(n - j)) at distinct scalar points."""
    n = len(lam)
    z = [Fraction(x) for x in z]
    num = det([[zi ** (lam[j] + n - 1 - j) for j in range(n)] for zi in z])
    den = det([[zi ** (n - 1 - j) for j in range(n)] for zi in z])
    return _reduce_scalar(Fraction(num) / den)


# -- Shintani formula ----------------------------------------------------------------

def delta_half_exponent(ords: Sequence[int]) -> int:
    """delta_N(m)^(1/2) = q^(k/2) with k returned here:
    |a_i| = q^(-ord_i) so delta_N = q^(-sum ord_i (n + 1 - 2i))."""
    n = len(ords)
    return -sum(o * (n + 1 - 2 * i) for i, o in enumerate(ords, start=1))


def _z_from_s(s: Sequence, q: Optional[int]) -> list:
    z = []
    for x in s:
        two = Fraction(x) * 2
        if two.denominator != 1:
            raise ValueError("s entries must be half-integers for exact evaluation")
        z.append(q_half_power(int(two), q))
    return z


def shintani_whittaker(ords: Sequence[int], s: Sequence, q: Optional[int] = None):
    """delta_N(m)^(1/2) S_{ord m}(q^(s_1), ..., q^(s_n))."""
    ords = tuple(ords)
    if not is_dominant(ords):
        return 0
    z = _z_from_s(s, q)
    return q_half_power(delta_half_exponent(ords), q) * schur(ords, z)


def basic_vector_whittaker(c_ords: Sequence[int], m_ords: Sequence[int], q: Optional[int] = None):
    """delta_N(m)^(1/2) M_{ord m}(ord c)."""
    m_ords = tuple(m_ords)
    if not is_dominant(m_ords):
        return 0
    return q_half_power(delta_half_exponent(m_ords), q) * weight_multiplicity(m_ords, c_ords)


# -- coroots, Kostant counts, basic vectors ------------------------------------------

def positive_coroots(n: int) -> List[Weight]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            out.append(tuple(v))
    return out


def simple_coordinates(gamma: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """gamma = sum c_i (e_i - e_{i+1}); returns c (partial sums) or None when
    the coordinate sum is nonzero."""
    if sum(gamma) != 0:
        return None
    c, acc = [], 0
    for g in gamma[:-1]:
        acc += g
        c.append(acc)
    return tuple(c)


def in_positive_cone(gamma: Sequence[int]) -> bool:
    c = simple_coordinates(gamma)
    return c is not None and all(x >= 0 for x in c)


@lru_cache(maxsize=None)
def _coroot_partitions(gamma: Weight, start: int) -> Dict[int, int]:
    """Multisets of positive coroots (using only coroots with index >= start)
    summing to gamma: number of summands -> count."""
    n = len(gamma)
    if not any(gamma):
        return {0: 1}
    roots = positive_coroots(n)
    out: Dict[int, int] = {}
    for r in range(start, len(roots)):
        i = roots[r].index(1)
        j = roots[r].index(-1)
        # gamma must remain in the cone after removing this coroot
        g2 = list(gamma)
        g2[i] -= 1
        g2[j] += 1
        g2 = tuple(g2)
        if not in_positive_cone(g2):
            continue
        for k, cnt in _coroot_partitions(g2, r).items():
            out[k + 1] = out.get(k + 1, 0) + cnt
    return out


def coroot_partitions(gamma: Sequence[int]) -> Dict[int, int]:
    gamma = tuple(gamma)
    if not in_positive_cone(gamma):
        return {}
    return dict(_coroot_partitions(gamma, 0))


def kostant_count(gamma: Sequence[int], q: Optional[int] = None):
    """K(gamma) = sum over multisets P of positive coroots with sum gamma of q^(-|P|)."""
    total = 0
    for k, cnt in coroot_partitions(gamma).items():
        total = total + q_power(-k, q) * cnt
    return total


def rho_pairing(gamma: Sequence[int]) -> Fraction:
    n = len(gamma)
    return sum(Fraction(n + 1 - 2 * i, 2) * g for i, g in enumerate(gamma, start=1))


def basic_vector(gamma: Sequence[int], q: Optional[int] = None):
    """Theta(a_gamma) = q^<rho, gamma> K(gamma), zero off the positive cone."""
    if not in_positive_cone(gamma):
        return 0
    rp = rho_pairing(gamma)
    return q_half_power(int(2 * rp), q) * kostant_count(gamma, q)


def basic_vector_at(ords: Sequence[int], q: Optional[int] = None):
    """Theta at the diagonal element with valuation vector ``ords`` (gamma = -ord)."""
    return basic_vector(tuple(-o for o in ords), q)


# -- series identity -------------------------------------------------------------

def _series_ring(n: int) -> PolyRing:
    return PolyRing(["sqrt_q"] + [f"t[{i}]" for i in range(1, n)])


def zeta_series_product(n: int, degree: int, roots: Optional[Sequence[Weight]] = None) -> Poly:
    """prod over positive coroots a of (1 - q^(-1) t^a)^(-1), expanded through
    total t-degree ``degree``; t^a is the monomial in simple coordinates."""
    ring = _series_ring(n)
    tw = [0] + [1] * (n - 1)
    out = ring.one()
    qinv = ring.var("sqrt_q", -2)
    for a in (roots if roots is not None else positive_coroots(n)):
        c = simple_coordinates(a)
        mono = ring.monomial({f"t[{i}]": c[i - 1] for i in range(1, n) if c[i - 1]})
        h = sum(c)
        geo = ring.one()
        term = ring.one()
        for _ in range(degree // h):
            term = term * qinv * mono
            geo = geo + term
        out = out.mul_truncated(geo, tw, degree)
    return out


def cone_points(n: int, degree: int) -> Iterator[Weight]:
    """gamma in the positive cone with height sum(c) <= degree."""
    for c in product(range(degree + 1), repeat=n - 1):
        if sum(c) <= degree:
            gamma = [0] * n
            prev = 0
            for i, ci in enumerate(c):
                gamma[i] = ci - prev
                prev = ci
            gamma[n - 1] = -prev
            yield tuple(gamma)


def zeta_series_sum(n: int, degree: int) -> Poly:
    """sum over gamma of K(gamma) t^gamma, K from multiset enumeration."""
    ring = _series_ring(n)
    out = ring.zero()
    for gamma in cone_points(n, degree):
        k = kostant_count(gamma)
        if not k:
            continue
        c = simple_coordinates(gamma)
        mono = ring.monomial({f"t[{i}]": c[i - 1] for i in range(1, n) if c[i - 1]})
        out = out + mono * k.to_ring(ring)
    return out


def zeta_series_check(n: int, degree: int) -> bool:
    if n == 1:
        return True
    return zeta_series_sum(n, degree) == zeta_series_product(n, degree)


# -- the parabolic variant ----------------------------------------------------------

def parabolic_basic_vector(ords: Sequence[int], n_first: int, q: Optional[int] = None):
    """Factorized value 1[a' integral unit] * Theta^{M''}(a'') where a' is the
    first ``n_first`` diagonal entries and a'' the rest."""
    ords = tuple(ords)
    a1, a2 = ords[:n_first], ords[n_first:]
    if any(a1):
        return 0
    if len(a2) == 0:
        return 1
    return basic_vector_at(a2, q)


def parabolic_basic_vector_mellin(ords: Sequence[int], n_first: int, q: Optional[int] = None):
    """Same value from the Mellin side: q^(-<ord a, rho>) times the coefficient
    of t^(-ord a) in the product over the coroots of the second block, with
    rho the half-sum for the whole group."""
    ords = tuple(ords)
    n = len(ords)
    gamma = tuple(-o for o in ords)
    c = simple_coordinates(gamma)
    if c is None or any(x < 0 for x in c):
        return 0
    roots = [r for r in positive_coroots(n) if all(r[i] == 0 for i in range(n_first))]
    degree = sum(c)
    if not roots:
        coef = 1 if degree == 0 else 0
    else:
        series = zeta_series_product(n, degree, roots)
        coef = _extract_q(series, c)
    if not coef:
        return 0
    value = q_half_power(int(2 * rho_pairing(gamma)), None) * coef
    return _specialize(value, q)


def _extract_q(series: Poly, c: Sequence[int]) -> Poly:
    out = {}
    for e, v in series.terms.items():
        if tuple(e[1:]) == tuple(c):
            out[(e[0],)] = v
    return Poly(Q_RING, out)


def _specialize(value, q: Optional[int]):
    if q is None or not isinstance(value, Poly):
        return value
    total = 0
    for (k,), v in value.terms.items():
        total = total + q_half_power(k, q) * v
    return total


# -- the local integral I(b, c) ------------------------------------------------

def partitions_with_zero_last(total: int, n: int) -> Iterator[Weight]:
    """Dominant lam of length n with lam_n = 0 and sum ``total``."""
    def rec(remaining, k, cap):
        if k == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(cap, remaining), -1, -1):
            if first * k < remaining:
                break
            for rest in rec(remaining - first, k - 1, first):
                yield (first,) + rest
    for lam in rec(total, n - 1, total):
        yield lam + (0,)


def local_rs_integral(b_ords: Sequence[int], c_ords: Sequence[int]) -> int:
    """I(b, c) = sum over dominant lam with lam_n = 0 of M_lam(ord b) M_lam(ord c);
    zero unless all valuations are >= 0 with equal sums."""
    b, c = tuple(b_ords), tuple(c_ords)
    if len(b) != len(c):
        raise ValueError("b and c must have the same size")
    if min(b + c) < 0 or sum(b) != sum(c):
        return 0
    n = len(b)
    return sum(weight_multiplicity(lam, b) * weight_multiplicity(lam, c)
               for lam in partitions_with_zero_last(sum(b), n))


def compositions(total: int, n: int) -> Iterator[Weight]:
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, n - 1):
            yield (first,) + rest


def local_integral_exponent(n: int, max_total: int) -> dict:
    """max over m <= max_total and valuation vectors of total m of
    log I(b, c) / log(1 + m).  I only depends on the sorted vectors."""
    worst = 0.0
    worst_at = None
    largest = {}
    for m in range(1, max_total + 1):
        vecs = sorted({tuple(sorted(v, reverse=True)) for v in compositions(m, n)})
        best = 0
        for b in vecs:
            for c in vecs:
                val = local_rs_integral(b, c)
                best = max(best, val)
                if val > 1:
                    e = math.log(val) / math.log(1 + m)
                    if e > worst:
                        worst, worst_at = e, (b, c)
        largest[m] = best
    return {"n": n, "max_total": max_total, "exponent": worst, "attained_at": worst_at,
            "largest_value": largest}
