"""Spherical Hecke operators for GL_m over Q_p: single-coset representatives,
Satake values, convolution, and the restriction of normalized amplifier
elements to the diagonal subgroup GL_{m-1}.

Left cosets g K (K = GL_m(Z_p)) inside K diag(p^a) K are represented by
upper-triangular matrices with diagonal p^(e_1), ..., p^(e_m) and entry (i, j)
reduced modulo p^(e_i); right multiplication by K only performs column
operations, so these are the column Hermite forms.

Satake value at s (unitary s_i purely imaginary):

    lambda_s(T) = sum over cosets of delta_B(diag)^(1/2) prod p^(-e_i s_i),
    delta_B(diag(p^e)) = p^(-sum e_i (m + 1 - 2i)).

At s = 0 the value lies in Q(sqrt p) and is computed exactly.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exact import QuadraticSurd, _reduce_scalar, det

Exps = Tuple[int, ...]


class UnsupportedPair(ValueError):
    """Raised for a (G, H) pair the restriction code does not handle."""


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_dominant(a: Sequence[int]) -> bool:
    return all(a[i] >= a[i + 1] for i in range(len(a) - 1))


# -- elementary divisors and Hermite forms ----------------------------------------

def smith_type(m, p: int) -> Exps:
    """Exponents (descending) of the elementary divisors of an integral matrix
    over Z_p, from the minimal valuations of k x k minors."""
    n = len(m)
    dk = [0]
    for k in range(1, n + 1):
        best = None
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                d = det([[m[r][c] for c in cols] for r in rows])
                if d != 0:
                    v = valuation(d, p)
                    best = v if best is None else min(best, v)
        if best is None:
            raise ValueError("singular matrix")
        dk.append(best)
    ascending = [dk[k] - dk[k - 1] for k in range(1, n + 1)]
    return tuple(sorted(ascending, reverse=True))


def _mod_pe(x: Fraction, p: int, e: int) -> int:
    """Representative in [0, p^e) of an element of Z_(p) modulo p^e."""
    m = p ** e
    x = Fraction(x)
    return (x.numerator * pow(x.denominator, -1, m)) % m if m > 1 else 0


def hermite_form(m, p: int) -> Tuple[Tuple[int, ...], ...]:
    """Canonical representative of the coset m K, K = GL_n(Z_p), for a
    nonsingular matrix with entries in Z_(p)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    for i in range(n - 1, -1, -1):
        # pivot: column among 0..i with minimal valuation in row i
        best, col = None, None
        for c in range(i + 1):
            if a[i][c] != 0:
                v = valuation(a[i][c], p)
                if best is None or v < best:
                    best, col = v, c
        if col is None:
            raise ValueError("singular matrix")
        for r in range(n):
            a[r][i], a[r][col] = a[r][col], a[r][i]
        unit = a[i][i] / Fraction(p) ** best
        for r in range(n):
            a[r][i] = a[r][i] / unit
        for c in range(i):
            f = a[i][c] / a[i][i]
            if f:
                for r in range(n):
                    a[r][c] -= f * a[r][i]
    e = [valuation(a[i][i], p) for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            x = a[i][j]
            r = _mod_pe(x, p, e[i])
            k = (x - r) / a[i][i]
            if k:
                for rr in range(n):
                    a[rr][j] -= k * a[rr][i]
    return tuple(tuple(int(x) for x in row) for row in a)


def hermite_diagonal(h) -> Exps:
    return tuple(int(h[i][i]) for i in range(len(h)))


# -- coset enumeration ------------------------------------------------------------

def _compositions_bounded(total: int, n: int, cap: int) -> Iterable[Exps]:
    if n == 1:
        if 0 <= total <= cap:
            yield (total,)
        return
    for first in range(min(total, cap) + 1):
        for rest in _compositions_bounded(total - first, n - 1, cap):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _coset_reps_nonneg(p: int, a: Exps) -> Tuple:
    n = len(a)
    out = []
    for e in _compositions_bounded(sum(a), n, a[0]):
        free = [(i, j) for i in range(n) for j in range(i + 1, n)]
        ranges = [range(p ** e[i]) for (i, j) in free]
        for vals in product(*ranges):
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                m[i][i] = p ** e[i]
            for (i, j), v in zip(free, vals):
                m[i][j] = v
            if smith_type(m, p) == a:
                out.append(tuple(tuple(r) for r in m))
    return tuple(out)


def coset_reps(p: int, a: Sequence[int]) -> list:
    """Hermite representatives of K diag(p^a) K / K.  Negative exponents are
    handled by a central shift (the representatives then carry a scalar
    factor p^(min a))."""
    a = tuple(sorted(a, reverse=True))
    shift = a[-1]
    base = _coset_reps_nonneg(p, tuple(x - shift for x in a))
    if shift == 0:
        return [list(map(list, m)) for m in base]
    f = Fraction(p) ** shift
    return [[[_reduce_scalar(x * f) for x in row] for row in m] for m in base]


def diagonal_profile(p: int, a: Sequence[int]) -> Dict[Exps, int]:
    """Number of coset representatives with each diagonal exponent vector."""
    out: Dict[Exps, int] = {}
    for m in coset_reps(p, a):
        e = tuple(valuation(m[i][i], p) for i in range(len(m)))
        out[e] = out.get(e, 0) + 1
    return out


def poincare(n: int, t) -> object:
    """sum over S_n of t^length = prod_{i=1}^n (1 + t + ... + t^(i-1))."""
    out = 1
    for i in range(1, n + 1):
        out = out * sum(t ** k for k in range(i))
    return out


def macdonald_count(p: int, a: Sequence[int]) -> int:
    """|K p^a K / K| = p^<2 rho, a> W(p^-1) / W_a(p^-1)."""
    a = tuple(sorted(a, reverse=True))
    n = len(a)
    two_rho = sum((n + 1 - 2 * i) * x for i, x in enumerate(a, start=1))
    t = Fraction(1, p)
    stab = 1
    i = 0
    while i < n:
        j = i
        while j < n and a[j] == a[i]:
            j += 1
        stab = stab * poincare(j - i, t)
        i = j
    val = Fraction(p) ** two_rho * poincare(n, t) / stab
    assert val.denominator == 1
    return int(val)


# -- Hecke elements and Satake values -------------------------------------------

@dataclass(frozen=True)
class HeckeOperator:
    """norm * T_p(a) with norm = p^(half_exp / 2)."""

    p: int
    a: Exps
    half_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if not is_dominant(self.a):
            raise ValueError("exponent tuple must be dominant")

    @property
    def m(self) -> int:
        return len(self.a)

    def norm(self):
        return QuadraticSurd.sqrt_power(self.p, self.half_exp)


def T(p: int, a: Sequence[int]) -> HeckeOperator:
    return HeckeOperator(p, tuple(sorted(a, reverse=True)))


def t_normalized(p: int, j: int, m: int) -> HeckeOperator:
    """t_{p,j} = p^(-(m-1) j / 2) T_p(j, 0, ..., 0) on GL_m."""
    return HeckeOperator(p, (j,) + (0,) * (m - 1), -(m - 1) * j)


@dataclass
class HeckeElement:
    """Finite combination sum c_a T_p(a) on GL_m, coefficients exact."""

    p: int
    m: int
    terms: Dict[Exps, object] = field(default_factory=dict)

    @classmethod
    def of(cls, op: HeckeOperator) -> "HeckeElement":
        return cls(op.p, op.m, {op.a: op.norm()})

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        t = dict(self.terms)
        for a, c in other.terms.items():
            t[a] = t.get(a, 0) + c
        return HeckeElement(self.p, self.m, {a: c for a, c in t.items() if c != 0})

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.p, self.m, {a: v * c for a, v in self.terms.items()})

    def is_nonnegative(self) -> bool:
        return all((QuadraticSurd(0, 0, self.p) + c).sign() >= 0 for c in self.terms.values())


def delta_half_exp(e: Sequence[int]) -> int:
    """delta_B(diag(p^e))^(1/2) = p^(k/2) with k returned."""
    m = len(e)
    return -sum(x * (m + 1 - 2 * i) for i, x in enumerate(e, start=1))


def satake_exact(T_: object, z: Optional[Sequence] = None):
    """Satake value with p^(-s_i) replaced by exact z_i (default z_i = 1,
    i.e. the trivial point s = 0)."""
    el = HeckeElement.of(T_) if isinstance(T_, HeckeOperator) else T_
    total = QuadraticSurd(0, 0, el.p)
    for a, c in el.terms.items():
        total = total + c * _satake_type(el.p, a, tuple(z) if z is not None else None)
    return total


@lru_cache(maxsize=None)
def _satake_type(p: int, a: Exps, z: Optional[tuple]):
    total = QuadraticSurd(0, 0, p)
    for e, cnt in diagonal_profile(p, a).items():
        term = QuadraticSurd.sqrt_power(p, delta_half_exp(e)) * cnt
        if z is not None:
            for zi, k in zip(z, e):
                term = term * Fraction(zi) ** k
        total = total + term
    return total


def satake_numeric(T_: object, s: Sequence[complex]) -> complex:
    """lambda_s for complex s."""
    el = HeckeElement.of(T_) if isinstance(T_, HeckeOperator) else T_
    total = 0j
    for a, c in el.terms.items():
        for e, cnt in diagonal_profile(el.p, a).items():
            term = float(QuadraticSurd.sqrt_power(el.p, delta_half_exp(e))) * cnt
            for si, k in zip(s, e):
                term *= cmath.exp(-k * si * np.log(el.p))
            total += float(c) * term
    return total


def lambda_0(T_: object):
    return satake_exact(T_)


def unitary_samples(m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Purely imaginary s vectors."""
    return 1j * rng.uniform(-10, 10, size=(count, m))


def tempered_inequality_check(T_: object, samples: np.ndarray, tol: float = 1e-9) -> dict:
    """|lambda_s(T)| <= lambda_0(T) at each sample s (unitary axis)."""
    l0 = float(lambda_0(T_))
    worst = max(abs(satake_numeric(T_, s)) - l0 for s in samples)
    return {"passed": worst <= tol * max(1.0, abs(l0)), "lambda_0": l0, "worst_excess": worst}


# -- convolution -------------------------------------------------------------------

def convolve(p: int, a: Sequence[int], b: Sequence[int]) -> dict:
    """Explicit product T_p(a) * T_p(b): multiply every pair of coset
    representatives, reduce to Hermite form, and group by double coset.
    Checks that each double coset occurs with constant multiplicity on all of
    its cosets; returns {type: multiplicity} and the consistency flag."""
    reps_a = coset_reps(p, a)
    reps_b = coset_reps(p, b)
    counts: Dict[Tuple, int] = {}
    for g1 in reps_a:
        for g2 in reps_b:
            n = len(g1)
            prod_ = [[sum(Fraction(g1[i][k]) * g2[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
            h = hermite_form(prod_, p)
            counts[h] = counts.get(h, 0) + 1
    by_type: Dict[Exps, Dict[Tuple, int]] = {}
    for h, c in counts.items():
        by_type.setdefault(smith_type(h, p), {})[h] = c
    result = {}
    consistent = True
    for typ, cosets in by_type.items():
        mults = set(cosets.values())
        expected = {hermite_form(m, p) for m in coset_reps(p, typ)}
        if len(mults) != 1 or set(cosets) != expected:
            consistent = False
        result[typ] = max(mults)
    return {"structure": result, "consistent": consistent}


def homomorphism_check(p: int, a: Sequence[int], b: Sequence[int], z: Sequence) -> bool:
    conv = convolve(p, a, b)
    if not conv["consistent"]:
        return False
    lhs = satake_exact(T(p, a), z) * satake_exact(T(p, b), z)
    rhs = QuadraticSurd(0, 0, p)
    for typ, mult in conv["structure"].items():
        rhs = rhs + satake_exact(T(p, typ), z) * mult
    return lhs == rhs


# -- restriction of the amplifier to the smaller group -------------------------------

PAIRS = {"gl2-gl1": (2, 1), "gl3-gl2": (3, 2)}


def amplifier_component(p: int, j: int, m: int, same_prime: bool) -> HeckeElement:
    """Local amplifier factor on GL_m (m = n + 1):
    distinct primes: p^(-n j / 2) T_p(j, 0, ..., 0);
    equal primes:    p^(-n j) T_p(j, 0, ..., 0, -j)."""
    n = m - 1
    if not same_prime:
        return HeckeElement.of(HeckeOperator(p, (j,) + (0,) * n, -n * j))
    if m == 1:
        raise UnsupportedPair("need m >= 2")
    a = (j,) + (0,) * (m - 2) + (-j,)
    if j == 0:
        a = (0,) * m
    return HeckeElement.of(HeckeOperator(p, a, -2 * n * j))


def _small_dominant(m: int, bound: int) -> Iterable[Exps]:
    for b in product(range(-bound, bound + 1), repeat=m):
        if is_dominant(b):
            yield b


def restrict_to_subgroup(el: HeckeElement) -> HeckeElement:
    """Restriction of the central average to GL_{m-1} embedded as diag(h, 1):
    at h = diag(p^b) (b dominant) the central average is
    sum_k el(diag(p^(b + k), p^k)), each central fiber having volume one."""
    m = el.m
    out = HeckeElement(el.p, m - 1, {})
    bound = max((max(abs(x) for x in a) for a in el.terms), default=0) * 2
    for b in _small_dominant(m - 1, bound):
        val = 0
        for typ, c in el.terms.items():
            lo, hi = min(typ), max(typ)
            for k in range(lo, hi + 1):
                ext = tuple(sorted([x + k for x in b] + [k], reverse=True))
                if ext == typ:
                    val = val + c
        if val != 0:
            out = out + HeckeElement(el.p, m - 1, {b: val})
    return out


def restricted_main_term(p: int, j: int, pair: str = "gl2-gl1", same_prime: bool = False) -> dict:
    """lambda_0 on H of the restricted amplifier factor, and its ratio to
    p^(-j/2) (distinct primes) or p^(-j) (equal primes)."""
    if pair not in PAIRS:
        raise UnsupportedPair(f"unsupported pair {pair!r}; choose from {sorted(PAIRS)}")
    m, _ = PAIRS[pair]
    el = amplifier_component(p, j, m, same_prime)
    res = restrict_to_subgroup(el)
    value = lambda_0(res) if res.terms else QuadraticSurd(0, 0, p)
    scale = QuadraticSurd.sqrt_power(p, -2 * j if same_prime else -j)
    ratio = value / scale
    return {"p": p, "j": j, "pair": pair, "same_prime": same_prime, "value": value,
            "ratio": ratio, "value_float": float(value), "ratio_float": float(ratio),
            "restricted": {k: float(v) for k, v in res.terms.items()}}


def determinant_valuations(p: int, a: Sequence[int]) -> set:
    """Set of det-valuations over the representatives of T_p(a); the support
    statement says this is the single value sum(a)."""
    return {valuation(det(m), p) for m in coset_reps(p, a)}


def main_term_sweep(primes: Iterable[int], j: int, pair: str = "gl2-gl1", same_prime: bool = False) -> dict:
    """Restricted main term over a list of primes, with the sweep-wide
    constant max ratio."""
    rows = [restricted_main_term(p, j, pair, same_prime) for p in primes]
    return {"rows": rows, "constant": max((r["ratio_float"] for r in rows), default=0.0)}
