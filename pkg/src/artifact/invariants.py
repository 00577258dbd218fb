"""Characteristic polynomials, infinitesimal-character data, the scaling
action, the stability resultant and the explicit companion-type matrix
attached to a nondegenerate character and a characteristic polynomial.

Convention for evaluating symbols at a matrix: the coordinate ``e[i][j]``
evaluated at a dual-space element represented by the matrix ``xi`` (trace
pairing) is ``xi[j][i]``.  Under this convention det(X + e)(xi) equals
det(X + xi), and the mirabolic pattern below puts the character entries on
the subdiagonal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .envelope import e_name, e_names
from .exact import (GaussianRational, Poly, PolyRing, as_scalar, det_expand, poly_coeffs_from_roots,
                    sylvester_resultant, _reduce_scalar)


def x_ring(extra: Sequence[str] = ()) -> PolyRing:
    return PolyRing(["X"] + list(extra))


def char_poly_universal(n: int, aux: Sequence[str] = ()) -> Poly:
    """det(X + e) as a polynomial in X and the coordinates e[i][j]."""
    ring = PolyRing(e_names(n) + ["X"] + list(aux))
    X = ring.var("X")
    m = [[(X if i == j else 0) + ring.var(e_name(i, j)) for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    return ring.coerce(det_expand(m))


def invariant_symbols(n: int, aux: Sequence[str] = ()) -> List[Poly]:
    """The coefficients c_1, ..., c_n of det(X + e) = X^n + c_1 X^(n-1) + ...,
    as polynomials in e[i][j] (in the symbol ring with ``aux`` appended)."""
    from .envelope import symbol_ring
    p = char_poly_universal(n)
    ring = symbol_ring(n, aux)
    parts = p.coefficients_in("X")
    out = []
    for k in range(1, n + 1):
        c = parts.get(n - k, p.ring.zero())
        out.append(Poly(ring, {}) + _drop_var(c, "X").to_ring(ring))
    return out


def _drop_var(p: Poly, name: str) -> Poly:
    names = [v for v in p.ring.names if v != name]
    return p.to_ring(PolyRing(names))


@dataclass(frozen=True)
class InfinitesimalChar:
    """Characteristic data: coefficients (c_1..c_n) of P(X) = prod (X + l_j),
    optionally with the eigenvalue multiset."""

    coeffs: tuple
    eigenvalues: Optional[tuple] = None

    @classmethod
    def from_eigenvalues(cls, eig: Sequence) -> "InfinitesimalChar":
        eig = tuple(as_scalar(x) if not isinstance(x, Poly) else x for x in eig)
        c = poly_coeffs_from_roots(eig)
        return cls(tuple(c[1:]), tuple(sorted(eig, key=_sort_key)) if _all_scalar(eig) else eig)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "InfinitesimalChar":
        return cls(tuple(coeffs), None)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def poly_coeffs(self) -> list:
        """[1, c_1, ..., c_n] (descending powers of X)."""
        return [1] + list(self.coeffs)

    def poly(self, ring: Optional[PolyRing] = None) -> Poly:
        ring = ring or x_ring()
        X = ring.var("X")
        out = ring.zero()
        for k, c in enumerate(self.poly_coeffs()):
            out = out + X ** (self.n - k) * c
        return out

    def evaluate(self, x):
        out = 0
        for c in self.poly_coeffs():
            out = out * x + c
        return out

    def scale(self, t) -> "InfinitesimalChar":
        """P_{t l}(X) = t^n P_l(X / t): c_j scales by t^j, eigenvalues by t."""
        coeffs = tuple(_reduce(c * t ** (j + 1)) for j, c in enumerate(self.coeffs))
        eig = None
        if self.eigenvalues is not None:
            eig = tuple(sorted((_reduce(t * x) for x in self.eigenvalues), key=_sort_key))
        return InfinitesimalChar(coeffs, eig)


def _reduce(x):
    return x if isinstance(x, Poly) else _reduce_scalar(x)


def _all_scalar(xs):
    return all(not isinstance(x, Poly) for x in xs)


def _sort_key(x):
    return (Fraction(x) if not isinstance(x, Poly) else 0)


def scale_char(t, lam: InfinitesimalChar) -> InfinitesimalChar:
    return lam.scale(t)


@dataclass(frozen=True)
class NondegenerateCharacter:
    """Formal nonzero scalars eta_1..eta_{n-1} standing in for the imaginary
    constants of a generic character of the upper unipotent subgroup."""

    etas: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for e in self.etas:
            if e == 0:
                raise ValueError("nondegenerate character needs every eta_i != 0")

    @property
    def n(self) -> int:
        return len(self.etas) + 1


FREE = None  # marker for an unconstrained entry in a pattern


def mirabolic_datum(psi: NondegenerateCharacter, n: Optional[int] = None) -> list:
    """Mirabolic pattern: eta_j at (j+1, j), zero elsewhere in the first n-1
    columns, last column free (``None``)."""
    n = psi.n if n is None else n
    if n != psi.n:
        raise ValueError("character length does not match n")
    pat = [[0] * n for _ in range(n)]
    for i in range(n):
        pat[i][n - 1] = FREE
    for j in range(1, n):
        pat[j][j - 1] = psi.etas[j - 1]
    return pat


def companion_matrix(psi: NondegenerateCharacter, lam: InfinitesimalChar, check: bool = True) -> list:
    """The unique matrix with the mirabolic pattern mirabolic_datum(psi) and
    det(X + tau) = P_lam(X).  Last column:
    tau[j][n] = (-1)^(n+j) c_{n+1-j} / (eta_j ... eta_{n-1}) for j < n and
    tau[n][n] = c_1."""
    n = lam.n
    if psi.n != n:
        raise ValueError("character and infinitesimal character sizes differ")
    m = mirabolic_datum(psi)
    c = lam.coeffs
    for j in range(1, n):
        prod = 1
        for k in range(j, n):
            prod = prod * psi.etas[k - 1]
        val = _divide(c[n - j], prod)
        m[j - 1][n - 1] = val if (n + j) % 2 == 0 else -val
    m[n - 1][n - 1] = c[0]
    if check:
        got = char_poly_coeffs(m)
        want = lam.poly_coeffs()
        if any(_neq(a, b) for a, b in zip(got, want)):
            raise AssertionError("det(X + tau) does not reproduce P_lambda")
    return m


def _divide(a, b):
    if isinstance(b, Poly):
        return b.ring.coerce(a) / b
    if isinstance(a, Poly):
        return a / b
    if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
        return _reduce_scalar(GaussianRational._coerce(a) / b)
    return _reduce_scalar(Fraction(a) / b)


def _neq(a, b):
    if isinstance(a, Poly) and isinstance(b, Poly) and a.ring != b.ring:
        big = a.ring if len(a.ring.names) >= len(b.ring.names) else b.ring
        a, b = a.to_ring(big), b.to_ring(big)
    if isinstance(a, Poly):
        return not (a - b).is_zero()
    if isinstance(b, Poly):
        return not (b - a).is_zero()
    return a != b


def char_poly_coeffs(m) -> list:
    """Coefficients [1, c_1, ..., c_n] of det(X + m), descending in X.  Works
    for rational entries and for entries in a common polynomial ring."""
    n = len(m)
    if n == 0:
        return [1]
    ring = None
    for row in m:
        for v in row:
            if isinstance(v, Poly):
                ring = v.ring
    if ring is None:
        ring = x_ring()
    elif "X" not in ring.index:
        big = PolyRing(["X"] + list(ring.names))
        m = [[v.to_ring(big) if isinstance(v, Poly) else v for v in row] for row in m]
        ring = big
    X = ring.var("X")
    mm = [[(X if i == j else 0) + m[i][j] for j in range(n)] for i in range(n)]
    d = ring.coerce(det_expand(mm))
    parts = d.coefficients_in("X")
    out = []
    for k in range(n + 1):
        p = parts.get(n - k, ring.zero())
        out.append(p.constant_value() if p.is_constant() else p)
    return [_reduce(x) if not isinstance(x, Poly) else x for x in out]


def resultant_stability(xi) -> object:
    """Resultant of det(X + xi) and det(X + xi_H), xi_H the upper-left
    (n-1) x (n-1) block.  Zero iff the two eigenvalue multisets meet."""
    n = len(xi)
    f = char_poly_coeffs(xi)
    g = char_poly_coeffs([row[: n - 1] for row in xi[: n - 1]])
    return sylvester_resultant(f, g)


def random_rational(rng, lo: int = -9, hi: int = 9, nonzero: bool = False, den: int = 4):
    while True:
        v = Fraction(rng.randint(lo, hi), rng.randint(1, den))
        if v or not nonzero:
            return _reduce_scalar(v)


def formal_data(n: int):
    """Formal character and infinitesimal character: eta[1..n-1], c[1..n]
    as variables of one Laurent ring (so division by eta is allowed)."""
    ring = PolyRing([f"eta[{i}]" for i in range(1, n)] + [f"c[{j}]" for j in range(1, n + 1)])
    psi = NondegenerateCharacter(tuple(ring.var(f"eta[{i}]") for i in range(1, n)))
    lam = InfinitesimalChar.from_coeffs(tuple(ring.var(f"c[{j}]") for j in range(1, n + 1)))
    return ring, psi, lam
