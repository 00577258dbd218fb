"""Capelli determinant det(X + rho + E) in U(gl_n)[X], its non-commutative
and commutative cofactor expansions along the bottom row, and the
Vandermonde recovery of the last column of tau.

Determinants of matrices over a non-commutative ring use the row-ordered
convention with the bottom row leftmost:

    det(A) = sum_sigma sign(sigma) A[n][sigma(n)] * ... * A[1][sigma(1)],

so that expanding along the bottom row gives
det(A) = sum_j (-1)^(n+j) A[n][j] * det(A with row n and column j removed).
The minors below are computed through that recursion, memoized on the
(remaining column set).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .envelope import (GL, Element, diag_names, e_name, e_names, hc_project, restrict_to_diagonal,
                       symbol_ring, symmetrize, unsymmetrize)
from .exact import Poly, PolyRing, SingularSystem, solve, _reduce_scalar
from .invariants import (InfinitesimalChar, NondegenerateCharacter, char_poly_universal, companion_matrix,
                         mirabolic_datum)

X_RING = PolyRing(["X"])


def rho(n: int) -> List[Fraction]:
    """Diagonal of the half-sum shift: (n-1)/2, (n-3)/2, ..., (1-n)/2."""
    return [Fraction(n + 1 - 2 * i, 2) for i in range(1, n + 1)]


def _entry(n: int, i: int, j: int, shift: Tuple) -> Element:
    """(X + shift + E)[i][j] as an element of U(gl_n)[X]."""
    alg = GL(n)
    out = alg.gen(i, j, X_RING)
    if i == j:
        out = out + (X_RING.var("X") + shift[i - 1])
    return out


@lru_cache(maxsize=None)
def _nc_minor(n: int, cols: Tuple[int, ...], shift: Optional[Tuple] = None) -> Element:
    """Row-ordered determinant of rows 1..len(cols) and the given columns of
    X + shift + E (shift defaults to rho)."""
    if shift is None:
        shift = tuple(rho(n))
    alg = GL(n)
    k = len(cols)
    if k == 0:
        return alg.scalar(1, X_RING)
    out = alg.zero(X_RING)
    for pos, j in enumerate(cols):
        sign = 1 if (k - 1 - pos) % 2 == 0 else -1
        rest = cols[:pos] + cols[pos + 1:]
        out = out + (_entry(n, k, j, shift) * _nc_minor(n, rest, shift)).scale(sign)
    return out


@dataclass(frozen=True)
class CapelliDeterminant:
    n: int
    element: Element

    def x_coefficients(self) -> Dict[int, Element]:
        """Power of X -> coefficient in U(gl_n)."""
        return x_coefficients(self.element)


def x_coefficients(z: Element) -> Dict[int, Element]:
    alg = z.alg
    out: Dict[int, Dict] = {}
    for m, c in z.terms.items():
        for k, part in c.coefficients_in("X").items():
            v = part.constant_value()
            if v:
                out.setdefault(k, {})[m] = v
    return {k: Element(alg, t) for k, t in out.items()}


def capelli_det(n: int, shift: Optional[Sequence] = None) -> CapelliDeterminant:
    """det(X + rho + E), PBW normalized, coefficients polynomial in X.  A
    different diagonal ``shift`` can be supplied (used as a negative control:
    without the rho shift the determinant is not central)."""
    key = None if shift is None else tuple(Fraction(s) for s in shift)
    return CapelliDeterminant(n, _nc_minor(n, tuple(range(1, n + 1)), key))


def simple_generators(n: int, ring: Optional[PolyRing] = None) -> List[Element]:
    alg = GL(n)
    gens = []
    for i in range(1, n):
        gens.append(alg.gen(i, i + 1, ring))
        gens.append(alg.gen(i + 1, i, ring))
    return gens


def verify_central(z) -> bool:
    """True iff z commutes with every E[i][i+1] and E[i+1][i] (these generate
    gl_n together with their brackets, so this is sufficient)."""
    if isinstance(z, CapelliDeterminant):
        z = z.element
    return all(z.commutator(g).is_zero() for g in simple_generators(z.n, z.ring))


def hc_of_capelli_equals_charpoly(n: int) -> bool:
    """Harish-Chandra image of det(X + rho + E) versus det(X + e) restricted
    to the diagonal, compared coefficient by coefficient in X."""
    lhs = hc_project(capelli_det(n).element)
    rhs = restrict_to_diagonal(char_poly_universal(n), n)
    return lhs.to_ring(rhs.ring) == rhs


# -- cofactor expansions -------------------------------------------------------

def noncomm_minor(n: int, j: int) -> Element:
    """Non-commutative minor D_j(X): the part of the permutation sum with
    sigma(n) = j, over rows 1..n-1, sign included."""
    cols = tuple(c for c in range(1, n + 1) if c != j)
    sign = 1 if (n + j) % 2 == 0 else -1
    return _nc_minor(n, cols).scale(sign)


def cofactor_expansion_check(n: int) -> bool:
    """sum_j (1_{n=j}(X - (n-1)/2) + E[n][j]) D_j(X) == det(X + rho + E)."""
    alg = GL(n)
    X = X_RING.var("X")
    total = alg.zero(X_RING)
    for j in range(1, n + 1):
        lead = alg.gen(n, j, X_RING)
        if j == n:
            lead = lead + (X - Fraction(n - 1, 2))
        total = total + lead * noncomm_minor(n, j)
    return total == capelli_det(n).element


def comm_minor(n: int, j: int, aux: Sequence[str] = ()) -> Poly:
    """Commutative minor d_j(X) of det(X + e), sign included, in the ring of
    the e-variables, X and ``aux``."""
    ring = symbol_ring(n, ["X"] + list(aux))
    X = ring.var("X")
    rows = n - 1
    cols = [c for c in range(1, n + 1) if c != j]

    @lru_cache(maxsize=None)
    def minor(cs: Tuple[int, ...]) -> Poly:
        k = len(cs)
        if k == 0:
            return ring.one()
        acc = ring.zero()
        for pos, c in enumerate(cs):
            entry = ring.var(e_name(k, c)) + (X if k == c else 0)
            term = entry * minor(cs[:pos] + cs[pos + 1:])
            acc = acc + (term if (k - 1 - pos) % 2 == 0 else -term)
        return acc

    sign = 1 if (n + j) % 2 == 0 else -1
    out = minor(tuple(cols))
    assert rows == len(cols)
    return out if sign == 1 else -out


def comm_cofactor_check(n: int) -> bool:
    """det(X + e) == sum_j (1_{n=j} X + e[n][j]) d_j(X)."""
    ring = symbol_ring(n, ["X"])
    X = ring.var("X")
    total = ring.zero()
    for j in range(1, n + 1):
        lead = ring.var(e_name(n, j)) + (X if j == n else 0)
        total = total + lead * comm_minor(n, j)
    return total == char_poly_universal(n).to_ring(ring)


def evaluate_at_matrix(p: Poly, xi, n: int) -> Poly:
    """Substitute e[i][j] -> xi[j][i] (trace pairing); entries of ``xi`` may be
    scalars, polynomials or None (None only allowed where p does not depend
    on that coordinate)."""
    vals = {}
    used = set(p.variables())
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            name = e_name(i, j)
            if name not in used:
                continue
            v = xi[j - 1][i - 1]
            if v is None:
                raise ValueError(f"{name} needs the unconstrained entry ({j},{i})")
            vals[name] = v
    return p.subs(vals)


def minor_at_mirabolic(j: int, psi: NondegenerateCharacter, x=None):
    """d_j(X) evaluated at the mirabolic pattern mirabolic_datum(psi).  Returns a
    polynomial in X (and in the eta's if they are formal), or its value at
    X = x when ``x`` is given.  The sign is kept."""
    n = psi.n
    etas = [e for e in psi.etas if isinstance(e, Poly)]
    aux = list(etas[0].ring.names) if etas else []
    p = comm_minor(n, j, aux)
    pat = mirabolic_datum(psi)
    pat = [[(v.to_ring(p.ring) if isinstance(v, Poly) else v) for v in row] for row in pat]
    out = evaluate_at_matrix(p, pat, n)
    if x is not None:
        out = out.subs({"X": x})
        return out.constant_value() if out.is_constant() else out
    return out


def expected_minor_at_mirabolic(j: int, psi: NondegenerateCharacter):
    """The closed form (-1)^(n+j) X^(j-1) eta_j ... eta_(n-1), as
    (sign, X-power, eta-product)."""
    n = psi.n
    prod = 1
    for k in range(j, n):
        prod = prod * psi.etas[k - 1]
    return (1 if (n + j) % 2 == 0 else -1), j - 1, prod


def vandermonde_recover_companion(psi: NondegenerateCharacter, lam: InfinitesimalChar,
                            samples: Sequence) -> list:
    """Solve sum_{j<n} tau[j][n] d_j(x)(theta) = P(x) - (x + c_1) x^(n-1) at
    the n-1 sample points; returns the full last column (tau[n][n] = c_1)."""
    n = psi.n
    if len(samples) != n - 1:
        raise ValueError(f"need {n - 1} samples")
    if len(set(samples)) != len(samples):
        raise SingularSystem("repeated sample points")
    polys = [minor_at_mirabolic(j, psi) for j in range(1, n)]
    c1 = lam.coeffs[0]
    a, b = [], []
    for x in samples:
        a.append([_scalar(p.subs({"X": x})) for p in polys])
        b.append(_reduce_scalar(lam.evaluate(x) - (x + c1) * x ** (n - 1)))
    col = solve(a, b) if n > 1 else []
    return col + [c1]


def _scalar(p):
    if isinstance(p, Poly):
        if not p.is_constant():
            raise TypeError("Vandermonde recovery needs numeric eta's")
        return p.constant_value()
    return p


def companion_last_column(psi: NondegenerateCharacter, lam: InfinitesimalChar) -> list:
    t = companion_matrix(psi, lam)
    return [row[-1] for row in t]


# -- graded decomposition of the non-commutative minors -------------------------

def graded_minor_decomposition(i: int, n: int) -> List[Poly]:
    """Symbols dd[0], dd[1], ... in Sym(p)[X] with D_i(X) = sum_l sym(dd[l])
    and the X^(n-1-k) coefficient of dd[l] homogeneous of degree k - l.

    Computed by writing each X^(n-1-k) coefficient of D_i as sym of a unique
    symbol and splitting that symbol into homogeneous pieces."""
    z = noncomm_minor(n, i)
    ring = symbol_ring(n, ["X"])
    X = ring.var("X")
    parts = [ring.zero() for _ in range(n)]
    coeffs = x_coefficients(z)
    for power, coef in coeffs.items():
        k = n - 1 - power
        sym_p = unsymmetrize(coef, symbol_ring(n))
        for ell in range(0, n):
            d = k - ell
            if d < 0:
                continue
            h = sym_p.homogeneous_part(d).to_ring(ring)
            if h:
                parts[ell] = parts[ell] + h * X ** power
    while len(parts) > 1 and parts[-1].is_zero():
        parts.pop()
    return parts


def recombine_graded(parts: Sequence[Poly], n: int) -> Element:
    """sum_l sym(parts[l]), with X carried as a coefficient."""
    out = GL(n).zero(X_RING)
    for p in parts:
        out = out + symmetrize(p, n, X_RING)
    return out


def rescaled_minor_check(i: int, n: int) -> bool:
    """With formal hbar, put d_i(X) = sum_l hbar^l dd[l](X).  Check that
    sym(d_i(X) evaluated at hbar * e) equals hbar^(n-1) D_i(X / hbar)."""
    parts = graded_minor_decomposition(i, n)
    big = symbol_ring(n, ["X", "hbar"])
    coef_ring = PolyRing(["X", "hbar"])
    h = big.var("hbar")
    d = big.zero()
    for ell, p in enumerate(parts):
        d = d + p.to_ring(big) * h ** ell
    scaled = d.subs({name: big.var(name) * h for name in e_names(n)})
    lhs = symmetrize(scaled, n, coef_ring)
    z = noncomm_minor(n, i)
    hc = coef_ring.var("hbar")
    Xc = coef_ring.var("X")
    rhs_terms = {}
    for m, c in z.terms.items():
        v = c.to_ring(coef_ring).subs({"X": Xc * hc ** -1}) * hc ** (n - 1)
        if v:
            rhs_terms[m] = v
    rhs = Element(z.alg, rhs_terms, coef_ring)
    return lhs == rhs
