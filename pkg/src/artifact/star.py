"""Formal expansion of the Gutt star product on polynomial symbols of gl_n.

The bracket series {x, y} = log(exp x exp y) - x - y is computed with
matrices whose entries are polynomials in commuting coordinates, truncating
every product by total degree.  The generating function

    exp(eps * <{x, y}, zeta>) = sum c[alpha, beta, gamma] x^alpha y^beta zeta^gamma

is then expanded and sorted by j = |alpha| + |beta| - |gamma|, giving the
bidifferential operators

    a *^j b (zeta) = sum c[alpha, beta, gamma] zeta^gamma d^alpha a d^beta b.

Dual coordinates are the symbol variables e[i][j]; the pairing of a matrix x
with the dual point whose coordinates are e is sum x[i][j] e[i][j].

Symbols may carry auxiliary variables (hbar, X, ...); derivatives act on the
e-variables only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .envelope import (GL, Element, e_name, e_names, hc_project, restrict_to_diagonal, symbol_ring,
                       symmetrize)
from .exact import (UNITS, GaussianRational, Poly, PolyRing, nullspace, _reduce_scalar)

Matrix = List[List[Poly]]


class ConfigurationError(RuntimeError):
    """Raised when a star product is used before its unit is calibrated."""


# -- truncated matrix calculus ---------------------------------------------------

def _zero_matrix(ring: PolyRing, n: int) -> Matrix:
    return [[ring.zero() for _ in range(n)] for _ in range(n)]


def _identity(ring: PolyRing, n: int) -> Matrix:
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def mat_mul_trunc(a: Matrix, b: Matrix, weights, max_weight: int) -> Matrix:
    n = len(a)
    ring = a[0][0].ring
    out = _zero_matrix(ring, n)
    for i in range(n):
        for j in range(n):
            acc = ring.zero()
            for k in range(n):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k].mul_truncated(b[k][j], weights, max_weight)
            out[i][j] = acc
    return out


def mat_exp_trunc(a: Matrix, degree: int) -> Matrix:
    """exp(a) through total degree ``degree``; entries of a have no constant term."""
    ring = a[0][0].ring
    n = len(a)
    w = [1] * ring.nvars
    out = _identity(ring, n)
    power = _identity(ring, n)
    for k in range(1, degree + 1):
        power = mat_mul_trunc(power, a, w, degree)
        out = mat_add(out, mat_scale(power, Fraction(1, factorial(k))))
    return out


def mat_log_trunc(a: Matrix, degree: int) -> Matrix:
    """log(a) through total degree ``degree`` for a = 1 + (no constant term)."""
    ring = a[0][0].ring
    n = len(a)
    w = [1] * ring.nvars
    z = mat_add(a, mat_scale(_identity(ring, n), -1))
    out = _zero_matrix(ring, n)
    power = _identity(ring, n)
    for m in range(1, degree + 1):
        power = mat_mul_trunc(power, z, w, degree)
        out = mat_add(out, mat_scale(power, Fraction((-1) ** (m + 1), m)))
    return out


def bch_bracket(xm: Matrix, ym: Matrix, degree: int) -> Matrix:
    """{x, y} = log(exp x exp y) - x - y through total degree ``degree``,
    for matrices with entries linear in commuting coordinates."""
    w = [1] * xm[0][0].ring.nvars
    prod = mat_mul_trunc(mat_exp_trunc(xm, degree), mat_exp_trunc(ym, degree), w, degree)
    log = mat_log_trunc(prod, degree)
    return mat_add(log, mat_scale(mat_add(xm, ym), -1))


def x_names(n: int, letter: str = "x") -> List[str]:
    return [f"{letter}[{i}][{j}]" for i in range(1, n + 1) for j in range(1, n + 1)]


def generic_matrix(ring: PolyRing, n: int, letter: str) -> Matrix:
    return [[ring.var(f"{letter}[{i}][{j}]") for j in range(1, n + 1)] for i in range(1, n + 1)]


@dataclass
class BCHSeries:
    """The bracket series as an n x n matrix of polynomials in x[i][j], y[i][j]."""

    n: int
    order: int
    matrix: Matrix

    @property
    def ring(self) -> PolyRing:
        return self.matrix[0][0].ring

    def homogeneous(self, d: int) -> Matrix:
        return [[p.homogeneous_part(d) for p in row] for row in self.matrix]

    def evaluate(self, xv, yv) -> list:
        """Numeric value at rational matrices xv, yv."""
        vals = {}
        for i in range(self.n):
            for j in range(self.n):
                vals[f"x[{i + 1}][{j + 1}]"] = xv[i][j]
                vals[f"y[{i + 1}][{j + 1}]"] = yv[i][j]
        return [[p.evaluate(vals) for p in row] for row in self.matrix]


@lru_cache(maxsize=None)
def bch_bracket_series(n: int, order: int) -> BCHSeries:
    if order < 2:
        raise ValueError("order must be at least 2")
    ring = PolyRing(x_names(n, "x") + x_names(n, "y"))
    xm, ym = generic_matrix(ring, n, "x"), generic_matrix(ring, n, "y")
    return BCHSeries(n, order, bch_bracket(xm, ym, order))


# -- independent oracle: words in two free letters -----------------------------

Word = Tuple[int, ...]


def _free_mul(a: Dict[Word, Fraction], b: Dict[Word, Fraction], degree: int) -> Dict[Word, Fraction]:
    out: Dict[Word, Fraction] = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            if len(w1) + len(w2) <= degree:
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
    return {w: c for w, c in out.items() if c}


def free_bch(degree: int) -> Dict[Word, Fraction]:
    """log(exp(x) exp(y)) - x - y in the free associative algebra on letters
    0 (= x) and 1 (= y), truncated at word length ``degree``."""
    def exp_letter(letter):
        return {(letter,) * k: Fraction(1, factorial(k)) for k in range(degree + 1)}

    prod = _free_mul(exp_letter(0), exp_letter(1), degree)
    z = {w: c for w, c in prod.items() if w}
    out: Dict[Word, Fraction] = {}
    power: Dict[Word, Fraction] = {(): Fraction(1)}
    for m in range(1, degree + 1):
        power = _free_mul(power, z, degree)
        for w, c in power.items():
            out[w] = out.get(w, 0) + c * Fraction((-1) ** (m + 1), m)
    out.pop((0,), None)
    out.pop((1,), None)
    return {w: c for w, c in out.items() if c}


def evaluate_words(words: Dict[Word, Fraction], xv, yv) -> list:
    n = len(xv)
    mats = (xv, yv)
    total = [[Fraction(0)] * n for _ in range(n)]
    for w, c in words.items():
        m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for letter in w:
            b = mats[letter]
            m = [[sum(m[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        total = [[total[i][j] + c * m[i][j] for j in range(n)] for i in range(n)]
    return total


def bracket(a, b):
    n = len(a)
    ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    ba = [[sum(b[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


def bch_degree3_formula(xv, yv) -> list:
    """(1/12)([x,[x,y]] + [y,[y,x]])."""
    t1 = bracket(xv, bracket(xv, yv))
    t2 = bracket(yv, bracket(yv, xv))
    n = len(xv)
    return [[Fraction(1, 12) * (t1[i][j] + t2[i][j]) for j in range(n)] for i in range(n)]


# -- star coefficients -----------------------------------------------------------

Index = Tuple[int, ...]


@dataclass
class StarCoefficients:
    """c[alpha, beta, gamma] sorted by j.  ``table[j][(alpha, beta)]`` is the
    polynomial sum_gamma c zeta^gamma in the e-variables; alpha and beta are
    exponent tuples over the n^2 coordinates (row-major)."""

    n: int
    order: int
    epsilon: object
    table: Dict[int, Dict[Tuple[Index, Index], Poly]]
    ring: PolyRing

    def entries(self):
        """Iterate (alpha, beta, gamma, c)."""
        for j, block in self.table.items():
            for (a, b), p in block.items():
                for g, c in p.terms.items():
                    yield a, b, g, c

    def count(self) -> int:
        return sum(len(p.terms) for block in self.table.values() for p in block.values())

    def basic_support_holds(self) -> bool:
        return all(sum(g) <= min(sum(a), sum(b)) for a, b, g, _ in self.entries())

    def weight_zero_is_unit(self) -> bool:
        block = self.table.get(0, {})
        z = (0,) * self.n ** 2
        return list(block.keys()) == [(z, z)] and block[(z, z)] == self.ring.one()


def _exp_weighted(w: Poly, weights, order: int) -> Poly:
    """exp(w) keeping weighted degree <= order (each monomial of w must have
    positive weight)."""
    out = w.ring.one()
    power = w.ring.one()
    for k in range(1, order + 1):
        power = power.mul_truncated(w, weights, order)
        if not power:
            break
        out = out + power * Fraction(1, factorial(k))
    return out


@lru_cache(maxsize=None)
def star_coefficients(n: int, order: int, epsilon=1) -> StarCoefficients:
    """Every c[alpha, beta, gamma] with |alpha| + |beta| - |gamma| <= order."""
    bch = bch_bracket_series(n, max(order + 1, 2))
    en = e_names(n)
    big = PolyRing(list(bch.ring.names) + en)
    exponent = big.zero()
    for i in range(n):
        for j in range(n):
            entry = bch.matrix[i][j]
            if entry:
                exponent = exponent + entry.to_ring(big) * big.var(en[i * n + j])
    exponent = exponent * epsilon
    m = n * n
    weights = [1] * (2 * m) + [-1] * m
    series = _exp_weighted(exponent, weights, order)
    ering = symbol_ring(n)
    table: Dict[int, Dict[Tuple[Index, Index], Poly]] = {}
    for e, c in series.terms.items():
        a, b, g = e[:m], e[m:2 * m], e[2 * m:]
        j = sum(a) + sum(b) - sum(g)
        block = table.setdefault(j, {})
        term = Poly(ering, {tuple(g): c})
        key = (tuple(a), tuple(b))
        block[key] = block[key] + term if key in block else term
    return StarCoefficients(n, order, epsilon, table, ering)


# -- the star product on symbols ---------------------------------------------------

def _multi_diff(p: Poly, alpha: Index, names: Sequence[str]) -> Poly:
    out = p
    for k, name in zip(alpha, names):
        for _ in range(k):
            out = out.diff(name)
            if not out:
                return out
    return out


class StarProduct:
    """Star product on polynomial symbols of gl_n, truncated at order J.

    The unit ``epsilon`` must be set (directly or by :meth:`calibrated`)
    before the product is used."""

    def __init__(self, n: int, order: int, epsilon=None):
        self.n = n
        self.order = order
        self.epsilon = epsilon
        self._names = e_names(n)
        self._lifted: Dict[PolyRing, Dict] = {}

    @classmethod
    def calibrated(cls, n: int, order: int) -> "StarProduct":
        units = calibrate_epsilon(n)
        if len(units) != 1:
            raise ConfigurationError(f"unit calibration is ambiguous: {units}")
        return cls(n, order, units[0])

    @property
    def coefficients(self) -> StarCoefficients:
        if self.epsilon is None:
            raise ConfigurationError("star product unit epsilon is not calibrated")
        return star_coefficients(self.n, self.order, self.epsilon)

    def _table_in(self, ring: PolyRing, j: int):
        key = (ring, j)
        if key not in self._lifted:
            block = self.coefficients.table.get(j, {})
            self._lifted[key] = [(a, b, p.to_ring(ring)) for (a, b), p in block.items()]
        return self._lifted[key]

    def star_j(self, a: Poly, b: Poly, j: int) -> Poly:
        if j > self.order:
            raise ValueError(f"component {j} beyond the computed order {self.order}")
        if a.ring != b.ring:
            raise ValueError("symbols must share a ring")
        ring = a.ring
        da_deg = a.degree(self._names)
        db_deg = b.degree(self._names)
        out = ring.zero()
        cache_a: Dict[Index, Poly] = {}
        cache_b: Dict[Index, Poly] = {}
        for alpha, beta, coef in self._table_in(ring, j):
            if sum(alpha) > da_deg or sum(beta) > db_deg:
                continue
            if alpha not in cache_a:
                cache_a[alpha] = _multi_diff(a, alpha, self._names)
            da = cache_a[alpha]
            if not da:
                continue
            if beta not in cache_b:
                cache_b[beta] = _multi_diff(b, beta, self._names)
            db = cache_b[beta]
            if not db:
                continue
            out = out + coef * da * db
        return out

    def star_series(self, a: Poly, b: Poly, hbar: str = "hbar") -> Poly:
        """sum_{j <= J} hbar^j a *^j b; hbar must be a variable of the ring."""
        h = a.ring.var(hbar)
        out = a.ring.zero()
        for j in range(self.order + 1):
            out = out + self.star_j(a, b, j) * h ** j
        return out


def _cut_hbar(p: Poly, hbar: str, order: int) -> Poly:
    i = p.ring.index[hbar]
    return Poly(p.ring, {e: c for e, c in p.terms.items() if e[i] <= order})


def star_j(a: Poly, b: Poly, j: int, n: int, epsilon=1) -> Poly:
    return StarProduct(n, max(j, 1), epsilon).star_j(a, b, j)


# -- comparison with the enveloping algebra --------------------------------------

HBAR_RING = PolyRing(["hbar"])


def rescale(p: Poly, n: int, hbar: str = "hbar") -> Poly:
    """p_hbar: a degree-d monomial in e gets the factor hbar^d.  ``p`` must live
    in a ring containing ``hbar``."""
    h = p.ring.var(hbar)
    return p.subs({name: p.ring.var(name) * h for name in e_names(n) if name in p.ring.index})


def opp(p: Poly, n: int) -> Element:
    """sym(p_hbar) in U(gl_n)[hbar]; p lives in the symbol ring with aux hbar."""
    aux = [v for v in p.ring.names if not v.startswith("e[")]
    return symmetrize(rescale(p, n), n, PolyRing(aux))


def _with_hbar(p: Poly, n: int) -> Poly:
    if "hbar" in p.ring.index:
        return p
    aux = [v for v in p.ring.names if not v.startswith("e[")]
    return p.to_ring(symbol_ring(n, aux + ["hbar"]))


@dataclass
class GuttResult:
    passed: bool
    exact: bool
    worst_margin: Optional[int]
    defect_terms: int


def gutt_identity_check(a: Poly, b: Poly, star: StarProduct) -> GuttResult:
    """Compare sym(a_hbar) sym(b_hbar) with sum_{j<=J} hbar^j sym((a *^j b)_hbar)
    in U(gl_n)[hbar].  A difference term c hbar^m (PBW monomial of length k)
    is allowed only when m - k >= J + 1 (it then comes from the omitted
    components j > J)."""
    if star.epsilon is None:
        raise ConfigurationError("star product unit epsilon is not calibrated")
    n, J = star.n, star.order
    a, b = _with_hbar(a, n), _with_hbar(b, n)
    a, b = _common(a, b)
    lhs = opp(a, n) * opp(b, n)
    rhs = lhs.alg.zero(lhs.ring)
    for j in range(J + 1):
        piece = opp(star.star_j(a, b, j), n)
        rhs = rhs + piece.scale(lhs.ring.var("hbar") ** j)
    diff = lhs - rhs
    hidx = diff.ring.index["hbar"]
    worst = None
    bad = 0
    for mono, c in diff.terms.items():
        k = len(mono)
        for e in c.terms:
            m = e[hidx]
            margin = m - k
            worst = margin if worst is None else min(worst, margin)
            if margin < J + 1:
                bad += 1
    return GuttResult(bad == 0, diff.is_zero(), worst, bad)


def _common(a: Poly, b: Poly):
    if a.ring == b.ring:
        return a, b
    names = list(a.ring.names) + [v for v in b.ring.names if v not in a.ring.index]
    ring = PolyRing(names)
    return a.to_ring(ring), b.to_ring(ring)


def calibrate_epsilon(n: int) -> list:
    """Units eps for which the degree-one identity holds for every pair of
    coordinate symbols: sym(e_k) sym(e_l) = sym(e_k e_l) + (1/2) sym([e_k, e_l])."""
    ring = symbol_ring(n, ["hbar"])
    good = []
    for eps in UNITS:
        star = StarProduct(n, 1, eps)
        ok = True
        for a_name in e_names(n):
            for b_name in e_names(n):
                if not gutt_identity_check(ring.var(a_name), ring.var(b_name), star).passed:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            good.append(eps)
    return good


def associativity_check(a: Poly, b: Poly, c: Poly, star: StarProduct) -> bool:
    """(a * b) * c == a * (b * c) modulo hbar^(J+1)."""
    n, J = star.n, star.order
    a, b = _common(_with_hbar(a, n), _with_hbar(b, n))
    a, c = _common(a, _with_hbar(c, n))
    b, _ = _common(b, a)
    left = _cut_hbar(star.star_series(_cut_hbar(star.star_series(a, b), "hbar", J), c), "hbar", J)
    right = _cut_hbar(star.star_series(a, _cut_hbar(star.star_series(b, c), "hbar", J)), "hbar", J)
    return left == right


def degree_bound_holds(a: Poly, b: Poly, star: StarProduct) -> bool:
    names = e_names(star.n)
    da, db = a.degree(names), b.degree(names)
    for j in range(star.order + 1):
        p = star.star_j(a, b, j)
        if p and p.degree(names) > da + db - j:
            return False
    return True


def random_symbol(n: int, degree: int, rng, nterms: int = 4, coeff_range: int = 3,
                  ring: Optional[PolyRing] = None) -> Poly:
    ring = ring or symbol_ring(n)
    names = e_names(n)
    out = ring.zero()
    for _ in range(nterms):
        d = rng.randint(0, degree)
        mono = ring.const(rng.randint(-coeff_range, coeff_range) or 1)
        for _ in range(d):
            mono = mono * ring.var(rng.choice(names))
        out = out + mono
    return out


# -- frames adapted to a regular point -----------------------------------------------

def _flatten(m) -> list:
    return [x for row in m for x in row]


def _unflatten(v, n) -> list:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


@dataclass
class RegularPointFrame:
    """Centralizer g_tau = {x : [x, tau] = 0} and its Frobenius complement
    g_tau_flat, with bases as n x n rational matrices.

    In e-coordinates (e[i][j] of a dual point xi is xi[j][i]) the annihilator
    of g_tau is spanned by the coordinate arrays of g_tau_flat, and its
    Frobenius complement by those of g_tau; so ``perp_basis`` and
    ``perp_flat_basis`` reuse the same arrays."""

    tau: list
    centralizer: list = field(default_factory=list)
    complement: list = field(default_factory=list)

    @classmethod
    def at(cls, tau) -> "RegularPointFrame":
        n = len(tau)
        rows = []
        for i in range(n):
            for j in range(n):
                # ([x, tau])_{ij} = sum_k x_ik tau_kj - tau_ik x_kj, linear in x
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] += tau[k][j]
                    row[k * n + j] -= tau[i][k]
                rows.append(row)
        cent = nullspace(rows)
        comp = nullspace(cent) if cent else [[int(i == j) for j in range(n * n)] for i in range(n * n)]
        return cls(tau, [_unflatten(v, n) for v in cent], [_unflatten(v, n) for v in comp])

    @property
    def n(self) -> int:
        return len(self.tau)

    def is_regular(self) -> bool:
        return len(self.centralizer) == self.n

    @property
    def perp_basis(self) -> list:
        """Coordinate arrays spanning the annihilator of g_tau."""
        return self.complement

    @property
    def perp_flat_basis(self) -> list:
        """Coordinate arrays spanning the complement of the annihilator."""
        return self.centralizer

    def tau_coordinates(self) -> list:
        """e-coordinates of tau itself: e[i][j](tau) = tau[j][i]."""
        n = self.n
        return [[self.tau[j][i] for j in range(n)] for i in range(n)]

    def pairing_ok(self) -> bool:
        """Every annihilator array pairs to zero with every centralizer element."""
        for p in self.perp_basis:
            for c in self.centralizer:
                if sum(p[i][j] * c[i][j] for i in range(self.n) for j in range(self.n)) != 0:
                    return False
        return True


@dataclass
class RefinedSupportResult:
    passed: bool
    checked_terms: int
    violations: list
    mode: str


def refined_support_check(frame: RegularPointFrame, order: int, mode: str = "block",
                          epsilon=1) -> RefinedSupportResult:
    """Expand exp(eps <{x, y}, zeta>) with x = sum xp[a] U_a + sum xq[b] V_b
    (U spanning the complement of g_tau, V spanning g_tau; same for y) and
    zeta restricted either to the block spanned by the arrays of g_tau
    (mode "block", one variable per basis vector) or to the line through tau
    (mode "point", a single variable t).  Every coefficient with weight
    j <= order must satisfy |alpha'| + |beta'| >= 2 |gamma|."""
    n = frame.n
    U, V = frame.complement, frame.centralizer
    if mode == "block":
        zdirs = frame.centralizer
    elif mode == "point":
        zdirs = [frame.tau_coordinates()]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    names = ([f"xp[{a}]" for a in range(len(U))] + [f"xq[{b}]" for b in range(len(V))]
             + [f"yp[{a}]" for a in range(len(U))] + [f"yq[{b}]" for b in range(len(V))]
             + [f"z[{k}]" for k in range(len(zdirs))])
    ring = PolyRing(names)

    def combo(prefix_p, prefix_q):
        m = _zero_matrix(ring, n)
        for a, u in enumerate(U):
            v = ring.var(f"{prefix_p}[{a}]")
            m = mat_add(m, [[v * u[i][j] for j in range(n)] for i in range(n)])
        for b, w in enumerate(V):
            v = ring.var(f"{prefix_q}[{b}]")
            m = mat_add(m, [[v * w[i][j] for j in range(n)] for i in range(n)])
        return m

    xm, ym = combo("xp", "xq"), combo("yp", "yq")
    nz = len(zdirs)
    xy_w = [1] * (ring.nvars - nz) + [0] * nz
    # the bracket series only involves x, y, so truncate by their degree
    br = _bch_weighted(xm, ym, order + 1, xy_w)
    zeta = _zero_matrix(ring, n)
    for k, d in enumerate(zdirs):
        v = ring.var(f"z[{k}]")
        zeta = mat_add(zeta, [[v * d[i][j] for j in range(n)] for i in range(n)])
    exponent = ring.zero()
    for i in range(n):
        for j in range(n):
            if br[i][j] and zeta[i][j]:
                exponent = exponent + br[i][j] * zeta[i][j]
    exponent = exponent * epsilon
    weights = [1] * (ring.nvars - nz) + [-1] * nz
    series = _exp_weighted(exponent, weights, order)
    nu, nv = len(U), len(V)
    violations = []
    for e, c in series.terms.items():
        ap = sum(e[:nu])
        aq = sum(e[nu:nu + nv])
        bp = sum(e[nu + nv:2 * nu + nv])
        bq = sum(e[2 * nu + nv:2 * nu + 2 * nv])
        g = sum(e[2 * nu + 2 * nv:])
        if ap + bp < 2 * g:
            violations.append((ap, aq, bp, bq, g))
    return RefinedSupportResult(not violations, len(series.terms), violations[:10], mode)


def _bch_weighted(xm: Matrix, ym: Matrix, degree: int, weights) -> Matrix:
    ring = xm[0][0].ring
    n = len(xm)

    def exp_t(a):
        out = _identity(ring, n)
        power = _identity(ring, n)
        for k in range(1, degree + 1):
            power = mat_mul_trunc(power, a, weights, degree)
            out = mat_add(out, mat_scale(power, Fraction(1, factorial(k))))
        return out

    prod = mat_mul_trunc(exp_t(xm), exp_t(ym), weights, degree)
    z = mat_add(prod, mat_scale(_identity(ring, n), -1))
    log = _zero_matrix(ring, n)
    power = _identity(ring, n)
    for m in range(1, degree + 1):
        power = mat_mul_trunc(power, z, weights, degree)
        log = mat_add(log, mat_scale(power, Fraction((-1) ** (m + 1), m)))
    return mat_add(log, mat_scale(mat_add(xm, ym), -1))


def invariant_gradient_check(f: Poly, frame: RegularPointFrame) -> bool:
    """All first derivatives of f at tau along the annihilator of g_tau vanish."""
    n = frame.n
    point = {}
    t = frame.tau_coordinates()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            point[e_name(i, j)] = t[i - 1][j - 1]
    grads = {}
    for name in e_names(n):
        d = f.diff(name) if name in f.ring.index else f.ring.zero()
        grads[name] = d.evaluate({v: point[v] for v in d.variables()}) if d else 0
    for d in frame.perp_basis:
        s = sum(d[i - 1][j - 1] * grads[e_name(i, j)] for i in range(1, n + 1) for j in range(1, n + 1))
        if s != 0:
            return False
    return True


def hc_vs_sym_order_drop(p: Poly, n: int) -> bool:
    """deg(hc(sym p) - p restricted to the diagonal) <= deg p - 1."""
    hc = hc_project(symmetrize(p, n))
    res = restrict_to_diagonal(p, n)
    diff = hc.to_ring(res.ring) - res
    return diff.is_zero() or diff.degree() <= p.degree() - 1
