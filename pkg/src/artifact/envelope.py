"""The universal enveloping algebra of gl_n in a PBW basis.

Generators ``E[i][j]`` (1-indexed) are totally ordered: strictly lower
triangular first, then diagonal, then strictly upper triangular, each block
lexicographic in (i, j).  With this order the Harish-Chandra projection is a
plain filter on PBW monomials (a monomial lies in the torus part iff all of
its letters are diagonal).

Coefficients are exact scalars, or polynomials in a declared auxiliary ring
(formal ``X``, ``hbar``, ``eta_i``, ``c_j``, ...).  Straightening uses
[E_ij, E_kl] = d_jk E_il - d_li E_kj and memoizes the left action of one
generator on a normal-ordered monomial; basis-level products have integer
coefficients.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import Poly, PolyRing, RingMismatch, _reduce_scalar, scalar_text

Mono = Tuple[int, ...]


def e_name(i: int, j: int) -> str:
    return f"e[{i}][{j}]"


def e_names(n: int) -> List[str]:
    return [e_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def diag_names(n: int) -> List[str]:
    return [e_name(j, j) for j in range(1, n + 1)]


def symbol_ring(n: int, aux: Sequence[str] = ()) -> PolyRing:
    """Ring of symbols: coordinates e[i][j] followed by auxiliary variables."""
    return PolyRing(e_names(n) + list(aux))


class GL:
    """Structure data and caches for U(gl_n)."""

    _instances: Dict[int, "GL"] = {}

    def __new__(cls, n: int):
        if n in cls._instances:
            return cls._instances[n]
        obj = super().__new__(cls)
        obj._setup(n)
        cls._instances[n] = obj
        return obj

    def _setup(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        lower = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i > j]
        diag = [(i, i) for i in range(1, n + 1)]
        upper = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i < j]
        self.order = lower + diag + upper
        self.rank = {ij: r for r, ij in enumerate(self.order)}
        self.ngens = len(self.order)
        self.diag_ranks = frozenset(self.rank[(i, i)] for i in range(1, n + 1))
        self._gen_cache: Dict[Tuple[int, Mono], Tuple[Tuple[Mono, int], ...]] = {}
        self._mono_cache: Dict[Tuple[Mono, Mono], Tuple[Tuple[Mono, int], ...]] = {}
        self._sym_cache: Dict[Tuple[int, ...], Dict[Mono, Fraction]] = {}
        # bracket table on ranks
        self.bracket = {}
        for a, (i, j) in enumerate(self.order):
            for b, (k, l) in enumerate(self.order):
                out: Dict[int, int] = {}
                if j == k:
                    out[self.rank[(i, l)]] = out.get(self.rank[(i, l)], 0) + 1
                if l == i:
                    out[self.rank[(k, j)]] = out.get(self.rank[(k, j)], 0) - 1
                self.bracket[(a, b)] = tuple((g, c) for g, c in out.items() if c)

    def __repr__(self):
        return f"GL({self.n})"

    # -- basis level ---------------------------------------------------------
    def gen_times(self, g: int, m: Mono) -> Tuple[Tuple[Mono, int], ...]:
        """Normal form of E_g * m for a normal-ordered monomial m."""
        key = (g, m)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        if not m or g <= m[0]:
            res = (((g,) + m, 1),)
        else:
            h, rest = m[0], m[1:]
            acc: Dict[Mono, int] = {}
            for mono, c in self.gen_times(g, rest):
                for mono2, c2 in self.gen_times(h, mono):
                    acc[mono2] = acc.get(mono2, 0) + c * c2
            for k, c in self.bracket[(g, h)]:
                for mono, c2 in self.gen_times(k, rest):
                    acc[mono] = acc.get(mono, 0) + c * c2
            res = tuple((mo, c) for mo, c in acc.items() if c)
        self._gen_cache[key] = res
        return res

    def mono_mul(self, m1: Mono, m2: Mono) -> Tuple[Tuple[Mono, int], ...]:
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        if not m1:
            res = ((m2, 1),)
        elif len(m1) == 1:
            res = self.gen_times(m1[0], m2)
        else:
            acc: Dict[Mono, int] = {}
            for mono, c in self.mono_mul(m1[1:], m2):
                for mono2, c2 in self.gen_times(m1[0], mono):
                    acc[mono2] = acc.get(mono2, 0) + c * c2
            res = tuple((mo, c) for mo, c in acc.items() if c)
        self._mono_cache[key] = res
        return res

    def sym_mono(self, counts: Tuple[int, ...]) -> Dict[Mono, Fraction]:
        """Symmetrization of a commutative monomial given by exponent counts
        indexed by generator rank: the average over all orderings, using
        sym(M) = (1/d) sum_v mult(v) E_v sym(M - v)."""
        hit = self._sym_cache.get(counts)
        if hit is not None:
            return hit
        d = sum(counts)
        if d == 0:
            res = {(): Fraction(1)}
        else:
            acc: Dict[Mono, Fraction] = {}
            for v, k in enumerate(counts):
                if not k:
                    continue
                rest = list(counts)
                rest[v] -= 1
                for mono, c in self.sym_mono(tuple(rest)).items():
                    for mono2, c2 in self.gen_times(v, mono):
                        acc[mono2] = acc.get(mono2, 0) + Fraction(k, d) * c * c2
            res = {mo: c for mo, c in acc.items() if c}
        self._sym_cache[counts] = res
        return res

    # -- element constructors ------------------------------------------------
    def gen(self, i: int, j: int, ring: Optional[PolyRing] = None) -> "Element":
        return Element(self, {(self.rank[(i, j)],): _one(ring)}, ring)

    def scalar(self, c, ring: Optional[PolyRing] = None) -> "Element":
        c = _coef(c, ring)
        return Element(self, {(): c} if c else {}, ring)

    def zero(self, ring: Optional[PolyRing] = None) -> "Element":
        return Element(self, {}, ring)

    def mono_text(self, m: Mono) -> str:
        if not m:
            return "1"
        return "*".join("E[%d][%d]" % self.order[g] for g in m)


def _one(ring):
    return ring.one() if ring is not None else 1


def _coef(c, ring):
    if ring is None:
        if isinstance(c, Poly):
            raise RingMismatch("polynomial coefficient in a scalar element")
        return c
    return ring.coerce(c)


class Element:
    """Immutable element of U(gl_n) (optionally with polynomial coefficients)."""

    __slots__ = ("alg", "terms", "ring")

    def __init__(self, alg: GL, terms: Dict[Mono, object], ring: Optional[PolyRing] = None):
        self.alg = alg
        self.terms = terms
        self.ring = ring

    @property
    def n(self) -> int:
        return self.alg.n

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise RingMismatch("expected an enveloping-algebra element")
        if other.alg is not self.alg:
            raise RingMismatch(f"gl_{self.n} vs gl_{other.n}")
        if other.ring != self.ring:
            raise RingMismatch(f"coefficient rings differ: {self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        return self.alg.scalar(other, self.ring)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return Element(self.alg, {m: c for m, c in t.items() if c != 0}, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        if isinstance(c, Poly) and self.ring is None:
            raise RingMismatch("polynomial scalar on a scalar element")
        out = {}
        for m, v in self.terms.items():
            w = v * c
            if w != 0:
                out[m] = _reduce_scalar(w) if not isinstance(w, Poly) else w
        return Element(self.alg, out, self.ring)

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        acc: Dict[Mono, object] = {}
        alg = self.alg
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for mono, k in alg.mono_mul(m1, m2):
                    v = c12 * k
                    if mono in acc:
                        acc[mono] = acc[mono] + v
                    else:
                        acc[mono] = v
        return Element(alg, {m: c for m, c in acc.items() if c != 0}, self.ring)

    def __rmul__(self, other):
        return self.scale(other)

    def commutator(self, other: "Element") -> "Element":
        return self * other - other * self

    def __pow__(self, k: int):
        out = self.alg.scalar(1, self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alg is other.alg and self.ring == other.ring and self.terms == other.terms
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Filtration degree (PBW length); -1 for zero."""
        return max((len(m) for m in self.terms), default=-1)

    def normalize(self) -> "Element":
        """Re-straighten every stored monomial (identity on normal forms)."""
        out = self.alg.zero(self.ring)
        for m, c in self.terms.items():
            word = self.alg.scalar(c, self.ring)
            for g in m:
                word = word * Element(self.alg, {(g,): _one(self.ring)}, self.ring)
            out = out + word
        return out

    def coefficient_map(self, fn) -> "Element":
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v != 0:
                out[m] = v
        return Element(self.alg, out, self.ring)

    def top_symbol(self, ring: PolyRing) -> Poly:
        """Top-degree part read as a commutative polynomial in e[i][j]."""
        d = self.degree()
        return _as_symbol(self, ring, only_degree=d)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        alg = self.alg
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        parts = []
        for m, c in items:
            ctext = c.to_text() if isinstance(c, Poly) else scalar_text(c)
            parts.append(f"({ctext})*{alg.mono_text(m)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Element<gl_{self.n}>({self.to_text()})"


# -- symbols <-> enveloping elements --------------------------------------------

def split_aux(ring: PolyRing, n: int) -> Tuple[List[int], Optional[PolyRing], List[int]]:
    """Indices of e-variables (by generator rank), the auxiliary ring, and the
    positions of auxiliary variables in ``ring``."""
    alg = GL(n)
    e_pos = []
    names = set(e_names(n))
    rank_of_pos = {}
    for pos, name in enumerate(ring.names):
        if name in names:
            i, j = _parse_e(name)
            rank_of_pos[pos] = alg.rank[(i, j)]
    aux_pos = [p for p in range(ring.nvars) if p not in rank_of_pos]
    aux_ring = PolyRing([ring.names[p] for p in aux_pos]) if aux_pos else None
    e_pos = [rank_of_pos.get(p, -1) for p in range(ring.nvars)]
    return e_pos, aux_ring, aux_pos


def _parse_e(name: str) -> Tuple[int, int]:
    a, b = name[2:-1].split("][")
    return int(a), int(b)


def symmetrize(p: Poly, n: int, aux_ring: Optional[PolyRing] = None) -> Element:
    """Linear symmetrization Sym -> U: each monomial in the e[i][j] goes to the
    average of all orderings of its factors; auxiliary variables ride along
    as coefficients (in ``aux_ring``, which defaults to the remaining
    variables of ``p.ring``)."""
    alg = GL(n)
    e_pos, default_aux, aux_pos = split_aux(p.ring, n)
    if aux_ring is None:
        aux_ring = default_aux
    acc: Dict[Mono, object] = {}
    for e, c in p.terms.items():
        counts = [0] * alg.ngens
        for pos, k in enumerate(e):
            if k and e_pos[pos] >= 0:
                if k < 0:
                    raise ValueError("negative exponent in an e-variable")
                counts[e_pos[pos]] += k
        if aux_ring is not None:
            aux_exp = {p.ring.names[q]: e[q] for q in aux_pos if e[q]}
            coef = aux_ring.monomial(aux_exp, c)
        else:
            if any(e[q] for q in aux_pos):
                raise RingMismatch("auxiliary variable without an auxiliary ring")
            coef = c
        for mono, v in alg.sym_mono(tuple(counts)).items():
            w = coef * v
            acc[mono] = acc[mono] + w if mono in acc else w
    return Element(alg, {m: (c if isinstance(c, Poly) else _reduce_scalar(c)) for m, c in acc.items() if c != 0}, aux_ring)


def _as_symbol(z: Element, ring: PolyRing, only_degree: Optional[int] = None) -> Poly:
    """Read PBW monomials as commutative monomials in ``ring`` (which must
    contain the e-variables and the auxiliary variables of ``z``)."""
    alg = z.alg
    pos_of_rank = {alg.rank[_parse_e(nm)]: k for k, nm in enumerate(ring.names) if nm.startswith("e[")}
    out = ring.zero()
    for m, c in z.terms.items():
        if only_degree is not None and len(m) != only_degree:
            continue
        e = [0] * ring.nvars
        for g in m:
            e[pos_of_rank[g]] += 1
        mono = Poly(ring, {tuple(e): 1})
        cc = c.to_ring(ring) if isinstance(c, Poly) else c
        out = out + mono * cc
    return out


def unsymmetrize(z: Element, ring: Optional[PolyRing] = None) -> Poly:
    """Inverse of :func:`symmetrize`: the unique symbol p with sym(p) = z.
    Peels off the top-degree symbol repeatedly."""
    n = z.n
    if ring is None:
        aux = list(z.ring.names) if z.ring is not None else []
        ring = symbol_ring(n, aux)
    out = ring.zero()
    rest = z
    while not rest.is_zero():
        top = rest.top_symbol(ring)
        out = out + top
        rest = rest - symmetrize(top, n, z.ring)
    return out


def hc_project(z: Element, ring: Optional[PolyRing] = None) -> Poly:
    """Harish-Chandra projection: keep PBW monomials made of diagonal
    generators only, read them in Sym(t), then shift e_jj -> e_jj - (n+1-2j)/2."""
    n = z.n
    alg = z.alg
    if ring is None:
        aux = list(z.ring.names) if z.ring is not None else []
        ring = PolyRing(diag_names(n) + aux)
    shifted = {}
    for j in range(1, n + 1):
        shifted[alg.rank[(j, j)]] = ring.var(e_name(j, j)) - Fraction(n + 1 - 2 * j, 2)
    out = ring.zero()
    for m, c in z.terms.items():
        if any(g not in alg.diag_ranks for g in m):
            continue
        term = ring.one()
        for g, k in Counter(m).items():
            term = term * shifted[g] ** k
        cc = c.to_ring(ring) if isinstance(c, Poly) else c
        out = out + term * cc
    return out


def restrict_to_diagonal(p: Poly, n: int, ring: Optional[PolyRing] = None) -> Poly:
    """Set all off-diagonal e[i][j] to zero and move to the diagonal ring."""
    e_pos, aux_ring, aux_pos = split_aux(p.ring, n)
    if ring is None:
        aux = list(aux_ring.names) if aux_ring is not None else []
        ring = PolyRing(diag_names(n) + aux)
    off = {e_name(i, j): 0 for i in range(1, n + 1) for j in range(1, n + 1)
           if i != j and e_name(i, j) in p.ring.index}
    q = p.subs(off)
    keep = {}
    for e, c in q.terms.items():
        keep[e] = c
    return Poly(p.ring, keep).to_ring(ring)


def random_element(n: int, degree: int, rng, nterms: int = 3, coeff_range: int = 3) -> Element:
    """Random scalar element of filtration degree <= degree."""
    alg = GL(n)
    out = alg.zero()
    for _ in range(nterms):
        d = rng.randint(0, degree)
        word = alg.scalar(rng.randint(-coeff_range, coeff_range) or 1)
        for _ in range(d):
            g = rng.randrange(alg.ngens)
            i, j = alg.order[g]
            word = word * alg.gen(i, j)
        out = out + word
    return out
