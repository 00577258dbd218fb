"""Exact scalars, sparse commutative (Laurent) polynomials and small rational
linear algebra.

Everything here is exact: coefficients are ``int``, ``Fraction`` or
:class:`GaussianRational`.  Polynomials live in a :class:`PolyRing` that
declares its variable names; mixing rings raises :class:`RingMismatch`.
Negative exponents are allowed, so the same class doubles as a Laurent
polynomial type (used for a formal ``q`` and for ``q**(1/2)``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import permutations
from math import gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exps = Tuple[int, ...]


class RingMismatch(TypeError):
    """Raised when operands live over different declared rings."""


class SingularSystem(ValueError):
    """Raised by the linear solvers on singular input."""


def as_scalar(x):
    """Normalize a plain number to the exact scalar types used here."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, Fraction, GaussianRational)):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed in exact arithmetic")
    raise TypeError(f"unsupported scalar {x!r}")


def _reduce_scalar(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    if isinstance(x, GaussianRational) and x.imag == 0:
        return _reduce_scalar(x.real)
    return x


class GaussianRational:
    """a + b*i with rational a, b."""

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        self.real = Fraction(real)
        self.imag = Fraction(imag)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.real * o.real - self.imag * o.imag,
                                self.real * o.imag + self.imag * o.real)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def norm(self) -> Fraction:
        return self.real ** 2 + self.imag ** 2

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        p = self * o.conjugate()
        return GaussianRational(p.real / n, p.imag / n)

    def __rtruediv__(self, other):
        return GaussianRational._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.real == o.real and self.imag == o.imag

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        if self.imag == 0:
            return str(self.real)
        if self.real == 0:
            return f"({self.imag}*i)"
        return f"({self.real}+{self.imag}*i)"


I = GaussianRational(0, 1)
UNITS = (1, -1, I, -I)


def scalar_text(c) -> str:
    c = _reduce_scalar(c)
    return str(c)


class PolyRing:
    """A declared set of commuting variables."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {v: k for k, v in enumerate(names)}
        self.nvars = len(names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({list(self.names)})"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = as_scalar(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str, power: int = 1) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = power
        return Poly(self, {tuple(e): 1})

    def gens(self):
        return [self.var(v) for v in self.names]

    def monomial(self, exps: Mapping[str, int], coeff=1) -> "Poly":
        e = [0] * self.nvars
        for v, k in exps.items():
            e[self.index[v]] += k
        return Poly(self, {tuple(e): as_scalar(coeff)} if coeff else {})

    def coerce(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                raise RingMismatch(f"{x.ring} vs {self}")
            return x
        return self.const(x)


class Poly:
    """Sparse polynomial: dict from exponent tuple to non-zero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exps, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # construction helpers -------------------------------------------------
    @staticmethod
    def _clean(terms):
        return {e: _reduce_scalar(c) for e, c in terms.items() if c != 0}

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        try:
            return self.ring.const(other)
        except TypeError:
            return NotImplemented

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.ring, self._clean(t))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_scalar(other)
            if not c:
                return Poly(self.ring, {})
            return Poly(self.ring, {e: _reduce_scalar(v * c) for e, v in self.terms.items()})
        o = self._other(other)
        t: Dict[Exps, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, self._clean(t))

    __rmul__ = __mul__

    def weight(self, e: Exps, weights: Sequence[int]) -> int:
        return sum(k * w for k, w in zip(e, weights))

    def truncate(self, weights: Sequence[int], max_weight: int) -> "Poly":
        """Drop every monomial whose weighted degree exceeds ``max_weight``."""
        return Poly(self.ring, {e: c for e, c in self.terms.items()
                                if self.weight(e, weights) <= max_weight})

    def mul_truncated(self, other: "Poly", weights: Sequence[int], max_weight: int) -> "Poly":
        """Product keeping only monomials of weighted degree <= max_weight.
        The second factor is sorted by weight so the inner loop can stop early."""
        o = self._other(other)
        wa = [(e, c, self.weight(e, weights)) for e, c in self.terms.items()]
        wb = [(e, c, self.weight(e, weights)) for e, c in o.terms.items()]
        wb.sort(key=lambda t: t[2])
        t: Dict[Exps, object] = {}
        for e1, c1, w1 in wa:
            room = max_weight - w1
            for e2, c2, w2 in wb:
                if w2 > room:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, self._clean(t))

    def __truediv__(self, other):
        """Division by a scalar or by a monomial."""
        if isinstance(other, Poly):
            if len(other.terms) != 1:
                raise ValueError("can only divide by a monomial")
            (e, c), = other.terms.items()
            cinv = GaussianRational(1) / c if isinstance(c, GaussianRational) else Fraction(1) / c
            return self * Poly(self.ring, {tuple(-k for k in e): _reduce_scalar(cinv)})
        c = as_scalar(other)
        if isinstance(c, GaussianRational):
            inv = GaussianRational(1) / c
        else:
            inv = Fraction(1, 1) / c
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only of monomials")
            return self.ring.one() / (self ** (-k))
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except TypeError:
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection ------------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self, names: Iterable[str] | None = None) -> int:
        """Total degree (optionally in a subset of variables); -1 for zero."""
        if not self.terms:
            return -1
        idx = range(self.ring.nvars) if names is None else [self.ring.index[v] for v in names]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def homogeneous_part(self, d: int, names: Iterable[str] | None = None) -> "Poly":
        idx = list(range(self.ring.nvars)) if names is None else [self.ring.index[v] for v in names]
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == d})

    def coefficient(self, exps: Mapping[str, int]) -> "Poly":
        """Coefficient of a monomial in the named variables (others kept)."""
        idx = {self.ring.index[v]: k for v, k in exps.items()}
        out: Dict[Exps, object] = {}
        for e, c in self.terms.items():
            if all(e[i] == k for i, k in idx.items()):
                e2 = tuple(0 if i in idx else x for i, x in enumerate(e))
                out[e2] = out.get(e2, 0) + c
        return Poly(self.ring, self._clean(out))

    def coefficients_in(self, name: str) -> Dict[int, "Poly"]:
        """Split by the exponent of one variable."""
        i = self.ring.index[name]
        out: Dict[int, Dict[Exps, object]] = {}
        for e, c in self.terms.items():
            e2 = e[:i] + (0,) + e[i + 1:]
            out.setdefault(e[i], {})[e2] = c
        return {k: Poly(self.ring, v) for k, v in out.items()}

    def diff(self, name: str) -> "Poly":
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return Poly(self.ring, self._clean(out))

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute scalars or polynomials (same ring) for variables."""
        idx = {self.ring.index[v]: val for v, val in values.items()}
        out = self.ring.zero()
        cache: Dict[Tuple[int, int], object] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                v = idx[i]
                if isinstance(v, Poly):
                    cache[key] = v ** k
                else:
                    v = as_scalar(v)
                    if k >= 0:
                        cache[key] = v ** k
                    else:
                        cache[key] = (Fraction(1) / v if not isinstance(v, GaussianRational) else GaussianRational(1) / v) ** (-k)
            return cache[key]

        for e, c in self.terms.items():
            rest = tuple(0 if i in idx else x for i, x in enumerate(e))
            term = Poly(self.ring, {rest: c})
            for i in idx:
                if e[i]:
                    term = term * power(i, e[i])
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Full evaluation to a scalar (every occurring variable must be given)."""
        p = self.subs(values)
        if not p.is_constant():
            raise ValueError("not all variables were specialized")
        return p.constant_value()

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-embed into a ring containing all variables that occur."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    e2[ring.index[self.ring.names[i]]] = k
            out[tuple(e2)] = c
        return Poly(ring, out)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ring.names[i] for i in sorted(used)]

    # serialization ----------------------------------------------------------
    def monomial_text(self, e: Exps) -> str:
        parts = []
        for i, k in enumerate(e):
            if k:
                name = self.ring.names[i]
                parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts) if parts else "1"

    def to_text(self) -> str:
        """Canonical text: monomials sorted by exponent tuple, descending."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)
        return " + ".join(f"{scalar_text(c)}*{self.monomial_text(e)}" for e, c in items)

    def __repr__(self):
        return f"Poly({self.to_text()})"


# -- small rational linear algebra --------------------------------------------

def frac_matrix(rows) -> list:
    return [[as_scalar(x) for x in row] for row in rows]


def det(m) -> object:
    """Determinant by fraction-exact Gaussian elimination (works for any field
    scalar supported here).  Polynomial entries use :func:`det_expand`."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    out = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        out = out * piv
        inv = Fraction(1) / piv if not isinstance(piv, GaussianRational) else GaussianRational(1) / piv
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f != 0:
                for k in range(c, n):
                    a[r][k] = a[r][k] - f * a[c][k]
    return _reduce_scalar(sign * out)


def perm_sign(p: Sequence[int]) -> int:
    s = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                s = -s
    return s


def det_expand(m):
    """Leibniz determinant; entries may be polynomials (commutative)."""
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        term = perm_sign(p)
        for i in range(n):
            term = term * m[i][p[i]]
        total = total + term
    return total


def solve(a, b) -> list:
    """Solve a x = b exactly (square, non-singular)."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise SingularSystem("singular linear system")
        aug[c], aug[p] = aug[p], aug[c]
        inv = Fraction(1) / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [_reduce_scalar(aug[i][n]) for i in range(n)]


def nullspace(a) -> list:
    """Basis of {x : a x = 0} over the rationals (list of vectors)."""
    rows = [list(map(Fraction, r)) for r in a]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append([_reduce_scalar(x) for x in v])
    return basis


def matmul(a, b):
    n, m, k = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(m)), 0) for j in range(k)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)]


def poly_coeffs_from_roots(roots) -> list:
    """Coefficients (c_0=1, c_1, ..., c_n) of prod (X + r): c_k = e_k(roots)."""
    c = [1]
    for r in roots:
        nxt = c + [0]
        for k in range(len(c), 0, -1):
            nxt[k] = nxt[k] + r * c[k - 1]
        c = nxt
    return [_reduce_scalar(x) for x in c]


def sylvester_resultant(f: Sequence, g: Sequence):
    """Resultant of two univariate polynomials given by coefficient lists in
    descending degree, via the Sylvester determinant."""
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise ValueError("empty polynomial")
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return det(rows)


def integer_gcd(values: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(v)) for v in values), 0)


class QuadraticSurd:
    """a + b*sqrt(d) with rational a, b and a fixed squarefree integer d > 1.

    Used for exact values of q^(k/2) at a concrete prime q."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 2):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @classmethod
    def sqrt_power(cls, d: int, k: int) -> "QuadraticSurd":
        """d^(k/2) for any integer k."""
        half, odd = divmod(k, 2)
        base = Fraction(d) ** half
        return cls(0, base, d) if odd else cls(base, 0, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d and other.b and self.b:
                raise RingMismatch(f"sqrt({self.d}) vs sqrt({other.d})")
            return other if other.b else QuadraticSurd(other.a, 0, self.d)
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        norm = o.a ** 2 - self.d * o.b ** 2
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        p = self * o.conjugate()
        return QuadraticSurd(p.a / norm, p.b / norm, self.d)

    def __rtruediv__(self, other):
        return QuadraticSurd(other, 0, self.d) / self

    def __pow__(self, k: int):
        if k < 0:
            return (QuadraticSurd(1, 0, self.d) / self) ** (-k)
        out = QuadraticSurd(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, float) else NotImplemented
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def sign(self) -> int:
        """Exact sign of a + b sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d b^2
        diff = self.a ** 2 - self.d * self.b ** 2
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*sqrt({self.d}))"
