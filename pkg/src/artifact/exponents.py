"""Exponent arithmetic for the subconvex saving.

With kappa = 2 delta and amplifier length L = T^(2 delta), the error term is
harmless as long as

    alpha = (2 + 2n + (3(n+1)^2 + n)(n+1)) delta - 1/2 <= 0,

and a saving delta for the n-th power of the L-value on GL_{n+1} x GL_n turns
into the exponent 4 delta / (n(n+1)) for the L-value itself.  Everything here
is exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List

from .exact import PolyRing

N_RING = PolyRing(["n"])


def saving_exponent(n: int) -> Fraction:
    """2 / (3 n^5 - 2 n^4 - n^2), defined for n >= 2."""
    if n < 2:
        raise ValueError("defined for n >= 2")
    return Fraction(2, 3 * n ** 5 - 2 * n ** 4 - n ** 2)


def error_weight(n: int) -> int:
    """2 + 2n + (3(n+1)^2 + n)(n+1): the coefficient of delta in alpha."""
    return 2 + 2 * n + (3 * (n + 1) ** 2 + n) * (n + 1)


def alpha(n: int, delta) -> Fraction:
    """2 delta - 1/2 + n kappa + (3(n+1)^2 + n)(n+1) delta with kappa = 2 delta."""
    delta = Fraction(delta)
    kappa = 2 * delta
    return 2 * delta - Fraction(1, 2) + n * kappa + (3 * (n + 1) ** 2 + n) * (n + 1) * delta


@dataclass(frozen=True)
class ExponentBudget:
    n: int
    delta: Fraction
    kappa: Fraction
    amplifier_exponent: Fraction

    @property
    def alpha(self) -> Fraction:
        return alpha(self.n, self.delta)

    @property
    def feasible(self) -> bool:
        return self.delta < Fraction(1, 4) and self.alpha <= 0

    @property
    def saving(self) -> Fraction:
        """Exponent for L(1/2) itself: T^((n+1)/4 (1 - saving))."""
        return 4 * self.delta / (self.n * (self.n + 1))


def optimize(n: int) -> ExponentBudget:
    """Largest delta with alpha <= 0, together with kappa = L-exponent = 2 delta."""
    if n < 1:
        raise ValueError("n >= 1 required")
    d = Fraction(1, 2 * error_weight(n))
    return ExponentBudget(n, d, 2 * d, 2 * d)


def saving_from_optimization(n: int) -> Fraction:
    """2 / (n (n+1) (2 + 2n + (3(n+1)^2 + n)(n+1))), the GL_{n+1} exponent."""
    return Fraction(2, n * (n + 1) * error_weight(n))


def optimization_reproduces(nmax: int = 50) -> bool:
    return all(optimize(n).saving == saving_exponent(n + 1) == saving_from_optimization(n)
               and optimize(n).alpha == 0 for n in range(1, nmax + 1))


def polynomial_identity() -> bool:
    """n(n+1)(2 + 2n + (3(n+1)^2 + n)(n+1)) = 3(n+1)^5 - 2(n+1)^4 - (n+1)^2
    as polynomials in n."""
    n = N_RING.var("n")
    m = n + 1
    lhs = n * m * (2 + 2 * n + (3 * m ** 2 + n) * m)
    rhs = 3 * m ** 5 - 2 * m ** 4 - m ** 2
    return lhs == rhs


def block_sum_identity(nmax: int = 50) -> bool:
    """sum_{j=n'+1}^{n} (2j - n - 1)/2 = n' n''/2 for every split n = n' + n''."""
    for n in range(1, nmax + 1):
        for n1 in range(0, n + 1):
            n2 = n - n1
            lhs = sum(Fraction(2 * j - n - 1, 2) for j in range(n1 + 1, n + 1))
            if lhs != Fraction(n1 * n2, 2):
                return False
    return True


def split_inequality(nmax: int = 50) -> bool:
    """n' + n'' <= n'(n'+1) n'' whenever n', n'' >= 1."""
    return all(a + b <= a * (a + 1) * b for a in range(1, nmax + 1) for b in range(1, nmax + 1))


def identity_checks(nmax: int = 50) -> dict:
    return {"polynomial": polynomial_identity(), "block_sum": block_sum_identity(nmax),
            "split_inequality": split_inequality(nmax)}


def delta_table(nmax: int) -> List[dict]:
    """Rows (n, saving_exponent, lower bound 2/(3n^5)) for 2 <= n <= nmax."""
    rows = []
    for n in range(2, nmax + 1):
        d = saving_exponent(n)
        rows.append({"n": n, "saving_exponent": d, "lower": Fraction(2, 3 * n ** 5), "exceeds_lower": d > Fraction(2, 3 * n ** 5)})
    return rows


def strictly_decreasing(values: Iterable[Fraction]) -> bool:
    v = list(values)
    return all(a > b for a, b in zip(v, v[1:]))
