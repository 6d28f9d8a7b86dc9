"""
Cohomology of twisted cotangent powers on a single projective space.

Every sheaf this package handles reduces, factor by factor, to a bundle
Omega^p(k) on some P^n. Their cohomology is given in closed form by the Bott
formula and is concentrated in at most one degree.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from blockreg.errors import SheafError
from blockreg.utils import binomial


@dataclass(frozen=True, order=True)
class FactorSheaf:
    """
    The bundle Omega^p(k) on P^n.

    Construction normalizes Omega^n(k) to the line bundle O(k-n-1), so a
    normalized factor is a line bundle exactly when p == 0.
    """

    n: int
    p: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise SheafError(
                f"Projective factor dimension must be at least 1, got {self.n}",
                suggestions=["Spaces are products of P^n with n >= 1"],
            )
        if not 0 <= self.p <= self.n:
            raise SheafError.exterior_power_out_of_range(self.n, self.p)
        if self.p == self.n:
            # Omega^n = O(-n-1)
            object.__setattr__(self, "k", self.k - self.n - 1)
            object.__setattr__(self, "p", 0)

    @classmethod
    def line(cls, n: int, k: int) -> "FactorSheaf":
        return cls(n, 0, k)

    @property
    def is_line_bundle(self) -> bool:
        return self.p == 0

    @property
    def rank(self) -> int:
        return binomial(self.n, self.p)

    def __str__(self) -> str:
        if self.is_line_bundle:
            return f"O({self.k})"
        return f"Om({self.p},{self.k})"


@lru_cache(maxsize=None)
def bott_table(n: int, p: int, k: int) -> Tuple[int, ...]:
    """
    Dimensions (h^0, ..., h^n) of Omega^p(k) on P^n by the Bott formula.

    Accepts any 0 <= p <= n, including the unnormalized p == n.
    """
    if not 0 <= p <= n:
        raise SheafError.exterior_power_out_of_range(n, p)
    table = [0] * (n + 1)
    if k > p:
        table[0] = binomial(k + n - p, k) * binomial(k - 1, p)
    elif k == 0:
        table[p] = 1
    elif k < p - n:
        table[n] = binomial(p - k, -k) * binomial(-k - 1, n - p)
    return tuple(table)


def bott_cohomology(fs: FactorSheaf) -> Dict[int, int]:
    """Nonzero entries q -> h^q(P^n, Omega^p(k)); empty when all cohomology vanishes."""
    return {q: h for q, h in enumerate(bott_table(fs.n, fs.p, fs.k)) if h}


def from_wedge_tangent(n: int, p: int, k: int) -> FactorSheaf:
    """The bundle wedge^p T(k) on P^n, rewritten as Omega^(n-p)(k+n+1)."""
    if not 0 <= p <= n:
        raise SheafError.exterior_power_out_of_range(n, p)
    return FactorSheaf(n, n - p, k + n + 1)


def dual_factor(fs: FactorSheaf) -> FactorSheaf:
    """(Omega^p(k))^* = Omega^(n-p)(n+1-k)."""
    return FactorSheaf(fs.n, fs.n - fs.p, fs.n + 1 - fs.k)


def tensor_line(fs: FactorSheaf, c: int) -> FactorSheaf:
    return FactorSheaf(fs.n, fs.p, fs.k + c)


def euler_char_factor(fs: FactorSheaf) -> int:
    """Alternating sum of the Bott table."""
    return sum((-1) ** q * h for q, h in enumerate(bott_table(fs.n, fs.p, fs.k)))


def euler_char_recursion(n: int, p: int, k: int) -> int:
    """
    chi(Omega^p(k)) from the Euler sequence alone, never touching the Bott table.

    chi(Omega^p(k)) = C(n+1, p) chi(O(k-p)) - chi(Omega^(p-1)(k)),
    chi(O(d)) = C(d+n, n) as a polynomial binomial.
    """
    if not 0 <= p <= n:
        raise SheafError.exterior_power_out_of_range(n, p)
    value = binomial(k + n, n)
    for q in range(1, p + 1):
        value = binomial(n + 1, q) * binomial(k - q + n, n) - value
    return value


def line_bundle_expansion(fs: FactorSheaf) -> Dict[int, int]:
    """
    Class of Omega^p(k) in K0(P^n) as twist -> coefficient over line bundles.

    [Omega^p(k)] = sum_j (-1)^(p-j) C(n+1, j) [O(k-j)] for 0 <= j <= p.
    """
    expansion: Dict[int, int] = {}
    for j in range(fs.p + 1):
        coefficient = (-1) ** (fs.p - j) * binomial(fs.n + 1, j)
        if coefficient:
            expansion[fs.k - j] = expansion.get(fs.k - j, 0) + coefficient
    return expansion
