"""chi coefficients and the beta polynomials lambda(n) = sum_k beta_k(n) alpha_k is built from."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from ..common.errors import IntegerCheckError
from .stirling import StirlingTriangle, stirling_triangle


@dataclass(frozen=True)
class ChiRow:
    """chi_kq for odd q = 1, 3, ..., 2k-1 (even q vanish and are not stored)."""
    k: int
    odd: tuple

    def value(self, q: int) -> int:
        if q % 2 == 0 or not 1 <= q <= 2 * self.k - 1:
            return 0
        return self.odd[(q - 1) // 2]


def _check_triangle(k: int, triangle: StirlingTriangle) -> None:
    if triangle.k_max < 2 * k - 1:
        raise ValueError(f'Stirling triangle covers k <= {triangle.k_max}, chi_{k} needs {2 * k - 1}')


def _pack_chi(k: int, full: list) -> ChiRow:
    if any(full[q] != 0 for q in range(0, len(full), 2)):
        raise IntegerCheckError(f'chi_{k} has nonzero entries at even q: {full}')
    odd = tuple(full[1::2])
    if odd[-1] != factorial(k) ** 2:
        raise IntegerCheckError(f'chi_{k},{2 * k - 1} = {odd[-1]}, expected (k!)^2')
    return ChiRow(k, odd)


def chi_coeffs(k: int, triangle: StirlingTriangle) -> ChiRow:
    """chi_kq = [n^q] sum_{i,j} |S_k^(i) S_k^(j)| (n + k + i - j - 1)_(2k-1), falling factorial.

    The (i, j) pairs are grouped by the shift a = k + i - j - 1, the shifted
    falling factorial is expanded with the Vandermonde identity and converted
    back to powers of n with the Stirling row of 2k - 1.
    """
    _check_triangle(k, triangle)
    m = 2 * k - 1
    s_k = triangle.absolute_row(k)

    weights = [0] * (2 * k - 1)
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            weights[k - 1 + i - j] += s_k[i] * s_k[j]

    # moments[t] = sum_a w_a a(a-1)...(a-t+1)
    moments = [0] * (m + 1)
    for a, weight in enumerate(weights):
        falling = 1
        for t in range(a + 1):
            moments[t] += weight * falling
            falling *= a - t

    full = [0] * (m + 1)
    for r in range(m + 1):
        factor = comb(m, r) * moments[m - r]
        if factor:
            for q, stirling in enumerate(triangle.row(r)):
                full[q] += factor * stirling
    return _pack_chi(k, full)


def chi_coeffs_literal(k: int, triangle: StirlingTriangle) -> ChiRow:
    """The quadruple sum term by term, with 0^0 = 1. Quartic in k; for checking only."""
    _check_triangle(k, triangle)
    m = 2 * k - 1
    s_k = triangle.row(k)
    s_m = triangle.row(m)
    full = [0] * (m + 1)
    for q in range(m + 1):
        total = 0
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                a = k + i - j - 1
                weight = abs(s_k[i] * s_k[j])
                for p in range(q, m + 1):
                    total += weight * s_m[p] * comb(p, q) * (a ** (p - q) if p > q else 1)
        full[q] = total
    return _pack_chi(k, full)


@dataclass(frozen=True)
class BetaPolynomial:
    """beta_k(n) = sum_t coefficients[t] n^(2t+2), degree 2k.

    The values at integers n >= 1 are positive, the coefficients need not be:
    from k = 17 on the n^2 coefficient is negative.
    """
    k: int
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != self.k:
            raise ValueError(f'beta_{self.k} must have {self.k} coefficients, got {len(self.coefficients)}')
        if self.coefficients[-1] <= 0:
            raise ValueError(f'beta_{self.k} must have degree {2 * self.k}')

    @property
    def degree(self) -> int:
        return 2 * self.k

    def __call__(self, n):
        """Horner in n^2; exact for int and Fraction input."""
        if isinstance(n, int):
            n = Fraction(n)
        n_square = n * n
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * n_square + c
        return acc * n_square


def beta_poly(k: int, chi: ChiRow) -> BetaPolynomial:
    """Coefficient of n^(q+1) is chi_kq / ((k!)^2 (2k-1)!)."""
    if chi.k != k:
        raise ValueError(f'chi row is for k={chi.k}, not {k}')
    scale = factorial(k) ** 2 * factorial(2 * k - 1)
    return BetaPolynomial(k, tuple(Fraction(c, scale) for c in chi.odd))


def binomial_poly(x, m: int):
    """C(x, m) = x (x-1) ... (x-m+1) / m! for any (possibly negative or rational) x."""
    acc = Fraction(1)
    for t in range(m):
        acc *= x - t
    return acc / factorial(m)


def beta_direct(n, k: int, triangle: StirlingTriangle) -> Fraction:
    """beta_nk = n/(k!)^2 sum_{i,j>=1} |S_k^(i) S_k^(j)| C(n + k + i - j - 1, 2k - 1).

    The sum may start at 1 because S_k^(0) = 0 for k >= 1.
    """
    if triangle.k_max < k:
        raise ValueError(f'Stirling triangle covers k <= {triangle.k_max}, need {k}')
    n = Fraction(n)
    s_k = triangle.absolute_row(k)
    total = Fraction(0)
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            total += s_k[i] * s_k[j] * binomial_poly(n + k + i - j - 1, 2 * k - 1)
    return n * total / factorial(k) ** 2


@lru_cache(maxsize=8)
def chi_table(k_max: int) -> tuple:
    triangle = stirling_triangle(2 * k_max - 1 if k_max > 1 else 1)
    return tuple(chi_coeffs(k, triangle) for k in range(1, k_max + 1))


@lru_cache(maxsize=8)
def beta_table(k_max: int) -> tuple:
    return tuple(beta_poly(row.k, row) for row in chi_table(k_max))
