"""Closed-form inverse of the node system: alpha_k = sum_j c_kj f(j/(j+1))."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from ..common.errors import CMatrixMismatchError
from .omega import invert_lower_triangular, omega_system

logger = logging.getLogger(__name__)

# The exact node-system inverse is cubic in size; only its leading block is checked.
VERIFY_ROWS = 30


def rising(x: Fraction, m: int) -> Fraction:
    """Pochhammer symbol (x)_m = x (x+1) ... (x+m-1); (x)_0 = 1."""
    return prod((x + t for t in range(m)), start=Fraction(1))


def c_coeff(k: int, j: int) -> Fraction:
    """c_kj = C(k,j) k! (k+1)^2 j^-k (j+1)^(2k-2) / ((1/j - k)_{k-j} (-1/j)_j)."""
    if not 1 <= j <= k:
        raise ValueError(f'c_coeff needs 1 <= j <= k, got k={k}, j={j}')
    numerator = comb(k, j) * factorial(k) * (k + 1) ** 2 * Fraction((j + 1) ** (2 * k - 2), j ** k)
    denominator = rising(Fraction(1, j) - k, k - j) * rising(Fraction(-1, j), j)
    return numerator / denominator


@dataclass(frozen=True)
class CMatrix:
    k_max: int
    rows: tuple

    def __post_init__(self):
        for k, row in enumerate(self.rows, start=1):
            if len(row) != k or row[-1] == 0:
                raise ValueError(f'c-matrix row {k} malformed')

    def entry(self, k: int, j: int) -> Fraction:
        if not 1 <= j <= k <= self.k_max:
            return Fraction(0)
        return self.rows[k - 1][j - 1]

    def row(self, k: int) -> tuple:
        return self.rows[k - 1]


def verify_c_matrix(cmat: CMatrix, rows: int = VERIFY_ROWS) -> None:
    """Compare the leading ``rows`` rows with the exact inverse of the node system."""
    rows = min(rows, cmat.k_max)
    inverse = invert_lower_triangular(omega_system(rows))
    for k in range(1, rows + 1):
        for j in range(1, k + 1):
            if inverse[k - 1][j - 1] != cmat.entry(k, j):
                raise CMatrixMismatchError(
                    f'c[{k},{j}] = {cmat.entry(k, j)} but the node-system inverse gives {inverse[k - 1][j - 1]}')
    logger.debug('c-matrix verified against the node-system inverse for k <= %d', rows)


@lru_cache(maxsize=8)
def c_matrix(k_max: int, verify: bool = True) -> CMatrix:
    if k_max < 1:
        raise ValueError(f'k_max must be >= 1, got {k_max}')
    cmat = CMatrix(k_max, tuple(tuple(c_coeff(k, j) for j in range(1, k + 1)) for k in range(1, k_max + 1)))
    if verify:
        verify_c_matrix(cmat)
    return cmat
