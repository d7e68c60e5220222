"""The node polynomials omega_k(s) = eta_k(s) eta_k(1 - s) and the node system they define."""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .stirling import StirlingTriangle


def _one_like(s):
    return s.context.one if hasattr(s, 'context') else 1


def _as_exact(s):
    return Fraction(s) if isinstance(s, (int, Fraction)) else s


def omega_values(k_max: int, s) -> list:
    """[omega_1(s), ..., omega_{k_max}(s)] by running products.

    Exact for int/Fraction input, mpmath arithmetic otherwise.
    """
    s = _as_exact(s)
    t = 1 - s
    values = []
    acc = _one_like(s)
    for i in range(1, k_max + 1):
        inv = Fraction(1, i) if isinstance(s, Fraction) else _one_like(s) / i
        acc = acc * (s - inv) * (t - inv)
        values.append(acc)
    return values


def omega_eval(k: int, s):
    """omega_k(s) = prod_{i<=k} (s - 1/i) * prod_{i<=k} (1 - s - 1/i)."""
    if k < 1:
        raise ValueError(f'k must be >= 1, got {k}')
    return omega_values(k, s)[-1]


def omega_expanded(k: int, s, triangle: StirlingTriangle):
    """The same polynomial from its Stirling double-sum expansion (a cross-check)."""
    if triangle.k_max < k:
        raise ValueError(f'Stirling triangle covers k <= {triangle.k_max}, need {k}')
    s = _as_exact(s)
    t = 1 - s
    row = triangle.row(k)
    total = 0
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            total += row[i] * row[j] * s ** (k + i - j) * t ** (k + j - i)
    return total / factorial(k) ** 2


def omega_system(k_max: int) -> tuple:
    """Lower-triangular rows A[m][k] = (-1)^k omega_k(m/(m+1)), 1 <= k <= m <= k_max.

    Row m states F_m(m/(m+1)) = f(m/(m+1)) for the interpolant F_m.
    """
    rows = []
    for m in range(1, k_max + 1):
        values = omega_values(m, Fraction(m, m + 1))
        rows.append(tuple(-v if k % 2 else v for k, v in enumerate(values, start=1)))
    return tuple(rows)


def invert_lower_triangular(rows) -> tuple:
    """Exact inverse of a lower-triangular matrix given by its rows, by forward substitution."""
    n = len(rows)
    inverse = []
    for m in range(n):
        diagonal = rows[m][m]
        if diagonal == 0:
            raise ZeroDivisionError(f'singular lower-triangular matrix at row {m + 1}')
        out = []
        for j in range(m + 1):
            acc = Fraction(int(m == j))
            for k in range(j, m):
                acc -= rows[m][k] * inverse[k][j]
            out.append(acc / diagonal)
        inverse.append(tuple(out))
    return tuple(inverse)
