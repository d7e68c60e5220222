"""Exact Bernoulli numbers B_0, B_2, ..., B_{2m}."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List


@lru_cache(maxsize=8)
def _tangent_numbers(n: int) -> tuple:
    """Tangent numbers T_1..T_n by the integer-only boustrophedon recurrence."""
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return tuple(t)


def bernoulli_numbers(count: int) -> List[Fraction]:
    """Return [B_0, B_2, ..., B_{2*count}] exactly.

    Uses B_{2k} = (-1)^(k-1) * 2k * T_k / (4^k (4^k - 1)), which keeps every
    intermediate quantity an integer.
    """
    if count < 1:
        raise ValueError(f'count must be >= 1, got {count}')
    tangent = _tangent_numbers(count)
    out = [Fraction(1)]
    for k in range(1, count + 1):
        four_k = 4 ** k
        sign = 1 if k % 2 else -1
        out.append(Fraction(sign * 2 * k * tangent[k], four_k * (four_k - 1)))
    return out


def bernoulli_numbers_by_recurrence(count: int) -> List[Fraction]:
    """Same numbers from sum_{r<=n} C(n+1, r) B_r = 0, skipping odd indices."""
    if count < 1:
        raise ValueError(f'count must be >= 1, got {count}')
    even = [Fraction(1)]
    for m in range(1, count + 1):
        n = 2 * m
        s = sum((comb(n + 1, 2 * j) * even[j] for j in range(m)), Fraction(0))
        s += Fraction(-(n + 1), 2)
        even.append(-s / (n + 1))
    return even
