"""Signed Stirling numbers of the first kind."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial


@dataclass(frozen=True)
class StirlingTriangle:
    """S_k^(i) for 0 <= i <= k <= k_max; x(x-1)...(x-k+1) = sum_i S_k^(i) x^i."""
    k_max: int
    rows: tuple

    def row(self, k: int) -> tuple:
        if not 0 <= k <= self.k_max:
            raise IndexError(f'Stirling row {k} outside 0..{self.k_max}')
        return self.rows[k]

    def entry(self, k: int, i: int) -> int:
        row = self.row(k)
        return row[i] if 0 <= i <= k else 0

    def absolute_row(self, k: int) -> tuple:
        return tuple(abs(x) for x in self.row(k))

    def check(self) -> None:
        """Recurrence and row-sum identities; raises ValueError on the first failure."""
        for k in range(1, self.k_max + 1):
            if sum(self.absolute_row(k)) != factorial(k):
                raise ValueError(f'sum |S_{k}^(i)| != {k}!')
            if k >= 2 and sum(self.row(k)) != 0:
                raise ValueError(f'sum S_{k}^(i) != 0')
        for k in range(self.k_max):
            for i in range(1, k + 2):
                if self.entry(k + 1, i) != self.entry(k, i - 1) - k * self.entry(k, i):
                    raise ValueError(f'recurrence fails at S_{k + 1}^({i})')


@lru_cache(maxsize=16)
def stirling_triangle(k_max: int) -> StirlingTriangle:
    if k_max < 1:
        raise ValueError(f'k_max must be >= 1, got {k_max}')
    rows = [(1,)]
    for k in range(k_max):
        prev = rows[-1]
        row = [0] * (k + 2)
        for i in range(1, k + 2):
            row[i] = (prev[i - 1] if i - 1 <= k else 0) - k * (prev[i] if i <= k else 0)
        rows.append(tuple(row))
    return StirlingTriangle(k_max, tuple(rows))
