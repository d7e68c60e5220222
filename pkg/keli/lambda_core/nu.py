"""Taylor coefficients nu_q of the entire extension lambda(s) = sum_q nu_{2q} s^{2q}."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from ..combinatorics import ChiRow, beta_poly
from ..mp_kernel import agreement_digits, to_mp
from .alphas import AlphaSeries

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NuSeries:
    """nu_q for even q = 2..q_max. Odd q are identically zero and not stored."""
    values: tuple
    shadow: tuple
    significant_digits: tuple
    truncation_k: int

    @property
    def q_max(self) -> int:
        return 2 * len(self.values)

    def nu(self, q: int):
        if q % 2 or not 2 <= q <= self.q_max:
            return self.values[0].context.zero
        return self.values[q // 2 - 1]

    def significance(self, q: int) -> float:
        return self.significant_digits[q // 2 - 1]

    def alternates(self) -> bool:
        """sign(nu_{2q}) = (-1)^(q+1) over the stored range."""
        return all((v > 0) == (t % 2 == 1) for t, v in enumerate(self.values, start=1))

    def rows(self) -> list:
        return [(2 * t, v, sig) for t, (v, sig) in enumerate(zip(self.values, self.significant_digits), start=1)]


def _nu_sum(mp, alphas: tuple, betas: list, q: int):
    """Ascending-k sum of [n^q] beta_k * alpha_k; returns (sum, last term)."""
    t = q // 2 - 1
    total = mp.zero
    term = mp.zero
    for k in range(q // 2, len(alphas) + 1):
        term = to_mp(mp, betas[k - 1].coefficients[t]) * alphas[k - 1]
        total += term
    return total, term


def nu_coeffs(alphas: AlphaSeries, chis, q_max: int) -> NuSeries:
    """nu_q = sum_{k >= q/2} chi_{k,q-1} alpha_k / ((2k-1)! (k!)^2), truncated at alphas.k_max.

    Args:
        alphas: coefficient series
        chis: ChiRow objects for k = 1..alphas.k_max (extra rows are ignored)
        q_max: largest even q
    """
    if q_max < 2 or q_max % 2:
        raise ValueError(f'q_max must be a positive even integer, got {q_max}')
    rows = {row.k: row for row in chis if isinstance(row, ChiRow)}
    missing = [k for k in range(1, alphas.k_max + 1) if k not in rows]
    if missing:
        raise ValueError(f'chi rows missing for k = {missing[:5]}...')
    q_max = min(q_max, 2 * alphas.k_max)
    betas = [beta_poly(k, rows[k]) for k in range(1, alphas.k_max + 1)]
    mp = alphas.values[0].context

    values, shadow, significance = [], [], []
    for q in range(2, q_max + 1, 2):
        full, last = _nu_sum(mp, alphas.values, betas, q)
        poor, _ = _nu_sum(mp, alphas.shadow, betas, q)
        sig = alphas.significance_at(full, poor)
        if full != 0 and last != 0 and agreement_digits(full, full + last) < sig:
            logger.warning('nu_%d: last retained term (k=%d) is above the %.0f-digit significance',
                           q, alphas.k_max, sig)
        values.append(full)
        shadow.append(poor)
        significance.append(sig)

    series = NuSeries(tuple(values), tuple(shadow), tuple(significance), alphas.k_max)
    if not series.alternates():
        logger.warning('nu sign alternation violated within q <= %d', q_max)
    return series
