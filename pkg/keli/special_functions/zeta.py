"""Riemann zeta by Euler-Maclaurin summation with a self-validating parameter choice."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from ..common.errors import ParameterValidationError, PoleError
from ..mp_kernel import PrecisionContext, agreement_digits, bernoulli_numbers, to_mp

logger = logging.getLogger(__name__)

# Extra (N, M) used for the validation run.
CHECK_EXTRA_N = 8
CHECK_EXTRA_M = 4


@dataclass(frozen=True)
class EulerMaclaurinParams:
    cutoff_N: int
    correction_M: int

    def __post_init__(self):
        if self.cutoff_N < 1 or self.correction_M < 1:
            raise ValueError(f'Euler-Maclaurin parameters must be positive: {self}')

    @classmethod
    def for_point(cls, s, digits: int) -> 'EulerMaclaurinParams':
        """N = M = ceil(0.7 * digits + 0.5 * |Im s|)."""
        height = abs(float(s.imag)) if hasattr(s, 'imag') else 0.0
        n = math.ceil(0.7 * digits + 0.5 * height)
        return cls(n, n)

    def widened(self) -> 'EulerMaclaurinParams':
        return EulerMaclaurinParams(self.cutoff_N + CHECK_EXTRA_N, self.correction_M + CHECK_EXTRA_M)


@lru_cache(maxsize=64)
def _correction_factors(m: int) -> tuple:
    """B_{2k} / (2k)! for k = 1..m as exact Fractions."""
    bern = bernoulli_numbers(m)
    return tuple(bern[k] / math.factorial(2 * k) for k in range(1, m + 1))


def _zeta_sum(mp, s, params: EulerMaclaurinParams):
    n_cut = params.cutoff_N
    total = mp.zero
    for n in range(1, n_cut):
        total += mp.power(n, -s)

    big_n = mp.mpf(n_cut)
    n_pow = mp.power(big_n, -s)
    total += big_n * n_pow / (s - 1) + n_pow / 2

    # (s)_{2k-1} * N^{1-s-2k}, advanced two factors per k
    rising = s
    n_term = n_pow / big_n
    n_square = big_n * big_n
    for k, factor in enumerate(_correction_factors(params.correction_M), start=1):
        total += to_mp(mp, factor) * rising * n_term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        n_term /= n_square
    return total


def zeta_em(s, ctx: PrecisionContext, params: EulerMaclaurinParams | None = None, validate: bool = True):
    """Return zeta(s) at the internal precision of ``ctx``.

    Args:
        s: real or complex point (int, Fraction, string or mpmath value)
        ctx: precision context
        params: explicit (N, M); chosen from the digit count and |Im s| when omitted
        validate: recompute with (N+8, M+4) and require agreement to working digits

    Raises:
        PoleError: at s = 1
        ParameterValidationError: if the two parameter sets disagree
    """
    mp = ctx.mp()
    s = to_mp(mp, s)
    if s == 1:
        raise PoleError('zeta has a pole at s = 1')

    params = params or EulerMaclaurinParams.for_point(s, ctx.internal_digits)
    value = _zeta_sum(mp, s, params)
    if validate:
        check = _zeta_sum(mp, s, params.widened())
        agree = agreement_digits(value, check, cap=ctx.internal_digits)
        logger.debug('zeta_em s=%s N=%d M=%d agreement=%.1f', mp.nstr(s, 8),
                     params.cutoff_N, params.correction_M, agree)
        if agree < ctx.working_digits:
            raise ParameterValidationError(
                f'zeta at s={mp.nstr(s, 15)}: (N, M)={params.cutoff_N, params.correction_M} '
                f'and widened run agree to only {agree:.1f} digits (need {ctx.working_digits})')
    return value
