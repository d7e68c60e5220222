"""log Gamma by the shifted Stirling series, and Euler's constant."""
from __future__ import annotations

import logging
import math
from functools import lru_cache

from ..common.errors import PoleError, VerificationError
from ..mp_kernel import PrecisionContext, agreement_digits, bernoulli_numbers, to_mp

logger = logging.getLogger(__name__)

GAMMA_METHODS = ('brent-mcmillan', 'euler-maclaurin')


@lru_cache(maxsize=64)
def _stirling_factors(count: int) -> tuple:
    """B_{2k} / (2k (2k-1)) for k = 1..count."""
    bern = bernoulli_numbers(count)
    return tuple(bern[k] / (2 * k * (2 * k - 1)) for k in range(1, count + 1))


def _is_pole(z) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == int(z.real)


def _shift_count(mp, z, radius: float) -> int:
    """Smallest m >= 0 with |z + m| >= radius."""
    if abs(z) >= radius:
        return 0
    height = float(abs(z.imag))
    if height >= radius:
        return 0
    target = math.sqrt(radius * radius - height * height)
    return max(0, math.ceil(target - float(z.real)))


def log_gamma(s, ctx: PrecisionContext):
    """ln Gamma(s) on the principal branch, at internal precision.

    The argument is shifted right until the Stirling series converges to the
    target, then the shift is undone with the recurrence.
    """
    mp = ctx.mp(extra_digits=5)
    z = to_mp(mp, s)
    if _is_pole(z):
        raise PoleError(f'Gamma has a pole at s = {mp.nstr(z, 15)}')

    digits = ctx.internal_digits
    radius = 0.4 * digits + 10
    shift = _shift_count(mp, z, radius)
    w = z + shift

    total = (w - mp.mpf(0.5)) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
    threshold = mp.mpf(10) ** (-(digits + 5))
    w_square = w * w
    w_power = w
    # the series is asymptotic: terms stop shrinking near k = pi |w|
    for factor in _stirling_factors(math.ceil(math.pi * radius)):
        term = to_mp(mp, factor) / w_power
        total += term
        if abs(term) < threshold * (1 + abs(total)):
            break
        w_power *= w_square

    for i in range(shift):
        total -= mp.log(z + i)
    return to_mp(ctx.mp(), total)


def _gamma_brent_mcmillan(mp, digits: int):
    n = math.ceil(digits * math.log(10) / 4) + 1
    steps = math.ceil(3.6 * n) + 10
    n_square = mp.mpf(n) ** 2
    a = -mp.log(n)
    b = mp.one
    u = a
    v = b
    for k in range(1, steps + 1):
        b = b * n_square / (k * k)
        a = (a * n_square / k + b) / k
        u += a
        v += b
    return u / v


def _gamma_euler_maclaurin(mp, digits: int):
    big_n = math.ceil(0.6 * digits) + 10
    harmonic = mp.zero
    for k in range(1, big_n + 1):
        harmonic += mp.one / k
    total = harmonic - mp.log(big_n) - mp.one / (2 * big_n)
    n_square = mp.mpf(big_n) ** 2
    n_power = n_square
    for k, b2k in enumerate(bernoulli_numbers(big_n)[1:], start=1):
        total += to_mp(mp, b2k) / (2 * k * n_power)
        n_power *= n_square
    return total


@lru_cache(maxsize=16)
def euler_gamma(ctx: PrecisionContext, method: str = 'brent-mcmillan'):
    """Euler's constant at internal precision.

    Args:
        ctx: precision context
        method: 'brent-mcmillan' or 'euler-maclaurin'
    """
    mp = ctx.mp(extra_digits=5)
    if method == 'brent-mcmillan':
        value = _gamma_brent_mcmillan(mp, ctx.internal_digits + 5)
    elif method == 'euler-maclaurin':
        value = _gamma_euler_maclaurin(mp, ctx.internal_digits + 5)
    else:
        raise ValueError(f'unknown Euler gamma method: {method}; use one of {GAMMA_METHODS}')
    return to_mp(ctx.mp(), value)


def euler_gamma_checked(ctx: PrecisionContext):
    """Euler's constant, requiring both methods to agree to working precision."""
    first = euler_gamma(ctx, 'brent-mcmillan')
    second = euler_gamma(ctx, 'euler-maclaurin')
    agree = agreement_digits(first, second, cap=ctx.internal_digits)
    if agree < ctx.working_digits:
        raise VerificationError(f'Euler gamma methods agree to only {agree:.1f} digits')
    return first
