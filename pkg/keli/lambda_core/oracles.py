"""Independent routes to lambda_n: the truncated sum over zeta zeros and the Cauchy contour."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor

from tqdm import tqdm

from ..common.errors import AliasingError, UnwrapError
from ..mp_kernel import PrecisionContext, format_real, make_context, parse_real, to_mp
from ..special_functions import log_gamma, zeta_product

logger = logging.getLogger(__name__)

MAX_RADIUS = 0.6
MIN_SAMPLES = 256
SUM_DIGITS = 30


def _ordinates(zeros) -> tuple:
    return tuple(getattr(zeros, 'ordinates', zeros))


def check_deviation(deviation, count: int) -> None:
    if deviation is None:
        return
    index, delta = deviation
    if not 1 <= index <= count:
        raise ValueError(f'deviation index {index} outside 1..{count}')
    if not 0 <= float(delta) < 0.5:
        raise ValueError(f'deviation must satisfy 0 <= delta < 1/2, got {delta}')


def lambda_sum_zeros(n: int, zeros, deviation: tuple | None = None, digits: int = SUM_DIGITS):
    """Truncated zero sum for lambda_n.

    An ordinate on the critical line contributes its conjugate pair,
    2 - 2cos(n theta) = 4 sin^2(n theta / 2) with theta = arg(1 - 1/rho), which
    is nonnegative by construction. A deviated ordinate (index, delta) moves to
    Re rho = 1/2 + delta and contributes the whole family rho, 1 - rho and
    their conjugates.
    """
    if n < 1:
        raise ValueError(f'n must be >= 1, got {n}')
    ordinates = _ordinates(zeros)
    check_deviation(deviation, len(ordinates))
    mp = make_context(max(digits, 30)).mp()
    half = mp.mpf(1) / 2
    total = mp.zero
    for j, gamma in enumerate(ordinates, start=1):
        delta = to_mp(mp, deviation[1]) if deviation and deviation[0] == j else mp.zero
        gamma = to_mp(mp, gamma)
        if delta == 0:
            theta = mp.arg(1 - 1 / mp.mpc(half, gamma))
            total += 4 * mp.sin(n * theta / 2) ** 2
        else:
            rho = mp.mpc(half + delta, gamma)
            total += 2 * (1 - ((1 - 1 / rho) ** n).real)
            total += 2 * (1 - ((1 - 1 / (1 - rho)) ** n).real)
    return total


def _contour_sample(job: tuple) -> tuple:
    """ln 2 - (s/2) ln pi + ln Gamma(1 + s/2) and (s-1) zeta(s) at s = 1/(1 - z), as strings."""
    m, half_count, radius, digits = job
    ctx = make_context(digits)
    mp = ctx.mp()
    z = to_mp(mp, radius) * mp.expjpi(mp.mpf(m) / half_count)
    if m == 0 or m == half_count:
        z = z.real
    s = 1 / (1 - z)
    base = mp.ln2 - s / 2 * mp.log(mp.pi) + to_mp(mp, log_gamma(1 + s / 2, ctx))
    product = to_mp(mp, zeta_product(s, ctx))
    bits = ctx.internal_bits
    return tuple(format_real(mp.mpf(x), bits) for x in (
        mp.re(base), mp.im(base), mp.re(product), mp.im(product)))


def _unwrapped_log(mp, samples: list) -> list:
    """Log of each sampled (s-1) zeta(s) with its phase continued along the upper half circle."""
    logs = []
    phase = None
    for m, (_, product) in enumerate(samples):
        principal = mp.arg(product)
        if phase is None:
            phase = principal
        else:
            step = principal - phase
            step -= 2 * mp.pi * mp.nint(step / (2 * mp.pi))
            if abs(step) > mp.pi / 2:
                raise UnwrapError(f'phase jump {mp.nstr(step, 5)} between contour samples {m - 1} and {m}')
            phase += step
        logs.append(mp.mpc(mp.log(abs(product)), phase))
    # both ends of the half circle map to the positive real axis
    if abs(phase) > mp.mpf(10) ** (-10):
        raise UnwrapError(f'unwrapped phase ends at {mp.nstr(phase, 8)}, the contour encloses a zero')
    return logs


def _coefficients(mp, values: list, step: int, count: int, n_max: int, radius):
    """Trapezoidal Taylor coefficients c_1..c_n_max from conjugate-symmetric half-circle samples."""
    half = count // 2
    out = []
    for n in range(1, n_max + 1):
        total = values[0].real + (-1) ** n * values[half * step].real
        for m in range(1, half):
            total += 2 * (values[m * step] * mp.expjpi(-2 * mp.mpf(m * n) / count)).real
        out.append(total / (count * radius ** n))
    return out


def lambda_cauchy_oracle(n_max: int, radius, samples: int, ctx: PrecisionContext,
                         workers: int = 1, progress: bool = False) -> list:
    """lambda_n = n c_n, c_n the Taylor coefficients of f(1/(1-z)) read off the circle |z| = radius.

    The run also evaluates the doubled grid; results that move by more than
    10^-(working-5) / radius^n under doubling raise AliasingError.

    Raises:
        UnwrapError: phase of (s-1) zeta(s) jumps by more than pi/2 between samples
        AliasingError: the coefficients are not stable under sample doubling
    """
    radius_f = float(radius)
    if not 0 < radius_f <= MAX_RADIUS:
        raise ValueError(f'radius must be in (0, {MAX_RADIUS}], got {radius}')
    if samples < MIN_SAMPLES or samples & (samples - 1):
        raise ValueError(f'samples must be a power of two >= {MIN_SAMPLES}, got {samples}')
    if not 1 <= n_max < samples // 2:
        raise ValueError(f'n_max must be in 1..{samples // 2 - 1}, got {n_max}')

    mp = ctx.mp()
    r = to_mp(mp, radius)
    fine = 2 * samples
    jobs = [(m, samples, format_real(r), ctx.working_digits) for m in range(samples + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            texts = list(tqdm(pool.map(_contour_sample, jobs), total=len(jobs),
                              desc='Contour', disable=not progress))
    else:
        texts = [_contour_sample(job) for job in tqdm(jobs, desc='Contour', disable=not progress)]

    bits = ctx.internal_bits
    samples_mp = []
    for base_re, base_im, prod_re, prod_im in texts:
        base = mp.mpc(parse_real(base_re, bits), parse_real(base_im, bits))
        product = mp.mpc(parse_real(prod_re, bits), parse_real(prod_im, bits))
        samples_mp.append((base, product))
    logs = _unwrapped_log(mp, samples_mp)
    values = [base + log for (base, _), log in zip(samples_mp, logs)]

    coarse = _coefficients(mp, values, 2, samples, n_max, r)
    refined = _coefficients(mp, values, 1, fine, n_max, r)
    tolerance = mp.mpf(10) ** (-(ctx.working_digits - 5))
    for n, (a, b) in enumerate(zip(coarse, refined), start=1):
        if abs(a - b) > tolerance / r ** n:
            raise AliasingError(
                f'c_{n} moves by {mp.nstr(abs(a - b), 3)} when samples double from {samples}; '
                'increase samples or reduce radius')
    logger.debug('Cauchy oracle: %d coefficients stable under doubling of %d samples', n_max, samples)
    return [n * c for n, c in enumerate(coarse, start=1)]

