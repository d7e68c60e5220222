"""Newton iteration for the zeros of lambda(s), seeded by the log law Im = 16 ln Re."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from mpmath.ctx_mp import MPContext
from tqdm import tqdm

from ..common.errors import (
    DerivativeUnderflowError,
    InsufficientTruncationError,
    NonConvergenceError,
    OutOfRadiusError,
    SymmetryError,
    VerificationError,
)
from ..lambda_core import LambdaEvaluator
from ..mp_kernel import digits_to_bits, to_mp
from .zero_table import ComplexZero, ZeroTable

logger = logging.getLogger(__name__)

MAX_STEPS = 60
CERTIFY_EXTRA_DIGITS = 30
CERTIFY_FACTOR = 10
LOG_LAW_FACTOR = 16
FALLBACK_SLOPE = 88.7
FALLBACK_INTERCEPT = -12.0
SEED_TARGET_MARGIN = 5


def _tol_digits(tol) -> int:
    return max(1, math.ceil(-math.log10(float(tol))))


def _mp(digits: int) -> MPContext:
    mp = MPContext()
    mp.prec = digits_to_bits(digits)
    return mp


def seed_zero(k: int, prior: ZeroTable | None = None) -> complex:
    """Starting point for sigma_k.

    Re continues from the closest known zero below k by the mean spacing of
    ``prior``; with nothing below k it comes from a linear fit a k + b of the
    prior entries, or a = 88.7, b = -12 when fewer than two exist.
    Im = 16 ln Re.
    """
    if k < 1:
        raise ValueError(f'k must be >= 1, got {k}')
    known = [z for z in (prior or ()) if z.index != k]
    spacing = FALLBACK_SLOPE
    slope, intercept = FALLBACK_SLOPE, FALLBACK_INTERCEPT
    if len(known) >= 2:
        ks = np.array([z.index for z in known], dtype=float)
        res = np.array([float(z.re) for z in known])
        slope, intercept = np.polyfit(ks, res, 1)
        spacing = (res[-1] - res[0]) / (ks[-1] - ks[0])

    below = [z for z in known if z.index < k]
    if below:
        last = below[-1]
        re = float(last.re) + (k - last.index) * spacing
    else:
        re = slope * k + intercept
    return complex(re, LOG_LAW_FACTOR * math.log(re))


def _check_radius(s, radius: float | None) -> None:
    if radius is not None and abs(complex(s)) > radius:
        raise OutOfRadiusError(f'|s| = {abs(complex(s)):.6g} exceeds the reliable radius {radius:.6g}')


def _evaluate(ev: LambdaEvaluator, s, target: int, derivative: bool = True):
    try:
        return ev.evaluate(s, target_digits=target, derivative=derivative)
    except InsufficientTruncationError as exc:
        raise OutOfRadiusError(str(exc)) from None


def check_mirror_symmetry(sigma, ev: LambdaEvaluator, target: int) -> None:
    """lambda(conj s) = conj lambda(s) and lambda(-s) = lambda(s), bit for bit."""
    base = _evaluate(ev, sigma, target, derivative=False).value
    mirrored = _evaluate(ev, sigma.conjugate(), target, derivative=False).value
    negated = _evaluate(ev, -sigma, target, derivative=False).value
    if mirrored != base.conjugate() or negated != base:
        raise SymmetryError(f'mirror images of {sigma} do not evaluate to mirrored values')


def refine_zero(seed, ev: LambdaEvaluator, tol, index: int = 1, max_steps: int = MAX_STEPS,
                radius: float | None = None) -> ComplexZero:
    """sigma <- sigma - lambda(sigma) / lambda'(sigma) until |lambda(sigma)| < tol.

    The target accuracy starts at the tolerance's digits and rises with the
    size of the largest beta_k alpha_k term, so the residual is an absolute
    one.

    Raises:
        OutOfRadiusError: an iterate leaves the range the coefficients cover
        DerivativeUnderflowError: lambda' vanishes to sqrt(tol) (multiple zero, e.g. the origin)
        NonConvergenceError: no convergence within ``max_steps``
    """
    tol_digits = _tol_digits(tol)
    target = max(ev.target_digits, tol_digits + SEED_TARGET_MARGIN)
    mp = _mp(target + 20)
    s = to_mp(mp, seed)
    tol_mp = to_mp(mp, str(tol))
    underflow = mp.mpf(10) ** (-((tol_digits + 1) // 2))

    previous_step = None
    ratio = None
    for step in range(max_steps + 1):
        _check_radius(s, radius)
        result = _evaluate(ev, s, target)
        needed = tol_digits + SEED_TARGET_MARGIN + max(0, result.max_term_exponent)
        if needed > target:
            target = needed
            mp = _mp(target + 20)
            s = to_mp(mp, s)
            tol_mp = to_mp(mp, str(tol))
            result = _evaluate(ev, s, target)

        value, slope = to_mp(mp, result.value), to_mp(mp, result.derivative)
        if abs(slope) <= underflow:
            raise DerivativeUnderflowError(
                f"lambda'({mp.nstr(s, 10)}) = {mp.nstr(slope, 3)}: multiple zero or stationary point")
        if abs(value) < tol_mp:
            if s.real < 0:
                s = -s
            sigma = mp.mpc(s.real, abs(s.imag))
            check_mirror_symmetry(sigma, ev, target)
            logger.debug('zero %d: %s after %d steps (last step ratio %s)',
                         index, mp.nstr(sigma, 15), step, ratio)
            return ComplexZero(index, mp.re(sigma), mp.im(sigma), residual=abs(value),
                               newton_steps=step, last_step_ratio=ratio)
        delta = value / slope
        if previous_step is not None and previous_step != 0:
            ratio = float(abs(delta) / abs(previous_step) ** 2)
        previous_step = delta
        s -= delta
    raise NonConvergenceError(
        f'Newton from {complex(seed)} did not reach |lambda| < {tol} in {max_steps} steps')


def certify_zero(zero: ComplexZero, ev: LambdaEvaluator, tol,
                 extra_digits: int = CERTIFY_EXTRA_DIGITS) -> ComplexZero:
    """Re-evaluate at ``extra_digits`` more digits; |lambda| must stay below 10 tol.

    Raises:
        VerificationError: the residual grows beyond 10 tol
    """
    tol_digits = _tol_digits(tol)
    coarse = _evaluate(ev, zero.value, max(ev.target_digits, tol_digits + SEED_TARGET_MARGIN), derivative=False)
    target = tol_digits + SEED_TARGET_MARGIN + max(0, coarse.max_term_exponent) + extra_digits
    result = _evaluate(ev, zero.value, target, derivative=False)
    residual = abs(result.value)
    if residual >= CERTIFY_FACTOR * to_mp(residual.context, str(tol)):
        raise VerificationError(
            f'zero {zero.index}: residual {residual.context.nstr(residual, 3)} at +{extra_digits} digits '
            f'exceeds {CERTIFY_FACTOR} x {tol}')
    return ComplexZero(zero.index, zero.re, zero.im, residual=residual,
                       newton_steps=zero.newton_steps, last_step_ratio=zero.last_step_ratio)


_WORKER_EVALUATOR: LambdaEvaluator | None = None


def _init_worker(ev: LambdaEvaluator) -> None:
    global _WORKER_EVALUATOR
    _WORKER_EVALUATOR = ev


def _refine_job(job: tuple) -> ComplexZero:
    k, seed, tol, radius, certify = job
    zero = refine_zero(seed, _WORKER_EVALUATOR, tol, index=k, radius=radius)
    return certify_zero(zero, _WORKER_EVALUATOR, tol) if certify else zero


def find_zeros(ev: LambdaEvaluator, k_min: int, k_max: int, tol, prior: ZeroTable | None = None,
               workers: int = 1, certify: bool = True, progress: bool = False) -> ZeroTable:
    """Zeros sigma_k_min..sigma_k_max in the canonical quadrant.

    With one worker each seed uses every zero found so far; with more, seeds
    come from ``prior`` alone and the refinements run in parallel.
    """
    if not 1 <= k_min <= k_max:
        raise ValueError(f'need 1 <= k_min <= k_max, got {k_min}..{k_max}')
    radius = ev.reliable_radius(max(ev.target_digits, _tol_digits(tol)))
    logger.info('Reliable radius at %d digits: %.4g', ev.target_digits, radius)
    known = list(prior or ())
    found: list[ComplexZero] = []

    if workers > 1:
        seeds = [seed_zero(k, _as_table(sorted(known, key=lambda z: z.index)))
                 for k in range(k_min, k_max + 1)]
        jobs = [(k, seed, tol, radius, certify) for k, seed in zip(range(k_min, k_max + 1), seeds)]
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(ev,)) as pool:
            found = list(tqdm(pool.map(_refine_job, jobs), total=len(jobs), desc='Zeros', disable=not progress))
    else:
        for k in tqdm(range(k_min, k_max + 1), desc='Zeros', disable=not progress):
            context = sorted(known + found, key=lambda z: z.index)
            seed = seed_zero(k, _as_table(context))
            zero = refine_zero(seed, ev, tol, index=k, radius=radius)
            if certify:
                zero = certify_zero(zero, ev, tol)
            found.append(zero)

    found.sort(key=lambda z: float(z.re))
    for a, b in zip(found, found[1:]):
        if abs(a.value - to_mp(a.re.context, b.value)) < to_mp(a.re.context, str(tol)) ** 0.5:
            raise NonConvergenceError(f'seeds {a.index} and {b.index} converged to the same zero')
    return ZeroTable(tuple(found), 'computed')


def _as_table(zeros: list) -> ZeroTable | None:
    """Seed context: zeros sorted by index, dropping any out of order in re."""
    kept = []
    for zero in zeros:
        if not kept or zero.re > kept[-1].re:
            kept.append(zero)
    return ZeroTable(tuple(kept), 'computed') if kept else None
