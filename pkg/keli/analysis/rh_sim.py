"""What lambda_n would do if one zeta zero left the critical line.

The scan runs in float64 blocks with numpy; every candidate sign change is
re-checked with the multiprecision zero sum before it is reported.
"""
from __future__ import annotations

import cmath
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from tqdm import tqdm

from ..lambda_core import lambda_sum_zeros
from ..lambda_core.oracles import check_deviation
from .zeta_zeros import ZetaZeroList

logger = logging.getLogger(__name__)

BLOCK_SIZE = 1024
CONFIRM_DIGITS = 30
# float64 sums within this much of zero are re-checked in multiprecision
CANDIDATE_SLACK = 1e-9
BISECTION_STEPS = 40


def _term_parameters(gammas: list, deviate_index: int, delta: float) -> tuple:
    """Angles of the on-line terms and (r, phi) pairs of the deviated family."""
    thetas = []
    deviated = []
    for j, gamma in enumerate(gammas, start=1):
        if j == deviate_index and delta != 0:
            rho = complex(0.5 + delta, gamma)
            for z in (1 - 1 / rho, 1 - 1 / (1 - rho)):
                deviated.append((abs(z), cmath.phase(z)))
        else:
            thetas.append(cmath.phase(1 - 1 / complex(0.5, gamma)))
    return np.array(thetas), deviated


def _block_sums(start: int, stop: int, thetas: np.ndarray, deviated: list) -> np.ndarray:
    n = np.arange(start, stop, dtype=float)
    total = (4 * np.sin(np.outer(n, thetas) / 2) ** 2).sum(axis=1)
    for r, phi in deviated:
        total += 2 * (1 - r ** n * np.cos(n * phi))
    return total


def rh_first_negative(gammas: ZetaZeroList, deviate_index: int, delta, n_max: int,
                      workers: int = 1, progress: bool = False) -> int | None:
    """Smallest n <= n_max with a negative zero sum when zero ``deviate_index`` moves to Re = 1/2 + delta.

    The deviated ordinate contributes rho, 1 - rho and their conjugates, the
    others their conjugate pair. With delta = 0 every term is nonnegative and
    the result is None.
    """
    check_deviation((deviate_index, delta), len(gammas))
    if n_max < 1:
        raise ValueError(f'n_max must be >= 1, got {n_max}')
    thetas, deviated = _term_parameters(gammas.as_floats(), deviate_index, float(delta))
    starts = list(range(1, n_max + 1, BLOCK_SIZE))

    def block(start: int) -> np.ndarray:
        return _block_sums(start, min(start + BLOCK_SIZE, n_max + 1), thetas, deviated)

    deviation = (deviate_index, delta)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        # map keeps block order, so the first confirmed n is the minimum
        for start, sums in tqdm(zip(starts, pool.map(block, starts)), total=len(starts),
                                desc='Scan', disable=not progress):
            slack = CANDIDATE_SLACK * max(1.0, float(np.max(np.abs(sums))))
            for offset in np.flatnonzero(sums < slack):
                n = start + int(offset)
                if lambda_sum_zeros(n, gammas, deviation=deviation, digits=CONFIRM_DIGITS) < 0:
                    logger.debug('first negative sum at n=%d (delta=%s)', n, delta)
                    return n
    return None


def deviation_for_first_negative(gammas: ZetaZeroList, deviate_index: int, target_n: int,
                                 workers: int = 1, steps: int = BISECTION_STEPS) -> tuple:
    """Smallest delta (to bisection accuracy) whose first negative n is at most ``target_n``.

    Returns:
        (delta, n) with n the first negative index at that delta
    """
    low, high = 0.0, 0.5 - 1e-12
    hit = rh_first_negative(gammas, deviate_index, high, target_n, workers)
    if hit is None:
        raise ValueError(f'no delta < 1/2 makes the sum negative by n = {target_n}')
    for _ in range(steps):
        mid = (low + high) / 2
        n = rh_first_negative(gammas, deviate_index, mid, target_n, workers)
        if n is None:
            low = mid
        else:
            high, hit = mid, n
    return high, hit
