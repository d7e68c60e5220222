"""Complex roots of the beta polynomials.

beta_k(n) = n^2 P_k(n^2) with P_k of degree k - 1, so the 2k roots are n = 0
twice and +-sqrt(u) for every root u of P_k. Working in u halves the degree
handed to mpmath's polyroots.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import pandas as pd

from ..combinatorics import BetaPolynomial, beta_table
from ..common.errors import NonConvergenceError
from ..mp_kernel import format_real, make_context, to_mp

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 4
STEPS_PER_DEGREE = 20


@dataclass(frozen=True)
class BetaRoots:
    """The 2k roots of beta_k, sorted by real then imaginary part."""
    k: int
    roots: tuple
    error: object

    def max_modulus(self):
        return max(abs(r) for r in self.roots)


def _roots_in_square(mp, beta: BetaPolynomial):
    coeffs = [to_mp(mp, c) for c in reversed(beta.coefficients)]
    degree = beta.k - 1
    extraprec = mp.prec
    for _ in range(MAX_ATTEMPTS):
        try:
            return mp.polyroots(coeffs, maxsteps=50 + STEPS_PER_DEGREE * degree,
                                extraprec=extraprec, error=True)
        except mp.NoConvergence:
            logger.debug('beta_%d roots: no convergence with extraprec %d', beta.k, extraprec)
            extraprec *= 2
    raise NonConvergenceError(f'roots of beta_{beta.k} did not converge after {MAX_ATTEMPTS} attempts')


def beta_roots(beta: BetaPolynomial, digits: int = 30) -> BetaRoots:
    """The 2k roots of beta_k, computed at ``digits`` digits.

    Raises:
        NonConvergenceError: polyroots fails even with the extra precision doubled three times
    """
    mp = make_context(digits).mp()
    if beta.k == 1:
        return BetaRoots(1, (mp.mpc(0), mp.mpc(0)), mp.zero)
    squares, error = _roots_in_square(mp, beta)
    roots = [mp.mpc(0), mp.mpc(0)]
    for u in squares:
        n = mp.sqrt(mp.mpc(u))
        roots.extend((n, -n))
    roots.sort(key=lambda r: (r.real, r.imag))
    return BetaRoots(beta.k, tuple(roots), error)


def beta_root_frame(k_max: int, digits: int = 30) -> pd.DataFrame:
    """One row per root of beta_1 .. beta_kmax: k, re, im."""
    if k_max < 1:
        raise ValueError(f'k_max must be >= 1, got {k_max}')
    rows = []
    for beta in beta_table(k_max):
        found = beta_roots(beta, digits)
        logger.debug('beta_%d: max |n| = %s', beta.k, found.max_modulus())
        rows.extend({'k': beta.k, 're': format_real(r.real), 'im': format_real(r.imag)} for r in found.roots)
    logger.info('roots of beta_1..beta_%d: %d points', k_max, len(rows))
    return pd.DataFrame(rows, columns=['k', 're', 'im'])
