"""The log law Im sigma_k ~ c ln Re sigma_k and the matching plot rescaling."""
from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from ..common.errors import InsufficientDataError
from ..mp_kernel import format_real, make_context, to_mp
from ..zeros import ZeroTable

logger = logging.getLogger(__name__)

MIN_FIT_ENTRIES = 50
LOG_LAW_FACTOR = 16


def fit_log_factor(table: ZeroTable, k_min: int = 1) -> float:
    """Least-squares c minimizing sum_k (Im sigma_k - c ln Re sigma_k)^2 over k >= k_min.

    Raises:
        InsufficientDataError: fewer than 50 zeros with k >= k_min
    """
    rows = [z for z in table if z.index >= k_min]
    if len(rows) < MIN_FIT_ENTRIES:
        raise InsufficientDataError(
            f'{len(rows)} zeros with k >= {k_min}; the fit needs at least {MIN_FIT_ENTRIES}')
    log_re = np.log(np.array([float(z.re) for z in rows]))
    im = np.array([float(z.im) for z in rows])
    solution, residuals, _, _ = np.linalg.lstsq(log_re[:, None], im, rcond=None)
    c = float(solution[0])
    logger.debug('log-law fit over %d zeros: c = %.6f, residual sum %s', len(rows), c,
                 residuals[0] if len(residuals) else 0.0)
    return c


def rescale_for_plot(table: ZeroTable, factor: float = LOG_LAW_FACTOR, digits: int = 30) -> list:
    """(Re sigma_k, exp(Im sigma_k / factor)); the log law becomes the diagonal."""
    mp = make_context(digits).mp()
    scale = to_mp(mp, factor)
    return [(to_mp(mp, z.re), mp.exp(to_mp(mp, z.im) / scale)) for z in table]


def rescale_frame(table: ZeroTable, factor: float = LOG_LAW_FACTOR) -> pd.DataFrame:
    rows = [{'k': z.index, 're': format_real(re), 'rescaled_im': format_real(rescaled)}
            for z, (re, rescaled) in zip(table, rescale_for_plot(table, factor))]
    return pd.DataFrame(rows, columns=['k', 're', 'rescaled_im'])
