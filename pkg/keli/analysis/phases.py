"""Residue-class structure of the zeros around the log law.

The residuals r_k = Im sigma_k - c ln Re sigma_k of consecutive zeros jump,
while r_k and r_{k+3} nearly agree: the zeros split into three interleaved
smooth strands when coloured by k mod 3.
"""
from __future__ import annotations

import numpy as np
import pandas as pd

from ..common.errors import InsufficientDataError
from ..zeros import ZeroTable
from .fit import LOG_LAW_FACTOR, MIN_FIT_ENTRIES

PHASE_START = 1500
PHASES = 3


def _rows(table: ZeroTable, k_min: int) -> list:
    rows = [z for z in table if z.index >= k_min]
    if len(rows) < MIN_FIT_ENTRIES:
        raise InsufficientDataError(
            f'{len(rows)} zeros with k >= {k_min}; need at least {MIN_FIT_ENTRIES}')
    for prev, cur in zip(rows, rows[1:]):
        if cur.index != prev.index + 1:
            raise InsufficientDataError(f'zero indices jump from {prev.index} to {cur.index}')
    return rows


def log_residuals(rows, factor: float = LOG_LAW_FACTOR) -> np.ndarray:
    re = np.array([float(z.re) for z in rows])
    im = np.array([float(z.im) for z in rows])
    return im - factor * np.log(re)


def lag_rms(table: ZeroTable, max_lag: int = 6, k_min: int = PHASE_START,
            factor: float = LOG_LAW_FACTOR) -> dict:
    """rms(r_{k+L} - r_k) for L = 1..max_lag over zeros with k >= k_min.

    Raises:
        InsufficientDataError: fewer than 50 zeros, or a gap in the indices
    """
    if max_lag < 1:
        raise ValueError(f'max_lag must be >= 1, got {max_lag}')
    residuals = log_residuals(_rows(table, k_min), factor)
    if len(residuals) <= max_lag:
        raise InsufficientDataError(f'{len(residuals)} zeros cannot cover lag {max_lag}')
    return {lag: float(np.sqrt(np.mean((residuals[lag:] - residuals[:-lag]) ** 2)))
            for lag in range(1, max_lag + 1)}


def dominant_period(table: ZeroTable, max_period: int = 6, k_min: int = PHASE_START) -> int:
    """The lag in 2..max_period whose residual steps are smallest."""
    if max_period < 2:
        raise ValueError(f'max_period must be >= 2, got {max_period}')
    steps = lag_rms(table, max_period, k_min)
    return min(range(2, max_period + 1), key=steps.get)


def phase_coherence(table: ZeroTable, phases: int = PHASES, k_min: int = PHASE_START) -> float:
    """rms of consecutive residual steps over rms of steps within one residue class."""
    if phases < 2:
        raise ValueError(f'phases must be >= 2, got {phases}')
    steps = lag_rms(table, phases, k_min)
    return steps[1] / steps[phases]


def phase_frame(table: ZeroTable, phases: int = PHASES, k_min: int = PHASE_START,
                factor: float = LOG_LAW_FACTOR) -> pd.DataFrame:
    """k, phase = (k - k_min) mod phases, re, im, residual; zero k_min opens phase 0."""
    if phases < 2:
        raise ValueError(f'phases must be >= 2, got {phases}')
    rows = _rows(table, k_min)
    residuals = log_residuals(rows, factor)
    return pd.DataFrame({
        'k': [z.index for z in rows],
        'phase': [(z.index - k_min) % phases for z in rows],
        're': [float(z.re) for z in rows],
        'im': [float(z.im) for z in rows],
        'residual': residuals,
    })


def phase_summary(frame: pd.DataFrame) -> pd.DataFrame:
    """Per phase: count, mean and std of the residual, rms of its steps along the strand."""
    strands = frame.sort_values('k').assign(
        squared_step=lambda df: df.groupby('phase')['residual'].diff() ** 2)
    summary = strands.groupby('phase').agg(
        count=('residual', 'size'),
        mean_residual=('residual', 'mean'),
        std_residual=('residual', lambda r: r.std(ddof=0)),
        step_rms=('squared_step', 'mean'),
    )
    summary['step_rms'] = np.sqrt(summary['step_rms'].fillna(0.0))
    return summary.reset_index()
