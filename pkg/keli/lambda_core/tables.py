"""Tabular views of the lambda_core results, as pandas DataFrames with exact decimal text."""
from __future__ import annotations

import pandas as pd
from tqdm import tqdm

from ..mp_kernel import format_real
from .alphas import AlphaSeries
from .evaluator import LambdaEvaluator
from .nu import NuSeries

LAMBDA_COLUMNS = ['n', 'lambda_n', 'significance']
NU_COLUMNS = ['q', 'nu_q', 'significance']
ALPHA_COLUMNS = ['k', 'alpha_k', 'significance']
ORACLE_COLUMNS = ['n', 'lambda_n']


def _digits(value: float) -> float:
    return round(float(value), 1)


def alpha_table(alphas: AlphaSeries) -> pd.DataFrame:
    rows = [
        {'k': k, 'alpha_k': format_real(alphas.alpha(k)), 'significance': _digits(alphas.significance(k))}
        for k in range(1, alphas.k_max + 1)
    ]
    return pd.DataFrame(rows, columns=ALPHA_COLUMNS)


def nu_table(nus: NuSeries) -> pd.DataFrame:
    rows = [{'q': q, 'nu_q': format_real(v), 'significance': _digits(sig)} for q, v, sig in nus.rows()]
    return pd.DataFrame(rows, columns=NU_COLUMNS)


def lambda_table(ev: LambdaEvaluator, n_max: int, target_digits: int | None = None,
                 progress: bool = False) -> pd.DataFrame:
    """lambda_1..lambda_n_max from the beta route, one row per n.

    Raises:
        InsufficientTruncationError: n_max lies beyond the reliable radius of the coefficients
    """
    if n_max < 1:
        raise ValueError(f'n_max must be >= 1, got {n_max}')
    rows = []
    for n in tqdm(range(1, n_max + 1), desc='lambda_n', disable=not progress):
        result = ev.evaluate_int(n, target_digits, significance=True)
        rows.append({'n': n, 'lambda_n': format_real(result.value),
                     'significance': _digits(result.significance)})
    return pd.DataFrame(rows, columns=LAMBDA_COLUMNS)


def oracle_table(values: list) -> pd.DataFrame:
    rows = [{'n': n, 'lambda_n': format_real(v)} for n, v in enumerate(values, start=1)]
    return pd.DataFrame(rows, columns=ORACLE_COLUMNS)
