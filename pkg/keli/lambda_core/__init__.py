from .alphas import AlphaSeries, interpolant_eval, required_node_digits, shadow_digits, solve_alphas
from .evaluator import (
    LambdaEvaluator,
    LambdaResult,
    lambda1_closed,
    lambda_at,
    lambda_at_series,
    lambda_int,
    lambda_prime,
)
from .nu import NuSeries, nu_coeffs
from .oracles import lambda_cauchy_oracle, lambda_sum_zeros
from .tables import alpha_table, lambda_table, nu_table, oracle_table

__all__ = [
    'AlphaSeries',
    'solve_alphas',
    'interpolant_eval',
    'required_node_digits',
    'shadow_digits',
    'NuSeries',
    'nu_coeffs',
    'LambdaEvaluator',
    'LambdaResult',
    'lambda_at',
    'lambda_prime',
    'lambda_int',
    'lambda_at_series',
    'lambda1_closed',
    'lambda_sum_zeros',
    'lambda_cauchy_oracle',
    'alpha_table',
    'lambda_table',
    'nu_table',
    'oracle_table',
]
