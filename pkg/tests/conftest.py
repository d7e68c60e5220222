import os

import pytest

from keli.combinatorics import c_matrix
from keli.common import resolve_threads
from keli.lambda_core import LambdaEvaluator, lambda_cauchy_oracle, required_node_digits, solve_alphas
from keli.mp_kernel import make_context
from keli.node_pipeline import build_node_table
from keli.zeros import refine_zero, seed_zero

TIER_B_ENV = 'KELI_TIER_B'

# Tier A: laptop scale
TIER_A_DIGITS = 600
TIER_A_COUNT = 60
TIER_A_Q_MAX = 40

# Tier B: long runs
TIER_B_DIGITS = 3000
TIER_B_COUNT = 400
TIER_B_Q_MAX = 80

# fast tier: reaches k = 17, the first beta_k with a negative coefficient
SMALL_COUNT = 20

ORACLE_DIGITS = 60


def pytest_collection_modifyitems(config, items):
    if os.environ.get(TIER_B_ENV) == '1':
        return
    skip = pytest.mark.skip(reason=f'long run; set {TIER_B_ENV}=1')
    for item in items:
        if 'tierb' in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope='session')
def node_table():
    """f at the first 60 nodes, 600 digits."""
    return build_node_table(TIER_A_COUNT, make_context(TIER_A_DIGITS), workers=resolve_threads(None))


@pytest.fixture(scope='session')
def alphas(node_table):
    return solve_alphas(node_table, c_matrix(TIER_A_COUNT), make_context(TIER_A_DIGITS), TIER_A_COUNT)


@pytest.fixture(scope='session')
def evaluator(alphas):
    return LambdaEvaluator.build(alphas, q_max=TIER_A_Q_MAX)


@pytest.fixture(scope='session')
def node_file(node_table, tmp_path_factory):
    from keli.node_pipeline import persist_node_table
    path = tmp_path_factory.mktemp('nodes') / 'tier_a.knt'
    persist_node_table(node_table, path)
    return path


@pytest.fixture(scope='session')
def evaluator_b():
    table = build_node_table(TIER_B_COUNT, make_context(TIER_B_DIGITS), workers=resolve_threads(None))
    series = solve_alphas(table, c_matrix(TIER_B_COUNT), make_context(TIER_B_DIGITS), TIER_B_COUNT)
    return LambdaEvaluator.build(series, q_max=TIER_B_Q_MAX, target_digits=30)


@pytest.fixture(scope='session')
def small_evaluator():
    """k_max = 20 from 240-digit nodes."""
    ctx = make_context(required_node_digits(SMALL_COUNT))
    table = build_node_table(SMALL_COUNT, ctx)
    series = solve_alphas(table, c_matrix(SMALL_COUNT), ctx, SMALL_COUNT)
    return LambdaEvaluator.build(series, q_max=TIER_A_Q_MAX)


@pytest.fixture(scope='session')
def oracle():
    """lambda_1..lambda_20 from the Cauchy contour route at 60 digits."""
    return lambda_cauchy_oracle(20, '0.5', 256, make_context(ORACLE_DIGITS))


@pytest.fixture(scope='session')
def sigma_1(evaluator):
    return refine_zero(seed_zero(1), evaluator, '1e-20', index=1)
