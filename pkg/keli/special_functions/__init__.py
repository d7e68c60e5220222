from .gamma import GAMMA_METHODS, euler_gamma, euler_gamma_checked, log_gamma
from .xi import xi_log, zeta_product
from .zeta import EulerMaclaurinParams, zeta_em

__all__ = [
    'EulerMaclaurinParams',
    'zeta_em',
    'log_gamma',
    'euler_gamma',
    'euler_gamma_checked',
    'GAMMA_METHODS',
    'xi_log',
    'zeta_product',
]
