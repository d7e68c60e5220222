from .beta_roots import BetaRoots, beta_root_frame, beta_roots
from .differences import (
    NORMALIZATIONS,
    DiffSeries,
    binomial_weights,
    exact_complex,
    finite_difference,
    noise_gain,
    perturb_zeros,
    stride,
    swamping_amplitude,
)
from .fit import fit_log_factor, rescale_for_plot, rescale_frame
from .phases import dominant_period, lag_rms, log_residuals, phase_coherence, phase_frame, phase_summary
from .rh_sim import deviation_for_first_negative, rh_first_negative
from .zeta_zeros import GAMMA_FILE, ZetaZeroList, load_zeta_zeros

__all__ = [
    'ZetaZeroList',
    'GAMMA_FILE',
    'load_zeta_zeros',
    'DiffSeries',
    'NORMALIZATIONS',
    'binomial_weights',
    'exact_complex',
    'finite_difference',
    'noise_gain',
    'perturb_zeros',
    'stride',
    'swamping_amplitude',
    'fit_log_factor',
    'rescale_for_plot',
    'rescale_frame',
    'rh_first_negative',
    'deviation_for_first_negative',
    'BetaRoots',
    'beta_roots',
    'beta_root_frame',
    'log_residuals',
    'lag_rms',
    'dominant_period',
    'phase_coherence',
    'phase_frame',
    'phase_summary',
]
