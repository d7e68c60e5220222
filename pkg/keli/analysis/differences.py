"""High-order finite differences of zero sequences, with exact integer weights."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath import libmp

from ..common.errors import SequenceLengthError
from ..mp_kernel import make_context, to_mp

NORMALIZATIONS = ('none', 'pow2')


@lru_cache(maxsize=16)
def binomial_weights(order: int) -> tuple:
    """C(order, r) for r = 0..order."""
    if order < 0:
        raise ValueError(f'order must be >= 0, got {order}')
    row = [1]
    for r in range(1, order + 1):
        row.append(row[-1] * (order - r + 1) // r)
    return tuple(row)


def _exact(value) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if hasattr(value, '_mpf_'):
        p, q = libmp.to_rational(value._mpf_)
        return Fraction(p, q)
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def exact_complex(value) -> tuple:
    """(re, im) as Fractions from a ComplexZero, mpc, complex, pair or real."""
    if hasattr(value, 're') and hasattr(value, 'im') and hasattr(value, 'index'):
        return _exact(value.re), _exact(value.im)
    if isinstance(value, tuple):
        return _exact(value[0]), _exact(value[1])
    if hasattr(value, '_mpc_') or isinstance(value, complex):
        return _exact(value.real), _exact(value.imag)
    return _exact(value), Fraction(0)


@dataclass(frozen=True)
class DiffSeries:
    """m-th differences as exact (re, im) pairs; length = input length - m."""
    order: int
    values: tuple
    normalization: str = 'none'

    def complex_values(self, digits: int = 30) -> list:
        mp = make_context(digits).mp()
        return [mp.mpc(to_mp(mp, re), to_mp(mp, im)) for re, im in self.values]

    def norm(self, digits: int = 30):
        """Euclidean norm sqrt(sum |x_i|^2), squares summed exactly."""
        total = sum((re * re + im * im for re, im in self.values), Fraction(0))
        mp = make_context(digits).mp()
        return mp.sqrt(to_mp(mp, total))


def finite_difference(seq, order: int, normalization: str = 'none') -> DiffSeries:
    """(Delta^m x)_i = sum_r (-1)^r C(m, r) x_{i+m-r}, optionally divided by 2^m.

    Inputs are made exact, scaled to a common integer denominator and
    differenced in integer arithmetic.

    Raises:
        SequenceLengthError: len(seq) <= order
    """
    if order < 1:
        raise ValueError(f'order must be >= 1, got {order}')
    if normalization not in NORMALIZATIONS:
        raise ValueError(f'normalization must be one of {NORMALIZATIONS}, got {normalization!r}')
    points = [exact_complex(x) for x in seq]
    if len(points) <= order:
        raise SequenceLengthError(f'sequence of length {len(points)} is too short for order {order}')

    denominator = math.lcm(*(part.denominator for point in points for part in point))
    re_int = [int(re * denominator) for re, _ in points]
    im_int = [int(im * denominator) for _, im in points]
    weights = binomial_weights(order)
    signed = [w if r % 2 == 0 else -w for r, w in enumerate(weights)]

    scale = denominator * (2 ** order if normalization == 'pow2' else 1)
    values = []
    for i in range(len(points) - order):
        re_sum = 0
        im_sum = 0
        for r, w in enumerate(signed):
            re_sum += w * re_int[i + order - r]
            im_sum += w * im_int[i + order - r]
        values.append((Fraction(re_sum, scale), Fraction(im_sum, scale)))
    return DiffSeries(order, tuple(values), normalization)


def noise_gain(order: int, normalization: str = 'none', digits: int = 30):
    """rms(Delta^m e) / rms(e) for independent noise e: sqrt(C(2m, m)), divided by 2^m for pow2.

    About (pi m)^(-1/4) after pow2 normalization, 0.146 at m = 700.
    """
    if order < 1:
        raise ValueError(f'order must be >= 1, got {order}')
    if normalization not in NORMALIZATIONS:
        raise ValueError(f'normalization must be one of {NORMALIZATIONS}, got {normalization!r}')
    mp = make_context(digits).mp()
    gain = mp.sqrt(mp.mpf(math.comb(2 * order, order)))
    return gain / mp.mpf(2) ** order if normalization == 'pow2' else gain


def swamping_amplitude(diffs: DiffSeries, factor=10, digits: int = 30):
    """Disk radius whose uniform noise is expected to raise ``diffs.norm()`` ``factor``-fold.

    Uniform noise in a disk of radius A has E|e|^2 = A^2 / 2, so the expected
    squared norm of the perturbed differences is N^2 + L gain^2 A^2 / 2.
    """
    if factor <= 1:
        raise ValueError(f'factor must be > 1, got {factor}')
    mp = make_context(digits).mp()
    clean = to_mp(mp, diffs.norm(digits))
    gain = to_mp(mp, noise_gain(diffs.order, diffs.normalization, digits))
    length = len(diffs.values)
    factor = to_mp(mp, factor)
    return clean * mp.sqrt(2 * (factor * factor - 1) / length) / gain


def perturb_zeros(seq, amplitude, rng_seed: int) -> list:
    """Each element plus a uniform random point of the disk of radius ``amplitude``.

    Offsets come from numpy's seeded generator and are added exactly, so the
    output depends only on the inputs and the seed.
    """
    amplitude = float(amplitude)
    if amplitude < 0:
        raise ValueError(f'amplitude must be >= 0, got {amplitude}')
    points = [exact_complex(x) for x in seq]
    if amplitude == 0:
        return points
    rng = np.random.default_rng(rng_seed)
    radius = amplitude * np.sqrt(rng.random(len(points)))
    angle = 2 * np.pi * rng.random(len(points))
    dx, dy = radius * np.cos(angle), radius * np.sin(angle)
    return [(re + Fraction(float(a)), im + Fraction(float(b))) for (re, im), a, b in zip(points, dx, dy)]


def stride(seq, step: int, offset: int = 0) -> list:
    """Every ``step``-th element starting at ``offset`` (every second zero: step 2)."""
    if step < 1:
        raise ValueError(f'step must be >= 1, got {step}')
    return list(seq)[offset::step]
