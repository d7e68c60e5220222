"""JSON dump of the exact objects; integers and rationals as decimal strings "p" or "p/q"."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .beta import BetaPolynomial, ChiRow
from .c_matrix import CMatrix
from .stirling import StirlingTriangle


def exact_text(value: int | Fraction) -> str:
    return str(Fraction(value))


def exact_payload(obj) -> dict:
    if isinstance(obj, StirlingTriangle):
        return {'kind': 'stirling', 'k_max': obj.k_max,
                'rows': [[exact_text(x) for x in row] for row in obj.rows]}
    if isinstance(obj, CMatrix):
        return {'kind': 'c_matrix', 'k_max': obj.k_max,
                'rows': [[exact_text(x) for x in row] for row in obj.rows]}
    if isinstance(obj, ChiRow):
        return {'kind': 'chi', 'k': obj.k,
                'q': list(range(1, 2 * obj.k, 2)), 'values': [exact_text(x) for x in obj.odd]}
    if isinstance(obj, BetaPolynomial):
        return {'kind': 'beta', 'k': obj.k,
                'powers': list(range(2, 2 * obj.k + 1, 2)),
                'coefficients': [exact_text(x) for x in obj.coefficients]}
    raise TypeError(f'no exact rendering for {type(obj).__name__}')


def dump_exact(objects, destination: str | Path | None = None, config: dict | None = None) -> str:
    """Render one object or a list of them; write to ``destination`` when given."""
    items = objects if isinstance(objects, (list, tuple)) else [objects]
    document = {'objects': [exact_payload(obj) for obj in items]}
    if config is not None:
        document = {'config': config, **document}
    text = json.dumps(document, indent=2)
    if destination is not None:
        Path(destination).write_text(text + '\n', encoding='utf-8')
    return text
