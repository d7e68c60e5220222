"""Run configuration shared by every pipeline stage and echoed into its outputs."""
from __future__ import annotations

import argparse
import os
import shlex
from dataclasses import dataclass, field

from .errors import UsageError

THREADS_ENV = 'KELI_THREADS'

DEFAULT_DIGITS = 600
DEFAULT_COUNT = 60
DEFAULT_K_MAX = 60
DEFAULT_Q_MAX = 40
DEFAULT_TOL = '1e-30'
DEFAULT_RADIUS = '0.5'
DEFAULT_SAMPLES = 256

# Namespace entries that are plumbing rather than run parameters.
_NOT_ECHOED = {'command', 'handler', 'verbose', 'quiet'}


def resolve_threads(value: int | None) -> int:
    """--threads, else $KELI_THREADS, else 1."""
    if value is None:
        raw = os.environ.get(THREADS_ENV, '').strip()
        if not raw:
            return 1
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f'{THREADS_ENV} must be an integer, got {raw!r}') from None
    if value < 1:
        raise UsageError(f'thread count must be >= 1, got {value}')
    return value


@dataclass
class RunConfig:
    """Everything needed to reproduce one run.

    Attributes:
        command: subcommand name
        argv: arguments after the program name, as given
        digits / k_max / q_max: precision and truncation choices
        input_file / output_file: node cache or zero table read, result written
        seed: RNG seed for perturbation runs
        tol: residual tolerance (decimal text, parsed at run precision)
        threads: worker count, never affects results
        fmt: csv | json | xlsx
        options: every other parsed option of the subcommand
    """
    command: str
    argv: tuple = ()
    digits: int | None = None
    k_max: int | None = None
    q_max: int | None = None
    input_file: str | None = None
    output_file: str | None = None
    seed: int | None = None
    tol: str | None = None
    threads: int = 1
    fmt: str = 'csv'
    options: dict = field(default_factory=dict)

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace, argv: list[str] | None = None) -> 'RunConfig':
        values = {k: v for k, v in vars(namespace).items() if k not in _NOT_ECHOED}
        named = {
            'digits': values.pop('digits', None),
            'k_max': values.pop('k_max', None),
            'q_max': values.pop('q_max', None),
            'input_file': values.pop('nodes', None),
            'output_file': values.pop('out', None),
            'seed': values.pop('seed', None),
            'tol': values.pop('tol', None),
            'fmt': values.pop('format', 'csv'),
        }
        threads = resolve_threads(values.pop('threads', None))
        return cls(command=namespace.command, argv=tuple(argv or ()), threads=threads,
                   options=values, **named)

    def option(self, name: str, default=None):
        return self.options.get(name, default)

    def as_dict(self) -> dict:
        """Config entries with a value, named as on the command line."""
        out = {'command': self.command}
        for key in ('digits', 'k_max', 'q_max', 'input_file', 'output_file', 'seed', 'tol'):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out['threads'] = self.threads
        out['format'] = self.fmt
        for key, value in sorted(self.options.items()):
            if value is not None and value is not False:
                out[key] = value
        return {k: _plain(v) for k, v in out.items()}

    def command_line(self) -> str:
        return shlex.join(['keli', *self.argv])

    def header_lines(self) -> list[str]:
        config = ' '.join(f'{k}={v}' for k, v in self.as_dict().items())
        return [f'# {self.command_line()}', f'# config: {config}']


def _plain(value):
    if isinstance(value, (list, tuple)):
        return ','.join(str(v) for v in value)
    if isinstance(value, (int, float, str, bool)):
        return value
    return str(value)
