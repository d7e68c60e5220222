"""Command-line entry point: ``keli <command> [options]``."""
from __future__ import annotations

import argparse
import logging
import sys

from ..common import KeliArgumentParser, RunConfig
from ..common.errors import KeliError, UsageError
from .stages import STAGES

__all__ = ['RunConfig', 'STAGES', 'build_parser', 'dispatch', 'main']

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2
EXIT_INTERRUPTED = 130


def build_parser() -> argparse.ArgumentParser:
    parser = KeliArgumentParser(
        prog='keli',
        description='Keiper-Li coefficients from interpolated values of ln xi',
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest='command', metavar='<command>')
    for stage in STAGES:
        sub = subparsers.add_parser(stage.COMMAND, help=stage.HELP, description=stage.HELP,
                                    formatter_class=argparse.RawDescriptionHelpFormatter)
        stage.create_argument_parser(sub)
        sub.set_defaults(handler=stage)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING - 10 * min(verbosity, 2)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def _error_line(code: str, exc: BaseException) -> str:
    message = ' '.join(str(exc).split())
    return f'error: code={code} message={message}'


def dispatch(argv: list[str]) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        if not argv:
            raise UsageError('no command given')
        namespace = parser.parse_args(argv)
        if getattr(namespace, 'handler', None) is None:
            raise UsageError('no command given')
        _configure_logging(namespace.verbose)
        stage = namespace.handler.from_namespace(namespace, list(argv))
        return stage.process()
    except UsageError as exc:
        print(_error_line(exc.code, exc), file=sys.stderr)
        print(parser.format_usage(), end='', file=sys.stderr)
        return EXIT_USAGE
    except KeliError as exc:
        print(_error_line(exc.code, exc), file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as exc:
        print(_error_line('invalid-argument', exc), file=sys.stderr)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        print('\nOperation cancelled by user.', file=sys.stderr)
        return EXIT_INTERRUPTED
    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
