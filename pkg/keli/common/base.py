from __future__ import annotations

import argparse
import sys
import time
from abc import ABC, abstractmethod
from pathlib import Path

import pandas as pd

from .config import RunConfig
from .errors import UsageError
from .table_export_mixin import FORMATS, TableExportMixin


class KeliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


class Stage(ABC, TableExportMixin):
    """One pipeline stage behind a subcommand.

    Subclasses set COMMAND and HELP, add their options in ``add_arguments``
    and return their result table from ``run``.
    """
    COMMAND: str = ''
    HELP: str = ''
    SHEET_NAME: str = 'results'

    def __init__(self, config: RunConfig, progress: bool = True):
        self.config: RunConfig = config
        self.progress: bool = progress
        self.result_df: pd.DataFrame | None = None

    def status(self, message: str) -> None:
        # stdout may carry the result table
        if self.progress:
            print(message, file=sys.stderr)

    @abstractmethod
    def run(self) -> pd.DataFrame | None:
        """Compute the stage result"""
        pass

    def summary(self) -> list[str]:
        """Status lines printed after the result is written"""
        return []

    def check(self) -> None:
        """Raise when the result fails its acceptance test; runs after export"""
        pass

    def export(self) -> Path | None:
        if self.result_df is None:
            return None
        return self.write_table(self.result_df, self.config.output_file, self.config.fmt,
                                self.config.header_lines(), self.config.as_dict(), self.SHEET_NAME)

    def process(self) -> int:
        """Main execution flow - template method pattern"""
        self.status(f'Starting {self.__class__.__name__}...')
        self.status(f'Command: {self.config.command_line()}')
        started = time.perf_counter()

        self.result_df = self.run()
        path = self.export()

        for line in self.summary():
            self.status(line)
        if path is not None:
            self.status(f'✅ Saved to: {path}')
        self.check()
        self.status(f'Process completed in {time.perf_counter() - started:.1f}s')
        return 0

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Subclasses add their own options here"""
        pass

    @classmethod
    def create_argument_parser(cls, parser: argparse.ArgumentParser | None = None) -> argparse.ArgumentParser:
        """
        Create argument parser with common arguments

        Args:
            parser: existing (sub)parser to fill; a standalone parser is created when None

        Returns:
            Configured ArgumentParser instance
        """
        if parser is None:
            parser = KeliArgumentParser(
                prog=f'keli {cls.COMMAND}',
                description=cls.HELP,
                formatter_class=argparse.RawDescriptionHelpFormatter,
            )
        parser.add_argument(
            '-o', '--out',
            type=str,
            dest='out',
            help='Output file (default: stdout)'
        )
        parser.add_argument(
            '--format',
            choices=FORMATS,
            default='csv',
            help='Output format (default: csv)'
        )
        parser.add_argument(
            '--threads',
            type=int,
            help='Worker count (default: $KELI_THREADS or 1); results do not depend on it'
        )
        parser.add_argument(
            '-q', '--quiet',
            action='store_true',
            help='No status lines or progress bars'
        )
        parser.add_argument(
            '-v', '--verbose',
            action='count',
            default=0,
            help='More log output (repeat for debug)'
        )
        cls.add_arguments(parser)
        return parser

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace, argv: list[str]) -> 'Stage':
        namespace.command = cls.COMMAND
        return cls(RunConfig.from_namespace(namespace, argv), progress=not namespace.quiet)

    @classmethod
    def from_args(cls, args: list[str] | None = None) -> 'Stage':
        """
        Factory method to create instance from command line arguments

        Args:
            args: arguments after the subcommand (defaults to sys.argv[1:])

        Returns:
            Instance of the class
        """
        args = list(sys.argv[1:] if args is None else args)
        parsed_args = cls.create_argument_parser().parse_args(args)
        return cls.from_namespace(parsed_args, [cls.COMMAND, *args])
