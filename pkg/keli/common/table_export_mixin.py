import json
import sys
from pathlib import Path

import numpy as np
import pandas as pd
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.worksheet.worksheet import Worksheet

from .errors import UsageError

FORMATS = ('csv', 'json', 'xlsx')


def _json_default(value):
    if value is pd.NA:
        return None
    if isinstance(value, np.generic):
        return value.item()
    return str(value)


class TableExportMixin:
    """Writes result tables as CSV (with a ``#`` config echo), JSON or XLSX."""

    def _formating_header(
        self, sheet: Worksheet, row_height: int | None = None, font_color: str = 'FFFFFF', font_size: int = 12,
        start_color: str = '4472C4', end_color: str = '4472C4', fill_type: str = 'solid',
        horizontal: str = 'center', vertical: str = 'top', wrap_text: bool = True) -> None:
        """Apply header formatting to given sheet
        Args:
            sheet: Worksheet to format
            row_height: Height of the header row
            font_color: Font color for header
            font_size: Font size for header
            start_color: Fill start color for header
            end_color: Fill end color for header
            fill_type: Fill type for header
            horizontal: Horizontal alignment
            vertical: Vertical alignment
            wrap_text: Whether to wrap text
        """
        if row_height is not None:
            sheet.row_dimensions[1].height = row_height
        for cell in sheet[1]:
            cell.font = Font(bold=True, color=font_color, size=font_size)
            cell.fill = PatternFill(start_color=start_color, end_color=end_color, fill_type=fill_type)
            cell.alignment = Alignment(horizontal=horizontal, vertical=vertical, wrap_text=wrap_text)

    def _formatting_body(
        self, sheet: Worksheet, start_row: int, end_row: int, start_col: int, end_col: int,
        font_color: str = '000000', font_size: int = 11) -> None:
        """Monospace body so long decimal strings line up."""
        for row in sheet.iter_rows(min_row=start_row, max_row=end_row, min_col=start_col, max_col=end_col):
            for cell in row:
                cell.font = Font(name='Consolas', color=font_color, size=font_size)

    def _fit_columns(self, sheet: Worksheet, df: pd.DataFrame, max_width: int = 60) -> None:
        for i, column in enumerate(df.columns):
            longest = max([len(str(column))] + [len(str(v)) for v in df[column]])
            sheet.column_dimensions[sheet.cell(row=1, column=i + 1).column_letter].width = min(max_width, longest + 2)

    def table_text(self, df: pd.DataFrame, fmt: str, header_lines: list[str], config: dict) -> str:
        if fmt == 'csv':
            body = df.to_csv(index=False, lineterminator='\n')
            return ''.join(f'{line}\n' for line in header_lines) + body
        if fmt == 'json':
            document = {'config': config, 'columns': list(df.columns),
                        'rows': df.to_dict(orient='records')}
            return json.dumps(document, indent=2, default=_json_default) + '\n'
        raise UsageError(f'format {fmt!r} has no text form; choose one of csv, json')

    def _table_to_excel(self, df: pd.DataFrame, destination: Path, config: dict, sheet_name: str) -> None:
        config_df = pd.DataFrame({'key': list(config.keys()), 'value': [str(v) for v in config.values()]})
        with pd.ExcelWriter(destination, engine='openpyxl') as writer:
            df.to_excel(writer, sheet_name=sheet_name, index=False)
            sheet = writer.sheets[sheet_name]
            self._formating_header(sheet, row_height=24)
            self._formatting_body(sheet, start_row=2, end_row=len(df) + 1, start_col=1, end_col=len(df.columns))
            self._fit_columns(sheet, df)

            config_df.to_excel(writer, sheet_name='config', index=False)
            config_sheet = writer.sheets['config']
            self._formating_header(config_sheet, start_color='7F7F7F', end_color='7F7F7F')
            self._fit_columns(config_sheet, config_df, max_width=120)

    def write_table(self, df: pd.DataFrame, destination: str | Path | None, fmt: str,
                    header_lines: list[str], config: dict, sheet_name: str = 'results') -> Path | None:
        """Write ``df`` to ``destination`` (stdout when None); returns the path written."""
        if fmt not in FORMATS:
            raise UsageError(f'unknown format {fmt!r}; choose one of {", ".join(FORMATS)}')
        if destination is None:
            if fmt == 'xlsx':
                raise UsageError('xlsx output needs --out')
            sys.stdout.write(self.table_text(df, fmt, header_lines, config))
            return None
        path = Path(destination)
        if fmt == 'xlsx':
            self._table_to_excel(df, path, config, sheet_name)
        else:
            path.write_text(self.table_text(df, fmt, header_lines, config), encoding='utf-8', newline='\n')
        return path
