import json

import pandas as pd
import pytest
from openpyxl import load_workbook

from keli.cli import build_parser
from keli.cli.stages import FitStage
from keli.common import FORMATS, RunConfig, Stage, TableExportMixin, resolve_threads
from keli.common.errors import KeliError, UsageError, ZeroListError


class TestThreads:
    def test_flag_wins(self, monkeypatch):
        monkeypatch.setenv('KELI_THREADS', '8')
        assert resolve_threads(3) == 3

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('KELI_THREADS', '4')
        assert resolve_threads(None) == 4

    def test_default(self, monkeypatch):
        monkeypatch.delenv('KELI_THREADS', raising=False)
        assert resolve_threads(None) == 1

    @pytest.mark.parametrize('raw', ['abc', '0', '-2'])
    def test_invalid(self, monkeypatch, raw):
        monkeypatch.setenv('KELI_THREADS', raw)
        with pytest.raises(UsageError):
            resolve_threads(None)


class TestRunConfig:
    def test_from_namespace(self, monkeypatch):
        monkeypatch.delenv('KELI_THREADS', raising=False)
        argv = ['zeros', '--nodes', 'n.knt', '--digits', '700', '--tol', '1e-25', '-o', 'z.csv']
        namespace = build_parser().parse_args(argv)
        namespace.command = 'zeros'
        config = RunConfig.from_namespace(namespace, argv)
        assert config.input_file == 'n.knt'
        assert config.output_file == 'z.csv'
        assert config.digits == 700
        assert config.tol == '1e-25'
        assert config.threads == 1
        assert config.option('k_range') == '1'
        assert 'handler' not in config.options

    def test_header_lines(self):
        config = RunConfig('eval', argv=('eval', '--s', '1+1i'), digits=600, options={'s': '1+1i', 'series': False})
        assert config.header_lines() == [
            "# keli eval --s 1+1i",
            '# config: command=eval digits=600 threads=1 format=csv s=1+1i',
        ]

    def test_as_dict_flattens_lists(self):
        config = RunConfig('fit', options={'ks': [1, 2]})
        assert config.as_dict()['ks'] == '1,2'


class TestTableExport:
    @pytest.fixture
    def df(self):
        return pd.DataFrame([{'n': 1, 'lambda_n': '2.3e-2'}, {'n': 2, 'lambda_n': '9.2e-2'}])

    def test_csv(self, df, tmp_path):
        path = TableExportMixin().write_table(df, tmp_path / 't.csv', 'csv', ['# keli lambda'], {})
        assert path.read_text(encoding='utf-8') == '# keli lambda\nn,lambda_n\n1,2.3e-2\n2,9.2e-2\n'

    def test_json(self, df, tmp_path):
        path = TableExportMixin().write_table(df, tmp_path / 't.json', 'json', [], {'command': 'lambda'})
        document = json.loads(path.read_text(encoding='utf-8'))
        assert document['config'] == {'command': 'lambda'}
        assert document['rows'][1] == {'n': 2, 'lambda_n': '9.2e-2'}

    def test_xlsx(self, df, tmp_path):
        path = TableExportMixin().write_table(df, tmp_path / 't.xlsx', 'xlsx', [], {'command': 'lambda'}, 'lambda')
        workbook = load_workbook(path)
        assert workbook.sheetnames == ['lambda', 'config']
        assert workbook['lambda']['B2'].value == '2.3e-2'
        assert workbook['lambda']['A1'].font.bold

    def test_stdout(self, df, capsys):
        assert TableExportMixin().write_table(df, None, 'csv', ['# x'], {}) is None
        assert capsys.readouterr().out.startswith('# x\nn,lambda_n\n')

    def test_unknown_format(self, df, tmp_path):
        assert 'xlsx' in FORMATS
        with pytest.raises(UsageError):
            TableExportMixin().write_table(df, tmp_path / 't.txt', 'txt', [], {})


class TestStage:
    def test_from_args(self):
        stage = FitStage.from_args(['-q', '--k-min', '200'])
        assert stage.config.command == 'fit'
        assert stage.config.option('k_min') == 200
        assert stage.config.command_line() == 'keli fit -q --k-min 200'
        assert not stage.progress

    def test_process_writes_result(self, tmp_path):
        class Constant(Stage):
            COMMAND = 'constant'

            def run(self):
                return pd.DataFrame([{'x': 1}])

        out = tmp_path / 'c.csv'
        stage = Constant(RunConfig('constant', output_file=str(out)), progress=False)
        assert stage.process() == 0
        assert out.read_text(encoding='utf-8').endswith('x\n1\n')

    def test_errors_carry_codes(self):
        assert issubclass(ZeroListError, KeliError)
        assert issubclass(KeliError, ValueError)
        assert UsageError('x').code == 'usage'
