"""
Test della riga di comando: precedenza della configurazione, exit code,
file di output riproducibili.
"""

import json

import pytest

from app import main
from cli import Command, parse_config
from dimension import Metric
from sets import IFS_PRESETS
from utils.errors import ErrorCode, HeisKakeyaError, error_report

SMALL_DIM = ['dim', '--set', 't-axis', '--metric', 'euclidean', '--stop-k', '50', '--levels', '4',
             '--delta-max', '0.3', '--delta-min', repr(0.3 * 2 ** -1.5)]


def _config_file(tmp_path, data):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


# -- Parsing -----------------------------------------------------------------

class TestParseConfig:
    def test_dim_defaults(self):
        config = parse_config(['dim', '--set', 'cube'])
        assert config.command is Command.DIM
        assert config.metric is Metric.HEISENBERG
        assert len(config.ladder) == 6
        assert config.ladder.deltas[0] == pytest.approx(0.3)

    def test_one_dimensional_sweeps_use_fine_ladder(self):
        config = parse_config(['marstrand'])
        assert len(config.ladder) == 11
        assert config.ladder.deltas[-1] == pytest.approx(0.1 * 2 ** -5)
        assert config.ifs is IFS_PRESETS['CANTOR2']

    def test_file_values_and_flag_precedence(self, tmp_path):
        path = _config_file(tmp_path, {'seed': 5, 'stop_k': 40})
        from_file = parse_config(['dim', '--set', 'cube', '--config', path])
        assert from_file.seed == 5
        assert from_file.stop_k == 40
        overridden = parse_config(['dim', '--set', 'cube', '--config', path, '--seed', '7'])
        assert overridden.seed == 7
        assert overridden.stop_k == 40

    def test_unknown_config_key(self, tmp_path):
        path = _config_file(tmp_path, {'sed': 5})
        with pytest.raises(HeisKakeyaError) as info:
            parse_config(['dim', '--set', 'cube', '--config', path])
        assert info.value.code is ErrorCode.INVALID_CONFIG
        assert info.value.exit_code == 2
        assert 'sed' in info.value.message

    def test_unknown_flag_exits_with_2(self):
        with pytest.raises(SystemExit) as info:
            parse_config(['dim', '--set', 'cube', '--no-such-flag'])
        assert info.value.code == 2

    def test_dim_needs_exactly_one_source(self):
        with pytest.raises(HeisKakeyaError) as info:
            parse_config(['dim', '--set', 'cube', '--ifs', 'CANTOR2'])
        assert info.value.code is ErrorCode.INVALID_CONFIG
        with pytest.raises(HeisKakeyaError):
            parse_config(['dim'])

    def test_verify_requires_family(self):
        with pytest.raises(HeisKakeyaError) as info:
            parse_config(['kakeya', 'verify'])
        assert info.value.code is ErrorCode.INVALID_CONFIG

    def test_missing_family_file(self, tmp_path):
        with pytest.raises(HeisKakeyaError) as info:
            parse_config(['pipeline', '--family', str(tmp_path / "none.json")])
        assert info.value.code is ErrorCode.UNKNOWN_SOURCE
        assert info.value.exit_code == 2

    def test_malformed_family_is_config_error(self, tmp_path):
        path = _config_file(tmp_path, {'codes': [{'a': 0.0, 'b': 0.5, 'eps': 0.0}]})
        with pytest.raises(HeisKakeyaError) as info:
            parse_config(['pipeline', '--family', path])
        assert info.value.code is ErrorCode.INVALID_CONFIG
        assert info.value.exit_code == 2
        assert 'family' in info.value.message

    def test_invalid_ifs_is_config_error(self):
        with pytest.raises(HeisKakeyaError) as info:
            parse_config(['marstrand', '--ifs', '{"maps": [{"ratio": 2, "offset": [0, 0, 0]}]}'])
        assert info.value.code is ErrorCode.INVALID_CONFIG
        assert 'Ratio must be' in info.value.message

    def test_invalid_ladder_is_config_error(self):
        with pytest.raises(HeisKakeyaError) as info:
            parse_config(['dim', '--set', 'cube', '--delta-max', '0.1', '--delta-min', '0.2'])
        assert info.value.code is ErrorCode.INVALID_CONFIG


# -- Esecuzione --------------------------------------------------------------

class TestMain:
    def test_build_then_verify(self, tmp_path, capsys):
        out = tmp_path / "fam"
        assert main(['kakeya', 'build', '--m', '8', '--out', str(out)]) == 0
        family_path = tmp_path / "fam.json"
        assert json.loads(family_path.read_text(encoding='utf-8'))['codes']

        assert main(['kakeya', 'verify', '--family', str(family_path), '--out', str(tmp_path / "check")]) == 0
        assert 'missing=0' in capsys.readouterr().out

    def test_dim_outputs_are_reproducible(self, tmp_path):
        assert main(SMALL_DIM + ['--out', str(tmp_path / "a")]) == 0
        assert main(SMALL_DIM + ['--out', str(tmp_path / "b")]) == 0
        first = (tmp_path / "a.csv").read_bytes()
        assert first.decode('utf-8').splitlines()[0] == 'delta,count,log2_inv_delta,log2_count'
        assert len(first.decode('utf-8').splitlines()) == 5
        assert first == (tmp_path / "b.csv").read_bytes()
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_runtime_failure_names_operation(self, tmp_path, capsys):
        code = main(['coarea', '--slab', '5', '6', '--delta', '0.2', '--out', str(tmp_path / "c")])
        assert code == 1
        assert 'experiments.coarea_check' in capsys.readouterr().err

    def test_duality_verify(self, tmp_path, capsys):
        assert main(['duality', 'verify', '--samples', '500', '--out', str(tmp_path / "dv")]) == 0
        assert 'max_residual<=1e-12' in capsys.readouterr().out
        rows = (tmp_path / "dv.csv").read_text(encoding='utf-8').splitlines()
        assert rows[0] == 'check,samples,max_residual,tolerance,passed'

    def test_bad_config_returns_2(self, tmp_path):
        path = _config_file(tmp_path, {'unknown': 1})
        assert main(['dim', '--set', 'cube', '--config', path]) == 2

    def test_malformed_sources_return_2(self, tmp_path, capsys):
        family = _config_file(tmp_path, {'codes': [{'a': 0.0, 'b': 0.5}]})
        assert main(['pipeline', '--family', family]) == 2
        assert main(['marstrand', '--ifs', '{"maps": [{"ratio": 2, "offset": [0, 0, 0]}]}']) == 2
        assert "Invalid value for 'ifs'" in capsys.readouterr().err


def test_error_report_layout():
    error = HeisKakeyaError(ErrorCode.EMPTY_SLAB, 'experiments.coarea_check', "no overlap")
    report = error_report(error)
    assert report == {'success': False,
                      'error': {'code': 'EMPTY_SLAB', 'operation': 'experiments.coarea_check',
                                'message': "no overlap"}}
    assert str(error) == "[experiments.coarea_check] no overlap"
