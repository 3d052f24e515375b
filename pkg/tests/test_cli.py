import io
import json

import pytest

from golden_cases import EXPECTED, cases, dump_record, render, vector_record, VECTOR_RECORD
from twistcube import CubeSpec, cartan_matrix
from twistcube.cli import (
    EXIT_CAPACITY,
    EXIT_INCONSISTENT,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_OVERFLOW,
    ConfigError,
    dumps,
    main,
    parse_config,
    run,
)
from twistcube.errors import InconsistencyError

NOT_FREE = '{"n": 2, "c": [[1, 2, 2]], "ell": [4, 3], "command": "check"}'
A3_CASE = '{"cartan": "A3", "lambda": [0, 0, 2], "word": [2, 1, 2, 3, 2, 1], "command": "check"}'

# reference constant tables, one upper-triangular row per line
A3_TABLE = """\
-1 2 -1 2 -1
-1 0 -1 2
-1 2 -1
-1 0
-1"""
A3_ELL = "0 0 0 2 0 0"
SL3_TABLE = "-1 2\n-1"
SL3_ELL = "2 1 2"


def canonical_rows(rows):
    return "\n".join(" ".join(str(v) for v in row) for row in rows)


def run_cli(monkeypatch, capsys, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParseConfig:
    def test_raw(self):
        cfg = parse_config(NOT_FREE)
        assert cfg.mode == "raw" and cfg.command == "check"
        assert cfg.spec == CubeSpec.build((4, 3), {(1, 2): 2})

    def test_rep(self):
        cfg = parse_config(A3_CASE)
        assert cfg.mode == "rep" and cfg.cartan == cartan_matrix("A3")
        assert cfg.spec.ell == (0, 0, 0, 2, 0, 0)

    def test_matrix_cartan(self):
        cfg = parse_config('{"cartan": [[2, -1], [-2, 2]], "lambda": [1, 0], "word": [1]}')
        assert cfg.cartan == cartan_matrix("B2")

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ('{"n": 2, "c": [[2, 1, 5]], "ell": [1, 1]}', "i < j"),
            ('{"n": 2, "c": [], "ell": [1]}', "ell"),
            ('{"n": 1, "c": [], "ell": [1.5]}', "ell"),
            ('{"n": 1, "c": [], "ell": [1], "cartan": "A1"}', "exactly one"),
            ('{"ell": [1]}', "'n'"),
            ('{"n": 1, "c": [], "ell": [1], "bogus": 1}', "bogus"),
            ('{"n": 1, "c": [], "ell": [1], "command": "fly"}', "command"),
            ('{"cartan": "Q2", "lambda": [1, 1], "word": [1]}', "cartan"),
            ('{"cartan": "A2", "lambda": [1, 1], "word": [3]}', "word[0]"),
            ('{"cartan": "A2", "lambda": [1], "word": [1]}', "lambda"),
            ('{"n": 1, "c": [], "ell": [1], "point_cap": 0}', "point_cap"),
            ("[1, 2]", "object"),
        ],
    )
    def test_validation_errors(self, text, fragment):
        with pytest.raises(ConfigError) as err:
            parse_config(text)
        assert fragment in str(err.value)

    def test_json_error_position(self):
        with pytest.raises(ConfigError) as err:
            parse_config('{\n  "n": 1,\n  "ell": [1,,]\n}')
        assert "line 3" in str(err.value)


class TestRun:
    def test_check_nonfree(self):
        res = run(parse_config(NOT_FREE), timing=False)["result"]
        assert res["untwisted"] is False
        assert res["witness"]["sigma"] == "(-,-)" and res["witness"]["vector"] == [-2, 3]

    def test_necessary_sl3(self):
        cfg = parse_config('{"cartan": "A2", "lambda": [2, 1], "word": [1, 2, 1], "command": "necessary"}')
        res = run(cfg, timing=False)["result"]
        assert res["cond2"] is False and res["cond2_violations"] == [1]

    def test_lattice_point(self):
        res = run(parse_config('{"n": 1, "c": [], "ell": [0], "command": "lattice"}'), timing=False)["result"]
        assert res["points"] == [{"x": [0], "sign": 1}] and res["count"] == 1

    def test_rep_echo_matches_reference_tables(self):
        report = run(parse_config(A3_CASE), timing=False)
        assert canonical_rows(report["spec"]["c_rows"]) == A3_TABLE
        assert canonical_rows([report["spec"]["ell"]]) == A3_ELL
        cfg = parse_config('{"cartan": "A2", "lambda": [2, 1], "word": [1, 2, 1], "command": "check"}')
        report = run(cfg, timing=False)
        assert canonical_rows(report["spec"]["c_rows"]) == SL3_TABLE
        assert canonical_rows([report["spec"]["ell"]]) == SL3_ELL

    def test_rep_only_commands(self):
        with pytest.raises(ConfigError):
            run(parse_config('{"n": 1, "c": [], "ell": [0], "command": "character"}'))

    def test_timing_field(self):
        assert "timing" in run(parse_config(NOT_FREE))
        assert "timing" not in run(parse_config(NOT_FREE), timing=False)

    def test_no_floats(self):
        text = dumps(run(parse_config('{"n": 2, "c": [[1, 2, 1]], "ell": [3, 5], "grid_denom": 2, "command": "check"}'), timing=False))
        assert "." not in text.replace('"0.1.0"', "")


class TestMain:
    def test_stdin(self, monkeypatch, capsys):
        code, out, _ = run_cli(monkeypatch, capsys, ["check", "--no-timing"], NOT_FREE)
        assert code == EXIT_OK
        assert json.loads(out)["result"]["witness"]["vector"] == [-2, 3]

    def test_out_file(self, tmp_path, monkeypatch, capsys):
        path = tmp_path / "r.json"
        code, out, _ = run_cli(monkeypatch, capsys, ["check", "--out", str(path)], NOT_FREE)
        assert code == EXIT_OK and out == ""
        assert json.loads(path.read_text())["command"] == "check"

    def test_invalid(self, monkeypatch, capsys):
        code, _, err = run_cli(monkeypatch, capsys, ["check"], '{"n": 2, "c": [[2, 1, 5]], "ell": [1, 1]}')
        assert code == EXIT_INVALID and "i < j" in err

    def test_command_conflict(self, monkeypatch, capsys):
        code, _, _ = run_cli(monkeypatch, capsys, ["lattice"], NOT_FREE)
        assert code == EXIT_INVALID

    def test_unknown_command(self, monkeypatch, capsys):
        code, _, _ = run_cli(monkeypatch, capsys, ["explode"], NOT_FREE)
        assert code == EXIT_INVALID

    def test_missing_file(self, monkeypatch, capsys, tmp_path):
        code, _, _ = run_cli(monkeypatch, capsys, ["check", "--config", str(tmp_path / "none.json")])
        assert code == EXIT_INVALID

    def test_capacity(self, monkeypatch, capsys):
        code, _, err = run_cli(monkeypatch, capsys, ["lattice", "--point-cap", "3"], '{"n": 2, "c": [[1, 2, 1]], "ell": [3, 5]}')
        assert code == EXIT_CAPACITY and "3" in err

    def test_capacity_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("TWISTCUBE_POINT_CAP", "3")
        code, _, _ = run_cli(monkeypatch, capsys, ["lattice"], '{"n": 2, "c": [[1, 2, 1]], "ell": [3, 5]}')
        assert code == EXIT_CAPACITY

    def test_overflow(self, monkeypatch, capsys):
        big = 2**62
        code, _, _ = run_cli(monkeypatch, capsys, ["cartier"], f'{{"n": 2, "c": [[1, 2, {big}]], "ell": [{big}, {big}]}}')
        assert code == EXIT_OVERFLOW

    def test_inconsistency(self, monkeypatch, capsys):
        def broken(*args, **kwargs):
            raise InconsistencyError("checks disagree")

        monkeypatch.setattr("twistcube.cli.is_untwisted", broken)
        code, _, err = run_cli(monkeypatch, capsys, ["check"], NOT_FREE)
        assert code == EXIT_INCONSISTENT and "inconsistency" in err


@pytest.mark.parametrize("name,command,config", cases(), ids=[c[0] for c in cases()])
def test_golden(tmp_path, name, command, config):
    out = tmp_path / "report.json"
    assert render(command, config, out) == EXIT_OK
    assert out.read_bytes() == (EXPECTED / f"{name}.json").read_bytes()


def test_vector_record():
    assert dump_record(vector_record()) == VECTOR_RECORD.read_text()
