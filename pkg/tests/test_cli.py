from __future__ import annotations

import json

import pytest

from adq.cli import main
from adq.formats import fixtures_dir


def fixture_path(name: str) -> str:
    return str(fixtures_dir() / f"{name}.json")


def test_debug_insort_scripted(capsys):
    code = main(["debug", fixture_path("insort"), "--strategy", "td",
                 "--script", "NO,YES,NO,YES"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Starting Debugging Session..." in out
    assert "(1) insort [1,3] = [3,1]? NO" in out
    assert "(2) insort [3] = [3]? YES" in out
    assert "(3) insert 1 [3] = [3,1]? NO" in out
    assert "(4) insert 1 [] = [1]? YES" in out
    assert "Bug found in node: insert 1 [3] = [3,1]" in out


def test_debug_figure4_all_wrong_reports_leaf(capsys):
    code = main(["debug", fixture_path("figure4"), "--strategy", "dqo",
                 "--script", "NO,NO,NO"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Bug found in node: w1b" in out


def test_debug_all_yes_reports_no_bug(capsys):
    code = main(["debug", fixture_path("figure4"), "--strategy", "dqo",
                 "--script", "YES,YES"])
    out = capsys.readouterr().out
    assert code == 0
    assert "No bug has been found" in out


def test_debug_script_exhaustion_fails(capsys):
    code = main(["debug", fixture_path("figure4"), "--strategy", "dqo",
                 "--script", "NO"])
    err = capsys.readouterr().err
    assert code == 2
    assert "script exhausted" in err


def test_debug_interactive_reprompts(capsys, monkeypatch):
    answers = iter(["maybe", "no", "yes", "yes"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(answers))
    code = main(["debug", fixture_path("figure3_chain"), "--strategy", "dqo"])
    out = capsys.readouterr().out
    assert code == 0
    assert "please answer YES or NO" in out


def test_debug_case_insensitive_script(capsys):
    code = main(["debug", fixture_path("figure4"), "--strategy", "dqo",
                 "--script", "yes,Y"])
    assert code == 0
    assert "No bug has been found" in capsys.readouterr().out


def test_check_figure7(capsys):
    code = main(["check", fixture_path("figure7")])
    out = capsys.readouterr().out
    assert code == 0
    assert "optimal set: 1 (12)" in out
    assert "dqo: 1 (12)" in out
    assert "relation check: no violations" in out


def test_check_reports_skips_on_variable_weights(tmp_path, capsys):
    doc = {
        "name": "var",
        "root": 0,
        "nodes": [
            {"id": 0, "label": "a", "weight": 1.0, "children": [1]},
            {"id": 1, "label": "b", "weight": 4.0, "children": []},
        ],
    }
    path = tmp_path / "var.json"
    path.write_text(json.dumps(doc))
    code = main(["check", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "dqo: skipped" in out
    assert "dqo-general:" in out


def test_gen_deterministic_files(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["gen", "--nodes", "5", "--seed", "7", "--out", str(a)]) == 0
    assert main(["gen", "--nodes", "5", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_env_seed(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ADQ_SEED", "99")
    assert main(["gen", "--nodes", "4"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--nodes", "4", "--seed", "99"]) == 0
    assert capsys.readouterr().out == first


def test_gen_decimal_weights(tmp_path):
    out = tmp_path / "w.json"
    assert main(["gen", "--nodes", "20", "--weights", "0.1:10", "--seed", "3",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert all(0.1 <= node["weight"] <= 10.0 for node in doc["nodes"])


def test_bench_two_strategies_csv(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code = main(["bench", fixture_path("figure3_chain"), fixture_path("figure4"),
                 "--strategies", "dqo,dqh", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("benchmark,nodes,strategy,scenarios,avg_questions,avg_pct")
    assert len(lines) == 1 + 4  # 2 fixtures x 2 strategies
    assert "figure3_chain,3,dqo,4,2.00,66.67,2/1" in lines


def test_bench_directory_input(tmp_path, capsys):
    code = main(["bench", str(fixtures_dir()), "--strategies", "dqo"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("\n") == 1 + 5  # header + one row per fixture


def test_bad_file_reports_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"root": 0, "nodes": []}')
    code = main(["check", str(path)])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_strategy_rejected(capsys):
    code = main(["debug", fixture_path("figure4"), "--strategy", "zigzag", "--script", "YES"])
    assert code == 2
    assert "unknown strategy" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
