import io
import json
import os
import subprocess
import sys

import pytest

from k3lab.cli import EXIT_BUDGET, EXIT_CONFIG, EXIT_PRECONDITION, EXIT_USAGE, build_parser, run
from k3lab.config import from_matrix, humbert_configuration


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def cli(*argv, env=None):
    e = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "k3lab.cli", *argv], capture_output=True, text=True, env=e)


def test_info_json():
    code, text = call("info", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["ok"] and doc["command"] == "info"
    r = doc["results"]
    assert r["rank"] == 15 and r["discriminant"] == [2, 2, 2, 2, 16] and r["fragments"] == 16


def test_json_is_byte_identical_across_runs():
    assert call("strata", "--json")[1] == call("strata", "--json")[1]
    a = cli("info", "--json", env={"K3LAB_THREADS": "1"}).stdout
    b = cli("info", "--json", env={"K3LAB_THREADS": "3"}).stdout
    assert a == b and a


def test_curves_json_counts():
    code, text = call("curves", "--max-degree", "4", "--json")
    assert code == 0
    assert json.loads(text)["results"]["counts"] == {"1": 24, "2": 9, "3": 0, "4": 72}


def test_pencils_single_type():
    code, text = call("pencils", "--type", "A11", "--json")
    rows = json.loads(text)["results"]
    assert code == 0 and rows[0]["type"] == "A11" and rows[0]["total"] == 48
    assert [o["size"] for o in rows[0]["orbits"]] == [48]


def test_pencils_unknown_type():
    assert call("pencils", "--type", "F4")[0] == EXIT_CONFIG


def test_discriminant_text():
    code, text = call("discriminant")
    assert code == 0 and "orders: [2, 2, 2, 2, 16]" in text


def test_config_substitution(tmp_path):
    p = tmp_path / "g.json"
    humbert_configuration().save(p)
    code, text = call("info", "--config", str(p), "--json")
    assert code == 0 and json.loads(text)["results"]["rank"] == 15


def test_missing_fragment_is_a_precondition_failure(tmp_path, capsys):
    p = tmp_path / "hex.json"
    from_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]]).save(p)
    code, _ = call("info", "--config", str(p))
    assert code == EXIT_PRECONDITION
    assert "H undefined" in capsys.readouterr().err


def test_malformed_config(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"alpha": []')
    assert call("info", "--config", str(p))[0] == EXIT_CONFIG
    assert call("info", "--config", str(tmp_path / "missing.json"))[0] == EXIT_CONFIG


def test_unknown_flag_and_command():
    assert cli("info", "--frobnicate").returncode == EXIT_USAGE
    assert cli("frobnicate").returncode == EXIT_USAGE
    assert cli().returncode == EXIT_USAGE


def test_bad_thread_variable():
    r = cli("info", env={"K3LAB_THREADS": "zero"})
    assert r.returncode == EXIT_CONFIG and "K3LAB_THREADS" in r.stderr


def test_census_budget_exit():
    code, _ = call("census", "--budget", "2")
    assert code == EXIT_BUDGET


def test_parser_lists_every_command():
    choices = build_parser()._subparsers._group_actions[0].choices
    assert set(choices) == {"info", "discriminant", "symmetry", "curves", "pencils", "extend", "strata", "census", "verify"}


@pytest.mark.slow
def test_verify_all_reference_checks_exit_zero():
    code, text = call("verify", "paper", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["ok"]
    assert doc["verdicts"] and all(v["ok"] for v in doc["verdicts"])
