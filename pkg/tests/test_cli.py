"""Golden-file tests for every CLI path.

Regenerate with ``UPDATE_GOLDEN=1 pytest tests/test_cli.py`` after an
intentional output change, then review the diff.
"""

import json
import os
from pathlib import Path

import pytest

from aferbounds.cli import CommandReport, main, parse_tag, run

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"

CASES = {
    "bound_16_5_2": (["bound", "16", "5", "2"], 0),
    "bound_12_3_2": (["bound", "12", "3", "2"], 0),
    "bound_11_4_2_json": (["bound", "11", "4", "2", "--json"], 0),
    "bound_d_override": (["bound", "20", "6", "2", "--d", "8"], 0),
    "construct_frame": (["construct", "0*P[4] + P{T4}"], 0),
    "construct_24_5_12": (["construct", "1*P[5] - P[3]", "--json"], 0),
    "construct_simplex3": (["construct", "1*P[3]"], 0),
    "construct_s_param": (["construct", "(s+1)*P[3] - P{I1}", "--s", "2"], 0),
    "construct_syntax_error": (["construct", "P[4] +"], 1),
    "construct_underflow": (["construct", "P[2] - P{I3}", "--k", "3"], 1),
    "verify_13_5_5": (["verify", "fixtures/G_13_5_5.txt"], 0),
    "verify_mismatch": (["verify", "fixtures/G_13_5_5.txt", "--expect", "[13,5,5;4]"], 2),
    "verify_missing": (["verify", "nowhere/G_1_1_1.txt"], 1),
    "table_k4": (["table", "--k", "4", "--q", "2", "--s-max", "1"], 0),
    "table_k3_long": (["table", "--k", "3", "--s-max", "1", "--long"], 0),
    "table_iv": (["table", "--table", "IV", "--s-max", "1"], 0),
    "afer": (["afer", "7", "3", "4", "7", "10"], 0),
    "afer_db_json": (["afer", "15", "4", "8", "15", "6", "--db", "--json"], 0),
    "afer_bad": (["afer", "7", "3", "5", "7", "10"], 1),
    "usage_unknown": (["frobnicate"], 1),
    "usage_bad_int": (["bound", "x", "5", "2"], 1),
}


def _check_golden(name, text):
    path = GOLDEN / f"{name}.txt"
    if UPDATE or not path.exists():
        path.write_text(text)
    assert text == path.read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys, monkeypatch):
    argv, status = CASES[name]
    monkeypatch.chdir(GOLDEN.parent.parent)
    assert main(argv) == status
    out, err = capsys.readouterr()
    _check_golden(name, out + ("--- stderr ---\n" + err if err else ""))


def test_db_build_and_query(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["db", "build", "--k", "6", "--q", "2", "--n-max", "70", "--out", "dbA"]) == 0
    assert main(["db", "build", "--k", "6", "--q", "2", "--n-max", "70", "--out", "dbB"]) == 0
    for f in sorted((tmp_path / "dbA").iterdir()):
        assert f.read_bytes() == (tmp_path / "dbB" / f.name).read_bytes()
    build_out = capsys.readouterr().out
    assert main(["db", "query", "63", "6", "2", "--dir", "dbA"]) == 0
    assert main(["db", "query", "20", "6", "2", "--dir", "dbA", "--json"]) == 0
    assert main(["db", "query", "500", "6", "2", "--dir", "dbA"]) == 3
    assert main(["db", "query", "63", "6", "2", "--dir", "missing"]) == 1
    out = capsys.readouterr().out
    _check_golden("db_session", build_out + out)
    assert "e_lower 63" in out


def test_bound_with_saved_database(tmp_path, capsys):
    main(["db", "build", "--k", "5", "--n-max", "40", "--out", str(tmp_path)])
    capsys.readouterr()
    assert main(["bound", "16", "5", "2", "--db-dir", str(tmp_path)]) == 0
    assert "combined 30  (L3, case 3)" in capsys.readouterr().out


def test_construct_writes_matrix(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["construct", "1*P[5] - P[3]", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["verify", str(out), "--expect", "[24,5,12;28]"]) == 0
    assert capsys.readouterr().out.strip() == "[24,5,12;28] OK"


def test_report_round_trip():
    rep = run(["bound", "27", "4", "2", "--json"])
    back = CommandReport.from_json(rep.to_json())
    assert back.to_dict() == rep.to_dict()
    assert rep.payload["value"] == 12 and rep.payload["case"] == 4
    assert json.loads(rep.text)["exit_status"] == 0


def test_parse_tag():
    assert parse_tag("[13,5,5;3]") == {"n": 13, "k": 5, "d": 5, "e": 3}
    assert parse_tag("[4, 2, 3]_3") == {"n": 4, "k": 2, "d": 3, "q": 3}
