import json

from voacheck.cli import main


def test_ope(capsys):
    assert main(["ope", "b", "c"]) == 0
    assert capsys.readouterr().out.strip() == "(z-w)^-1: 1"


def test_parse_error_is_usage(capsys):
    assert main(["ope", "::", "T"]) == 2
    assert "empty normal product" in capsys.readouterr().err


def test_commutator(capsys):
    assert main(["commutator", "T", "2", "T", "-2", "-D", "3"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_rewrite(capsys):
    assert main(["rewrite", "2", "0", "-D", "3"]) == 0
    assert "1/2 d^1 T + Wt" in capsys.readouterr().out


def test_character_json(capsys):
    assert main(["character", "--space", "Fbar^0", "-D", "3", "--format", "json", "--against", "barred"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] and {"charge": 0, "level": 2, "p_exponent": 0, "coefficient": "1"} in out["series"]


def test_verify_exit_codes(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "characters", "-D", "5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["schema"] == "voa-report/1"
    assert main(["verify", "--suite", "w3", "-D", "2", "-M", "1", "--corrupt-contractions"]) == 1
    assert main(["verify", "--suite", "w3", "-D", "50"]) == 2
