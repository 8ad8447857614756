import json

import pytest

from voacheck import suites
from voacheck.report import SCHEMA, Report


def test_report_determinism_and_order():
    a = Report("x", {"b": 1})
    a.add("z.last", True)
    a.add("a.first", False, "bad", value=[1, 2])
    d = json.loads(a.to_json())
    assert d["schema"] == SCHEMA
    assert [c["id"] for c in d["checks"]] == ["a.first", "z.last"]
    assert a.exit_code == 1
    assert a.to_json() == a.to_json()


def test_config_validation():
    with pytest.raises(ValueError):
        suites.Config(level=40)
    with pytest.raises(ValueError):
        suites.run_suite("nope")


def test_characters_suite_passes():
    r = suites.run_suite("characters", suites.Config(level=6))
    assert r.passed and r.exit_code == 0


def test_negative_control():
    cfg = suites.Config(level=2, modes=1, corrupt_contractions=True)
    r = suites.run_suite("w3", cfg)
    assert not r.passed
    assert not r.get("w3.ope.TT.pole2").passed
    # the table is restored afterwards
    assert suites.run_suite("w3", suites.Config(level=2, modes=1)).passed


def test_lemma3_negative_control_not_served_from_cache():
    cfg = suites.Config(level=2, modes=1)
    assert suites.run_suite("lemma3", cfg).get("lemma3.rewrite.i=2.j=1").passed
    bad = suites.run_suite("lemma3", suites.Config(level=2, modes=1, corrupt_contractions=True))
    assert not bad.get("lemma3.rewrite.i=2.j=1").passed
