import json

import pytest

from app.main import main
from app.models.run_config import Command
from tests.helpers import fixture_path

GOLDEN = fixture_path("golden")

RUNS = {
    "validate": ["--input", fixture_path("A1.json")],
    "diamond": ["--input", fixture_path("A1.json")],
    "basis": ["--input", fixture_path("A1.json")],
    "resolution": ["--input", fixture_path("truncated_x2.json"), "--max-degree", 2],
    "hh": ["--input", fixture_path("truncated_x2.json"), "--degree", 2, "--max-degree", 3],
    "lift": [
        "--input",
        fixture_path("truncated_x2.json"),
        "--cocycle",
        fixture_path("x2_eta.json"),
        "--max-degree",
        3,
    ],
    "bracket": [
        "--input",
        fixture_path("truncated_x2.json"),
        "--left",
        fixture_path("x2_eta.json"),
        "--right",
        fixture_path("x2_chi.json"),
        "--max-degree",
        3,
    ],
    "mc-check": [
        "--input",
        fixture_path("truncated_x2.json"),
        "--cocycle",
        fixture_path("x2_chi.json"),
        "--max-degree",
        3,
    ],
    "deform": ["--input", fixture_path("truncated_x2.json")],
}


def stdout_of(capsys, command):
    code = main([command] + [str(a) for a in RUNS[command]])
    return code, capsys.readouterr().out


@pytest.mark.parametrize("command", sorted(RUNS))
def test_report_matches_golden(capsys, command):
    code, out = stdout_of(capsys, command)
    assert code == 0
    expected = json.loads((GOLDEN / f"{command}.json").read_text())
    assert json.loads(out) == expected


@pytest.mark.parametrize("command", sorted(RUNS))
def test_reports_are_byte_identical_across_runs(capsys, command):
    _, first = stdout_of(capsys, command)
    _, second = stdout_of(capsys, command)
    assert first == second


def test_every_command_has_a_golden():
    assert sorted(c.value for c in Command) == sorted(RUNS)
    assert sorted(p.stem for p in GOLDEN.glob("*.json")) == sorted(RUNS)
