import json
from pathlib import Path

import pytest

from hasse_forge import spec_from_json

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"


def load(name):
    return spec_from_json(json.loads((SPEC_DIR / name).read_text()))


@pytest.fixture
def spec_dir():
    return SPEC_DIR


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
