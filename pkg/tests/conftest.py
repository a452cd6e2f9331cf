import json
from pathlib import Path

import pytest

from gotzmann.borel import MonomialIdeal

DATA = Path(__file__).parent / "data"


@pytest.fixture
def J3():
    return MonomialIdeal.parse(["x", "y", "z"], ["x^2", "x*y", "y^2"])


@pytest.fixture
def L3():
    return MonomialIdeal.parse(["x", "y", "z"], ["x", "y^3"])


@pytest.fixture
def I4():
    return MonomialIdeal.parse(["x", "y", "z", "w"], ["x^2", "x*y", "x*z", "y^3"])


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)
    return write


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("acceptance")
    label = marker.args[0] if marker and marker.args else request.node.name
    ACCEPTANCE[label] = "FAIL"

    def passed(detail=""):
        ACCEPTANCE[label] = "PASS" + (f"  ({detail})" if detail else "")
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        line = f"{label}: {ACCEPTANCE[label]}"
        terminalreporter.write_line(line)
