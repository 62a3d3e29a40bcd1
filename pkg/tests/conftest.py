from pathlib import Path

import pytest

from cltwe import clt

PUZZLES = Path(__file__).resolve().parent.parent / "puzzles"


@pytest.fixture(scope="module")
def small_state():
    params = clt.derive_params(12, 4)
    state, pp, _ = clt.instance_gen(params, b"fixture-seed")
    return state, pp


@pytest.fixture
def puzzles():
    return PUZZLES


VERDICTS = []


@pytest.fixture
def verdict():
    """Record and print the one-line outcome of an acceptance criterion."""
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        VERDICTS.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
