import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"

_acceptance_lines = []


def record_acceptance(number, title, passed, detail=""):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def xyz_text():
    def read(name):
        return (DATA / name).read_text()
    return read
