import pathlib

import pytest

from whirling.words import FamilySpec, make_word

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def word(family: FamilySpec, text: str):
    return family.word([int(c) for c in text])


def park_word(text: str):
    return make_word(len(text), len(text), [int(c) for c in text])


def fixture_lines(name: str) -> list[str]:
    """Non-comment lines of a golden file."""
    text = (FIXTURES / name).read_text()
    return [line for line in text.splitlines() if not line.startswith("#")]


@pytest.fixture
def fixture_text():
    return lambda name: "\n".join(fixture_lines(name)) + "\n"


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2])):
        terminalreporter.write_line(line)
