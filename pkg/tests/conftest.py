import pytest

from randcayley import GeneratorSet, GroupSpec


@pytest.fixture
def group101():
    return GroupSpec(101)


def gs(*gens, mode="directed"):
    return GeneratorSet(tuple(gens), mode)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
