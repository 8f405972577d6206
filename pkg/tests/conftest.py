import pytest

from carlitz_forms.algebra import PolyA, ctx_for_q

ACCEPTANCE_LINES = []


@pytest.fixture
def f3():
    return ctx_for_q(3)


@pytest.fixture
def f2():
    return ctx_for_q(2)


@pytest.fixture
def theta3(f3):
    return PolyA.theta(f3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
