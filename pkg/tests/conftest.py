import pytest

import support


@pytest.fixture
def T1():
    return support.ex1()


@pytest.fixture
def T2():
    return support.ex2()


@pytest.fixture
def order1(T1):
    return support.fixture_order(T1, "ex1_order.json")


@pytest.fixture
def order2(T2):
    return support.fixture_order(T2, "ex2_order.json")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.pytest_terminal_summary_lines():
        terminalreporter.write_line(line)
