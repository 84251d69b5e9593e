import itertools

import pytest

from facticity.exact import enumerate_codes
from facticity.microvm import Budget

ACCEPT_BUDGET = Budget(max_steps=4096, max_output=32)


def all_bits(max_len: int):
    for n in range(max_len + 1):
        for t in itertools.product("01", repeat=n):
            yield "".join(t)


@pytest.fixture(scope="session")
def table18():
    return enumerate_codes(18, ACCEPT_BUDGET)


@pytest.fixture(scope="session")
def table12():
    return enumerate_codes(12, Budget(max_steps=4096, max_output=32))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(name, passed, detail)."""

    def record(name: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
