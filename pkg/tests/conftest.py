import pytest

ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record (criterion, passed, detail) for the end-of-run summary."""
    def record(n, passed, detail):
        ACCEPTANCE[n] = (bool(passed), detail)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
