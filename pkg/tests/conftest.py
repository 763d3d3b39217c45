import pytest

ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store one acceptance line: ``record(number, passed, detail)``."""

    def _record(num, passed, detail):
        ACCEPTANCE[num] = (bool(passed), detail)
        print(f"criterion {num}: {'PASS' if passed else 'FAIL'}  {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
