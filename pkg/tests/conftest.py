import time

import pytest

_RESULTS: list[tuple[str, bool, str]] = []
_START = time.perf_counter()


@pytest.fixture
def criterion():
    """Record one acceptance line: call with (name, passed, detail)."""

    def record(name: str, passed: bool, detail: str = "") -> bool:
        _RESULTS.append((name, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _RESULTS:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
    terminalreporter.write_line(f"session wall time {time.perf_counter() - _START:.1f} s (budget 60 s)")
