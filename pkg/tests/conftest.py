import pytest

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(label, ok, detail)``."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        _CRITERIA.append((label, ok, detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
