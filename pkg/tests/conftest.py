import pytest

ACCEPTANCE = []


@pytest.fixture
def record():
    """Record one acceptance line: record(criterion, label, passed, detail)."""

    def _record(criterion, label, passed, detail=""):
        ACCEPTANCE.append((criterion, label, bool(passed), detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion, label, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        tr.write_line(f"{'PASS' if passed else 'FAIL'} criterion {criterion}: {label}"
                      + (f" ({detail})" if detail else ""))
