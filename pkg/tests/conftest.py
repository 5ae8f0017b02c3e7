import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record and print one pass/fail line per acceptance criterion."""

    def report(number, ok, summary, seconds):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {summary} ({seconds:.1f} s)"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
