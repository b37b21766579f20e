import pytest

# criterion lines recorded by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
        print(line)
        ACCEPTANCE_LINES.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
