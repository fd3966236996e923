import pytest

CRITERIA = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[CRITERIA] = []


@pytest.fixture
def record_criterion(request):
    """Log one PASS/FAIL line for an acceptance criterion; returns the verdict."""

    def record(number, title, passed, elapsed, limit=None, detail=""):
        in_time = limit is None or elapsed < limit
        ok = bool(passed) and in_time
        budget = f" (budget {limit:g}s)" if limit is not None else ""
        timing = f"{elapsed:.2f}s{budget}{'' if in_time else ' OVER BUDGET'}"
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} [{timing}] {detail}".rstrip()
        request.config.stash[CRITERIA].append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = sorted(config.stash.get(CRITERIA, []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)
