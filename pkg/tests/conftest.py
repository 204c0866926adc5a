import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line():
    """Record a one-line PASS/FAIL summary for an acceptance criterion."""
    def record(line):
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is not None and rep.when == "call":
        status = "PASS" if rep.passed else "FAIL"
        secs = getattr(rep, "duration", 0.0)
        _ACCEPTANCE_LINES.append(f"criterion {crit.args[0]:>2}: {status}  {crit.args[1]}  ({secs:.2f} s)")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    lines = [l for l in _ACCEPTANCE_LINES if l.startswith("criterion")]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
