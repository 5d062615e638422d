import pytest

from p3hardcore.pipeline import run_pipeline


@pytest.fixture(scope="session")
def sun8():
    return run_pipeline("sun", 8)


@pytest.fixture(scope="session")
def sun10():
    return run_pipeline("sun", 10)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
