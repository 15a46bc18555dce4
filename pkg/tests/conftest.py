import pytest

from loopcard.catalog import named_group


@pytest.fixture(scope="session")
def S3():
    return named_group("S3")


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.SUMMARY:
            terminalreporter.write_line(line)
