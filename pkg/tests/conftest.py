import pytest

from safeindex import default_lexicon_set

# One line per acceptance criterion, printed in the terminal summary so
# the pass/fail status is visible even with output capture on.
acceptance_lines: list[str] = []


def record_criterion(line: str) -> None:
    acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def lexicons():
    """The synthetic lexicon set shipped with the package."""
    return default_lexicon_set()
