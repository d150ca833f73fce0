from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# one line per acceptance criterion, filled in by tests/test_acceptance.py
CRITERIA_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA_LINES):
        terminalreporter.write_line(CRITERIA_LINES[number])
