import os

from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])

settings.register_profile("thorough", parent=settings.get_profile("repo"), max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

# ACCEPTANCE lines reported by test_acceptance.py; pytest captures stdout of
# passing tests, so they are repeated in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
