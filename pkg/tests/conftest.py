import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=50, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if not acceptance_log.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_log.LINES:
        terminalreporter.write_line(line)
