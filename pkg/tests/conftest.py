from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_fractions = st.builds(
    Fraction, st.integers(-20, 20), st.integers(1, 12)
)


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = sorted(config._acceptance_lines)
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)
