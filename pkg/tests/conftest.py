import pytest
from hypothesis import HealthCheck, settings

from goldman_lie import one_holed_torus, pants

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def torus():
    return one_holed_torus(4.0)


@pytest.fixture(scope="session")
def pants_model():
    return pants()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
