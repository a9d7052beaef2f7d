import pytest
from hypothesis import HealthCheck, settings

from planedescent.curves import build_huggins_form, build_scaled_form
from planedescent.hessian import hessian_group

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def huggins():
    return build_huggins_form(2, 13)


@pytest.fixture(scope="session")
def scaled():
    return build_scaled_form(2, 13, 3)


@pytest.fixture(scope="session")
def hess(huggins):
    return hessian_group(huggins.spec)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
