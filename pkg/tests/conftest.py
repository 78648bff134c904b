import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from sklyanin4.sklyanin import make_params, q_relations, qtilde_relations

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def p():
    return make_params()


@pytest.fixture(scope="session")
def Q(p):
    return q_relations(p)


@pytest.fixture(scope="session")
def T(p):
    return qtilde_relations(p)


@pytest.fixture(scope="session")
def p35():
    return make_params(3, 5)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
