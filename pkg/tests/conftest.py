from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.fractions(min_value=-9, max_value=9, max_denominator=5)
nonzero_fractions = small_fractions.filter(lambda x: x != 0)


def distinct_roots(min_size: int, max_size: int):
    return st.lists(nonzero_fractions, min_size=min_size, max_size=max_size, unique=True)


@pytest.fixture
def roots123():
    return [Fraction(1), Fraction(2), Fraction(3)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS, key=lambda k: (int(k.split()[1]), k)):
            terminalreporter.write_line(RESULTS[key])
