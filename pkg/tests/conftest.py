import numpy as np
import pytest
from hypothesis import settings, strategies as st

from btl.core import EXTENDED_INT, PM_ONE, BFunc

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def pm_functions(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=1 << n, max_size=1 << n))
    return BFunc(n, PM_ONE, np.where(bits, 1, -1))


@st.composite
def int_functions(draw, min_n=0, max_n=6, lo=-4, hi=4):
    n = draw(st.integers(min_n, max_n))
    vals = draw(st.lists(st.integers(lo, hi), min_size=1 << n, max_size=1 << n))
    return BFunc(n, EXTENDED_INT, vals)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
