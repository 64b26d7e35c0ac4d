from fractions import Fraction

import pytest
from hypothesis import strategies as st

from crosscert.geometry import DeltaSequence


@pytest.fixture
def default_seq():
    return DeltaSequence.default()


def rationals(min_value=-10, max_value=10, max_denominator=1000):
    return st.fractions(min_value=Fraction(min_value), max_value=Fraction(max_value),
                        max_denominator=max_denominator)


@st.composite
def valid_sequences(draw, levels=4):
    """Explicit decreasing sequences with delta_n < 3^-(n+1)."""
    vals = []
    for n in range(levels):
        limit = Fraction(1, 3 ** (n + 1))
        if vals:
            limit = min(limit, vals[-1])
        k = draw(st.integers(2, 9))
        vals.append(limit * Fraction(k - 1, k))
    return DeltaSequence.explicit(vals)


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
