import numpy as np
import pytest

from rspace.fixtures import Q3, ket, span, superpose, w_state
from rspace.reduced import reduce


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def w_image():
    return reduce(span([w_state()]), Q3, 2)


def image(labels, dims=Q3, k=2):
    """Reduced vector of the span of the given basis kets or vectors."""
    vecs = [ket(x, dims) if isinstance(x, str) else x for x in labels]
    return reduce(span(vecs), dims, k)



# PASS/FAIL lines recorded by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
