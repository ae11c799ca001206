import numpy as np
import pytest
from hypothesis import strategies as st

from divbound import Distribution

# the two-point pair used throughout: ratios are exactly 2 and 2/3
WITNESS_P = (0.5, 0.5)
WITNESS_Q = (0.25, 0.75)


@pytest.fixture
def witness():
    return Distribution(WITNESS_P), Distribution(WITNESS_Q)


@st.composite
def distributions(draw, n=None, min_n=2, max_n=8, floor=1e-3):
    size = n if n is not None else draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.floats(floor, 1.0), min_size=size, max_size=size))
    arr = np.asarray(raw)
    return Distribution(arr / arr.sum())


@st.composite
def pairs(draw, min_n=2, max_n=8, floor=1e-3):
    n = draw(st.integers(min_n, max_n))
    return draw(distributions(n=n, floor=floor)), draw(distributions(n=n, floor=floor))


def random_pairs(count, dims=(2, 4, 8, 32), seed=0, concentration=1.0):
    """Deterministic list of Dirichlet pairs cycling through ``dims``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = dims[i % len(dims)]
        p = np.maximum(rng.dirichlet(np.full(n, concentration)), 1e-12)
        q = np.maximum(rng.dirichlet(np.full(n, concentration)), 1e-12)
        out.append((Distribution(p / p.sum()), Distribution(q / q.sum())))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
