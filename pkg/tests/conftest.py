from fractions import Fraction
import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from g2torsion.exterior import KForm

settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 5))


def matrices(n: int = 6):
    return st.lists(rationals, min_size=n * n, max_size=n * n).map(
        lambda xs: np.array(xs, dtype=object).reshape(n, n)
    )


@st.composite
def forms(draw, dim: int, degree: int | None = None, max_degree: int | None = None):
    k = degree if degree is not None else draw(st.integers(0, max_degree if max_degree is not None else dim))
    keys = list(itertools.combinations(range(1, dim + 1), k))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=min(len(keys), 8), unique=True)) if keys else []
    return KForm(dim, k, {key: draw(rationals) for key in chosen})


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
