import functools

import pytest

from ortho_sing.measure import GeneralizedJacobiMeasure, SingularPoint, stieltjes_recurrence

ACCEPTANCE_LINES = []


def legendre():
    return GeneralizedJacobiMeasure(0.0, 0.0)


def chebyshev():
    return GeneralizedJacobiMeasure(-0.5, -0.5)


def abs_x(lam=1.0):
    return GeneralizedJacobiMeasure(0.0, 0.0, (SingularPoint.from_angle(1, 2, lam),))


@functools.lru_cache(maxsize=None)
def cached_recurrence(name, N):
    """Shared recurrence tables; the large ones take seconds to build."""
    measure = {"legendre": legendre, "chebyshev": chebyshev, "abs_x": abs_x}[name]()
    return stieltjes_recurrence(measure, N)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)
