import numpy as np
import pytest

from dirac_aim.spectrum import ProblemConfig


def central_second(f, x, h=1e-4):
    return (f(x + h) - 2 * f(x) + f(x - h)) / h**2


def central_first(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2 * h)


def sign_changes(values):
    v = np.asarray(values)
    v = v[v != 0]
    return int(np.sum(np.sign(v[1:]) != np.sign(v[:-1])))


@pytest.fixture
def table1_config():
    """D = 5, q = 1, n = 1 with every angular number 1 and a_i = b_i = 2."""
    return ProblemConfig(M=5.0, V0=6.0, V1=-1.0, alpha=0.5, q=1.0, r_e=0.1671, D=5, n=1,
                         a=(2.0,) * 4, b=(2.0,) * 4, n_l=(1,) * 4)


@pytest.fixture
def swave_config():
    """A three-dimensional s-wave well with genuine bound states for n = 0..3."""
    return ProblemConfig(M=5.0, V0=20.0, V1=-3.0, alpha=0.5, q=1.0, r_e=1.0, D=3, n=0, ell_override=0.0)


CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
