import numpy as np
import pytest

from radialmra.filters import shannon_filter
from radialmra.mra import extract_filter, hat_spline, meyer, orthogonalize, shannon


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def shannon_phi():
    return shannon()


@pytest.fixture(scope="session")
def shannon_G():
    return shannon_filter(64)


@pytest.fixture(scope="session")
def meyer_phi():
    return meyer()


@pytest.fixture(scope="session")
def meyer_G(meyer_phi):
    return extract_filter(meyer_phi, n_coeffs=64)


@pytest.fixture(scope="session")
def hat_phi():
    return hat_spline()


@pytest.fixture(scope="session")
def hat_star(hat_phi):
    return orthogonalize(hat_phi)


# acceptance lines, printed in the terminal summary so they survive output capture
ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    def record(number, title, passed, detail=""):
        ACCEPTANCE[number] = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        print(ACCEPTANCE[number])
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
