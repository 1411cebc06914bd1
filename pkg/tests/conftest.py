import pytest
from mpmath import mp

from ftr.numeric import DEFAULT_PRECISION, bundled, set_precision


@pytest.fixture(autouse=True)
def _precision():
    set_precision(DEFAULT_PRECISION)
    yield
    set_precision(DEFAULT_PRECISION)


@pytest.fixture(scope="session")
def modern():
    return bundled("modern")


@pytest.fixture(scope="session")
def vintage():
    return bundled("paper-era-1946")


def close(a, b, rel):
    """Relative closeness on plain mpmath numbers."""
    a, b = mp.mpf(a), mp.mpf(b)
    return abs(a - b) <= rel * abs(b)
