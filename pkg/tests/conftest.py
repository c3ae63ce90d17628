import pytest

from mvw import catalog
from mvw.monoid_core import enumerate_monoids

_CRITERIA = {}


def record_criterion(number, text, passed):
    _CRITERIA[number] = (text, passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        text, passed = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number}: {text}")


@pytest.fixture(scope="session")
def small_monoids():
    """Every monoid of order <= 4 up to isomorphism (1 + 2 + 7 + 35)."""
    return [m for k in range(1, 5) for m in enumerate_monoids(k)]


@pytest.fixture(scope="session")
def tiny_monoids():
    return [m for k in range(1, 4) for m in enumerate_monoids(k)]


@pytest.fixture
def u1():
    return catalog.u1()


@pytest.fixture
def z2():
    return catalog.z2()


@pytest.fixture
def b2():
    return catalog.b2()


@pytest.fixture
def rz():
    return catalog.right_zero_one()


@pytest.fixture
def lz():
    return catalog.left_zero_one()
