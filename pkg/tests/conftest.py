from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from twocat.builders import CartanData
from twocat.formats import load_bundled_table
from twocat.scalars import FieldSpec, sqrt_field

# property tests run 1000 derandomized cases (fixed seed)
settings.register_profile(
    "fixed",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("fixed")


@pytest.fixture(scope="session")
def a2():
    return load_bundled_table("a2-soergel.tbl")


@pytest.fixture(scope="session")
def b2():
    return load_bundled_table("b2-soergel.tbl")


@pytest.fixture(scope="session")
def i25():
    return load_bundled_table("i2-5-soergel.tbl")


@pytest.fixture(scope="session")
def q2():
    return sqrt_field(2)


@pytest.fixture(scope="session")
def qomega():
    return FieldSpec.quadratic(1, -1)


@pytest.fixture(scope="session")
def dual():
    return CartanData(((2,),), True)


@pytest.fixture(scope="session")
def zz2():
    return CartanData(((2, 1), (1, 2)), True)


@pytest.fixture(scope="session")
def zz3():
    return CartanData(((2, 1, 0), (1, 2, 1), (0, 1, 2)), True)


HALF = Fraction(1, 2)


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
