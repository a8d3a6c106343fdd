from fractions import Fraction

import pytest

from gradedjets import Signature, var, vol


@pytest.fixture
def s1():
    return Signature(1, (("y", 0),))


@pytest.fixture
def s1odd():
    return Signature(1, (("c", 1),))


@pytest.fixture
def s2():
    return Signature(2, (("y", 0),))


@pytest.fixture
def mixed():
    return Signature(2, (("y", 0), ("c", 1), ("u", 0)))


@pytest.fixture
def free_lagrangian(s1):
    return Fraction(1, 2) * var(s1, "y", [0]) ** 2 * vol(s1)

