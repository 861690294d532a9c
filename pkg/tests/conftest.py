import pytest

from hullnorm import subsets as ss
from hullnorm.hull import Poset, make_builtin
from hullnorm.monoid import cyclic


def chain(n):
    return Poset(n, lambda a, b: a <= b)


@pytest.fixture
def z8():
    return cyclic(8)


@pytest.fixture
def z8_base():
    return [ss.mask([0, 1, 2, 6, 7]), ss.mask([0, 1, 7]), ss.mask([0])]


@pytest.fixture
def z8_string(z8, z8_base):
    from hullnorm.zerotop import QString
    return QString(z8, tuple(z8_base[:2]), z8_base[2])


@pytest.fixture
def z8_powerset(z8):
    return make_builtin("powerset", z8)
