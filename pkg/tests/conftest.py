import pytest

from clannish.examples import (
    alternating_group_quotient,
    frobenius_pair,
    gelfand_ponomarev,
    one_loop_pair,
)
from clannish.fields import make_field


@pytest.fixture(scope="session")
def F2():
    return make_field(2, 1)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def F5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def E1():
    return one_loop_pair()


@pytest.fixture(scope="session")
def GP2():
    return gelfand_ponomarev()


@pytest.fixture(scope="session")
def A4():
    return alternating_group_quotient()


@pytest.fixture(scope="session")
def DIEU():
    return frobenius_pair()
