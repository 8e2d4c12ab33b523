import pytest

from flagcone.kahler import anticanonical_potential


@pytest.fixture(scope="session")
def cp1():
    return anticanonical_potential(1, set(), ell=1)


@pytest.fixture(scope="session")
def cp1_l2():
    return anticanonical_potential(1, set(), ell=2)


@pytest.fixture(scope="session")
def cp2():
    return anticanonical_potential(2, {2}, ell=1)


@pytest.fixture(scope="session")
def cp2_l3():
    return anticanonical_potential(2, {2}, ell=3)


@pytest.fixture(scope="session")
def gr24():
    return anticanonical_potential(3, {1, 3}, ell=1)


@pytest.fixture(scope="session")
def gr24_l4():
    return anticanonical_potential(3, {1, 3}, ell=4)


@pytest.fixture(scope="session")
def su3t2():
    return anticanonical_potential(2, set(), ell=1)


@pytest.fixture(scope="session")
def su3t2_l2():
    return anticanonical_potential(2, set(), ell=2)
