import pytest

from voabimod.voa import heisenberg, ising, virasoro


@pytest.fixture(scope="session")
def heis():
    return heisenberg(24)


@pytest.fixture(scope="session")
def isg():
    return ising(24)


@pytest.fixture(scope="session")
def vir_half():
    return virasoro("1/2", 24)
