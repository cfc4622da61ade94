import pytest

from oscbasis import Frequency, build_basis, build_tables


@pytest.fixture(scope="session")
def freq20():
    return Frequency.exact(20)


@pytest.fixture(scope="session")
def tables20(freq20):
    # n_max 17 covers basis construction up to N = 16
    return build_tables(freq20, 17)


@pytest.fixture(scope="session")
def basis20(freq20, tables20):
    return build_basis(freq20, 12, tables20)
