import pytest

from lajet import algebroid as A


@pytest.fixture(scope="session")
def specs():
    return A.examples()


@pytest.fixture(scope="session")
def t1():
    return A.tangent(1)


@pytest.fixture(scope="session")
def solv():
    return A.solvable()
