from pathlib import Path

import pytest

from coxlimit.catalog import NAMED

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def pentagon():
    return NAMED["pentagon"]()


@pytest.fixture(scope="session")
def dinf():
    return NAMED["dinf"]()


@pytest.fixture(scope="session")
def a2():
    return NAMED["a2"]()


@pytest.fixture(scope="session")
def affine_a2():
    return NAMED["affine_a2"]()


@pytest.fixture(scope="session")
def dodecahedron():
    return NAMED["dodecahedron"]()
