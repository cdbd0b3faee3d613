import pytest

from severi.engine import SeveriEngine
from severi.surface import SurfaceModel


@pytest.fixture(scope="session")
def engine():
    """One warm engine shared by the unit tests (values are deterministic)."""
    return SeveriEngine()


@pytest.fixture(scope="session")
def f0():
    return SurfaceModel.hirzebruch(0)


@pytest.fixture(scope="session")
def f1():
    return SurfaceModel.hirzebruch(1)


@pytest.fixture(scope="session")
def f2():
    return SurfaceModel.hirzebruch(2)


@pytest.fixture(scope="session")
def p2():
    return SurfaceModel.plane_line()
