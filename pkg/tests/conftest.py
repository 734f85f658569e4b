import pytest

from magic24.construct import construct_all
from magic24.incidence import build_24cell, build_cube, build_tesseract
from magic24.labelings import enumerate_parity_binary, ternary_16cell
from magic24.symmetry import orbit_members, symmetry_24cell


@pytest.fixture(scope="session")
def cell24():
    return build_24cell()


@pytest.fixture(scope="session")
def cube():
    return build_cube()


@pytest.fixture(scope="session")
def tesseract():
    return build_tesseract()


@pytest.fixture(scope="session")
def parity(cell24):
    return enumerate_parity_binary(cell24)


@pytest.fixture(scope="session")
def trits(cell24):
    return ternary_16cell(cell24)


@pytest.fixture(scope="session")
def group24(cell24):
    return symmetry_24cell(cell24)


@pytest.fixture(scope="session")
def construction(cell24, parity):
    return construct_all(cell24, pool=parity.balanced)


@pytest.fixture(scope="session")
def orbits(construction, group24):
    """canonical form -> number of constructed labelings in that orbit"""
    return orbit_members(construction.label_array(), group24)
