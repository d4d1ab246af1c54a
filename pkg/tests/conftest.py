import random

import pytest

from fermialg import EXACT, FloatField, OrderingContext, standard_structure


@pytest.fixture(scope="session")
def ctx_m1():
    structure, basis = standard_structure(1)
    return OrderingContext(structure, basis, EXACT)


@pytest.fixture(scope="session")
def ctx_m2():
    structure, basis = standard_structure(2)
    return OrderingContext(structure, basis, EXACT)


@pytest.fixture(scope="session")
def ctx_m3():
    structure, basis = standard_structure(3)
    return OrderingContext(structure, basis, EXACT)


@pytest.fixture(scope="session")
def float_field():
    return FloatField(1e-9)


@pytest.fixture(scope="session")
def ctx_m4_float(float_field):
    structure, basis = standard_structure(4)
    return OrderingContext(structure, basis, float_field)


@pytest.fixture
def rng():
    return random.Random(20240811)
