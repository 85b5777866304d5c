import pytest

from ncsymalg.bimodule import direct_sum, field_as_bimodule, twist_bimodule
from ncsymalg.fields import BaseField, embeddings, galois_group, make_extension
from ncsymalg.instance import fixture_path, load_spec
from ncsymalg.ncsym import ZAlgebra


@pytest.fixture(scope="session")
def F3():
    return BaseField.prime(3)


@pytest.fixture(scope="session")
def F9(F3):
    return make_extension(F3, 2)


@pytest.fixture(scope="session")
def gal9(F9):
    return galois_group(F9)


@pytest.fixture(scope="session")
def split22(F9, gal9):
    ident, frob = gal9.elements
    return direct_sum(twist_bimodule(F9, ident), twist_bimodule(F9, frob))


@pytest.fixture(scope="session")
def onefour(F3):
    K = make_extension(F3, 4)
    L = make_extension(F3, 1, label="L")
    return field_as_bimodule(K, L, embeddings(L, K)[0])


@pytest.fixture(scope="session")
def Z22(split22):
    return ZAlgebra(split22)


@pytest.fixture(scope="session")
def Z14(onefour):
    return ZAlgebra(onefour)


@pytest.fixture(scope="session")
def spec22():
    return load_spec(fixture_path("split22.spec"))


@pytest.fixture(scope="session")
def spec14():
    return load_spec(fixture_path("onefour.spec"))


@pytest.fixture(scope="session")
def specQ():
    return load_spec(fixture_path("simpleQ.spec"))


@pytest.fixture(scope="session")
def ZQ(specQ):
    return ZAlgebra(specQ.bimodule)
