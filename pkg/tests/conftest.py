import pytest

from psiforge import make_algebra
from psiforge.contact_relation import rel_to_op
from psiforge.enumeration import enumerate_ecas, enumerate_psi_operators


@pytest.fixture(scope="session")
def alg1():
    return make_algebra(1)


@pytest.fixture(scope="session")
def alg2():
    return make_algebra(2)


@pytest.fixture(scope="session")
def alg3():
    return make_algebra(3)


@pytest.fixture(scope="session")
def ecas_k1(alg1):
    return enumerate_ecas(alg1)


@pytest.fixture(scope="session")
def ecas_k2(alg2):
    return enumerate_ecas(alg2)


@pytest.fixture(scope="session")
def rel_ops_k2(ecas_k2):
    return [rel_to_op(r) for r in ecas_k2]


@pytest.fixture(scope="session")
def psi_ops_k2(alg2):
    return enumerate_psi_operators(alg2)
