from __future__ import annotations

import pytest

from ofc.fixtures import builders
from tests.corpus import corpus


@pytest.fixture(scope="session")
def escrow():
    return builders.escrow_deposit()


@pytest.fixture(scope="session")
def wrapper():
    return builders.escrow_wrapper()


@pytest.fixture(scope="session")
def chain5():
    return builders.chain(5)


@pytest.fixture(scope="session")
def trade():
    return builders.buyer_seller_escrow()


@pytest.fixture(scope="session")
def real_estate():
    return builders.real_estate()


@pytest.fixture(scope="session")
def badges():
    return builders.badges()


@pytest.fixture(scope="session")
def inspectors():
    return builders.inspectors()


@pytest.fixture(scope="session")
def mortgage():
    return builders.mortgage_variant()


@pytest.fixture(scope="session")
def random_corpus():
    """200 seeded random machines, 4 to 8 states each."""
    return list(corpus(200))
