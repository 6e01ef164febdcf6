"""Shared group fixtures, built once per session."""

import pytest

from harmonic_sieve.groups import (
    Cyclic,
    Dihedral,
    DirectProduct,
    ElementaryAbelian2,
    Symmetric,
    build_group,
)
from harmonic_sieve.characters import character_table


@pytest.fixture(scope="session")
def z2():
    return build_group(Cyclic(2))


@pytest.fixture(scope="session")
def z3():
    return build_group(Cyclic(3))


@pytest.fixture(scope="session")
def z12():
    return build_group(Cyclic(12))


@pytest.fixture(scope="session")
def z2_2():
    return build_group(ElementaryAbelian2(2))


@pytest.fixture(scope="session")
def z2_3():
    return build_group(ElementaryAbelian2(3))


@pytest.fixture(scope="session")
def z2_4():
    return build_group(ElementaryAbelian2(4))


@pytest.fixture(scope="session")
def d4():
    return build_group(Dihedral(4))


@pytest.fixture(scope="session")
def d5():
    return build_group(Dihedral(5))


@pytest.fixture(scope="session")
def d6():
    return build_group(Dihedral(6))


@pytest.fixture(scope="session")
def s3():
    return build_group(Symmetric(3))


@pytest.fixture(scope="session")
def s4():
    return build_group(Symmetric(4))


@pytest.fixture(scope="session")
def s3xz2():
    return build_group(DirectProduct(Symmetric(3), Cyclic(2)))


def table(group):
    return character_table(group)
