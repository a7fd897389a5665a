"""
Shared fixtures: small named groups, the order-1875 example and its H'
"""

from pathlib import Path

import pytest

from src.perm.builtins import alternating, cyclic, dihedral, example12, quaternion, symmetric
from src.perm.grp_format import load_sub, parse_subgroup

CORPUS_DIR = Path(__file__).resolve().parents[1] / "corpus"


@pytest.fixture(scope="session")
def corpus_dir():
    """Directory of the bundled corpus"""
    return CORPUS_DIR


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def s4():
    return symmetric(4)


@pytest.fixture(scope="session")
def a4():
    return alternating(4)


@pytest.fixture(scope="session")
def a5():
    return alternating(5)


@pytest.fixture(scope="session")
def c6():
    return cyclic(6)


@pytest.fixture(scope="session")
def d8():
    return dihedral(8)


@pytest.fixture(scope="session")
def q8():
    return quaternion(8)


@pytest.fixture(scope="session")
def ex12():
    """(L1 x L2) x| <alpha> of order 1875"""
    return example12()


@pytest.fixture(scope="session")
def hprime(ex12):
    """H' = <a, a'>: partial Pi-property without the Pi-property"""
    return load_sub(ex12, CORPUS_DIR / "hprime.sub")


@pytest.fixture
def s4_c4(s4):
    return parse_subgroup(s4, "(1 2 3 4)")


@pytest.fixture
def s4_v4(s4):
    """Normal Klein four-group of S4"""
    return parse_subgroup(s4, "(1 2)(3 4),(1 3)(2 4)")


@pytest.fixture
def s4_v4prime(s4):
    """Non-normal Klein four-group <(1 3), (2 4)>"""
    return parse_subgroup(s4, "(1 3),(2 4)")
