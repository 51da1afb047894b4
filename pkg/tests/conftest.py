"""Common fixtures for the slicedepth tests."""
from collections.abc import Generator
import random

import pytest

from slicedepth.groebner import groebner
from slicedepth.poly import Polynomial
from slicedepth.slicefamily import Shape, build_F, build_ideal


@pytest.fixture
def rng() -> random.Random:
    """A seeded random source so property cases are reproducible."""
    return random.Random(20240611)


@pytest.fixture
def x() -> Polynomial:
    """The variable x = x[1]."""
    return Polynomial.variable((1,))


@pytest.fixture
def y() -> Polynomial:
    """The variable y = x[2]."""
    return Polynomial.variable((2,))


@pytest.fixture
def z() -> Polynomial:
    """The variable z = x[3]."""
    return Polynomial.variable((3,))


@pytest.fixture
def t() -> Polynomial:
    """The variable t = x[4]."""
    return Polynomial.variable((4,))


@pytest.fixture
def square() -> Shape:
    """The 2x2 shape."""
    return Shape((2, 2))


@pytest.fixture
def cube() -> Shape:
    """The 2x2x2 shape."""
    return Shape((2, 2, 2))


@pytest.fixture(autouse=True)
def clear_caches() -> Generator[None, None, None]:
    """Start every test with empty construction caches."""
    yield
    build_ideal.cache_clear()
    build_F.cache_clear()
    groebner.cache_clear()
