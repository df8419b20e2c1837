"""Shared fixtures: the two worked-example maps and their singular sets."""

import math

import pytest

from dynlab.fndef import fn_from_source
from dynlab.singular import Rect, singular_set

TWO_PI = 2 * math.pi


@pytest.fixture(scope="session")
def band_map():
    """z + exp(-z): vertical-period map with horizontal escape bands."""
    return fn_from_source("z + exp(-z)", period=complex(0.0, TWO_PI))


@pytest.fixture(scope="session")
def sin_map():
    """z + exp(1/sin(z)): essential singularities at the zeros of sine."""
    return fn_from_source("z + exp(1/sin(z))", period=complex(TWO_PI, 0.0))


@pytest.fixture(scope="session")
def sin_map_sing(sin_map):
    return singular_set(sin_map, Rect(-8.0, 8.0, -8.0, 8.0))
