"""Chordal metric on the Riemann sphere."""

import math

import pytest
from hypothesis import given, strategies as st

from dynlab.sphere import MetricUndefinedError, XComplex, chordal

fin = XComplex.finite


def test_zero_to_infinity_is_diameter():
    assert chordal(fin(0j), XComplex.INFINITY) == 2.0


def test_identical_points():
    assert chordal(fin(3 + 4j), fin(3 + 4j)) == 0.0
    assert chordal(XComplex.INFINITY, XComplex.INFINITY) == 0.0


def test_zero_to_one():
    assert abs(chordal(fin(0j), fin(1 + 0j)) - math.sqrt(2)) < 1e-15


def test_large_point_near_infinity():
    assert chordal(fin(1e200 + 0j), XComplex.INFINITY) < 1e-150


def test_undefined_raises():
    with pytest.raises(MetricUndefinedError):
        chordal(XComplex.UNDEFINED, fin(0j))
    with pytest.raises(MetricUndefinedError):
        chordal(fin(0j), XComplex.UNDEFINED)


coords = st.floats(min_value=-1e120, max_value=1e120,
                   allow_nan=False, allow_infinity=False)
points = st.one_of(
    st.tuples(coords, coords).map(lambda t: fin(complex(*t))),
    st.just(XComplex.INFINITY),
)


@given(points, points)
def test_symmetry_and_range(a, b):
    d = chordal(a, b)
    assert 0.0 <= d <= 2.0
    assert d == chordal(b, a)


@given(points, points, points)
def test_triangle_inequality(a, b, c):
    assert chordal(a, c) <= chordal(a, b) + chordal(b, c) + 1e-12


@given(points)
def test_identity(a):
    assert chordal(a, a) == 0.0
