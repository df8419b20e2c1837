"""Guarded evaluation on the extended plane: overflow, poles, absorption."""

import math

from dynlab.expr import evaluate, evaluate_c, parse
from dynlab.sphere import XComplex, guard


def test_plain_finite_value():
    # frozen: 0.5 + exp(-0.5)
    v = evaluate(parse("z + exp(-z)"), 0.5)
    assert v.is_finite
    assert v.value == 1.1065306597126334 + 0j


def test_exp_overflow_is_infinity():
    assert evaluate(parse("exp(z)"), 701) is XComplex.INFINITY


def test_pole_is_infinity():
    assert evaluate(parse("1/z^2"), 0) is XComplex.INFINITY


def test_zero_over_zero_is_undefined():
    assert evaluate(parse("z/z"), 0) is XComplex.UNDEFINED


def test_function_of_infinity_is_undefined():
    # 1/sin(0) overflows to infinity; exp has no limit there
    assert evaluate(parse("exp(1/sin(z))"), 0) is XComplex.UNDEFINED


def test_infinity_minus_infinity_is_undefined():
    assert evaluate(parse("exp(z) - exp(z)"), 800) is XComplex.UNDEFINED


def test_finite_minus_infinity_is_infinity():
    assert evaluate(parse("z - exp(z)"), 800) is XComplex.INFINITY


def test_undefined_absorbs():
    # the undefined subterm poisons the whole expression
    assert evaluate(parse("z + exp(1/sin(z))"), 0) is XComplex.UNDEFINED


def test_evaluate_c_none_for_nonfinite():
    assert evaluate_c(parse("exp(z)"), 800) is None
    assert evaluate_c(parse("z/z"), 0) is None
    assert evaluate_c(parse("z + 1"), 2.0) == 3.0 + 0j


def test_guard():
    assert guard(1.0, -2.0).value == 1.0 - 2.0j
    assert guard(math.inf, 0.0) is XComplex.INFINITY
    assert guard(0.0, -math.inf) is XComplex.INFINITY
    assert guard(math.nan, 0.0) is XComplex.UNDEFINED


def test_deep_nesting_stays_guarded():
    # inner exp overflows to infinity; outer exp has no limit there:
    # the result degrades to undefined instead of raising
    v = evaluate(parse("exp(exp(exp(z)))"), 10)
    assert v is XComplex.UNDEFINED
