"""Symbolic differentiation checked against central differences."""

import pytest

from dynlab.expr import (Const, Mul, Pow, Var, differentiate, evaluate_c,
                         parse)
from dynlab.quasi import halton_in_rect

FAMILIES = [
    "z^3 - 2*z + 1",
    "z + exp(-z)",
    "sin(z)*cos(z)",
    "1/z^2",
    "exp(1/sin(z))",
    "z*exp(-z) + cos(z)/(z^2 + 1)",
]

H = 1e-5
REL_TOL = 1e-6


def central_diff(e, z):
    a = evaluate_c(e, z + H)
    b = evaluate_c(e, z - H)
    if a is None or b is None:
        return None
    return (a - b) / (2 * H)


@pytest.mark.parametrize("src", FAMILIES)
def test_matches_central_difference(src):
    e = parse(src)
    d = differentiate(e)
    checked = 0
    for z in halton_in_rect(400, -3, 3, -3, 3, seed=7):
        num = central_diff(e, z)
        sym = evaluate_c(d, z)
        if num is None or sym is None:
            continue
        # central differences are O(h^2): skip points where truncation
        # error dominates (huge derivative magnitude or near-singular)
        if abs(sym) > 1e6 or abs(num) > 1e6:
            continue
        checked += 1
        assert abs(sym - num) <= REL_TOL * max(1.0, abs(sym))
    assert checked >= 200


def test_structural_rules():
    assert differentiate(Const(5 + 0j)) == Const(0j)
    assert differentiate(Var()) == Const(1 + 0j)
    # d/dz z^3 evaluates to 3 z^2 everywhere
    d = differentiate(Pow(Var(), 3))
    for z in (0.5, 1 + 2j, -3j):
        assert abs(evaluate_c(d, z) - 3 * z**2) < 1e-12


def test_chain_rule_exp():
    d = differentiate(parse("exp(-z)"))
    import cmath
    for z in (0j, 1 + 1j, -2.5):
        assert abs(evaluate_c(d, z) + cmath.exp(-z)) < 1e-12


def test_quotient_rule():
    d = differentiate(parse("1/z"))
    for z in (1 + 0j, 2j, -0.5 + 0.5j):
        assert abs(evaluate_c(d, z) + 1 / z**2) < 1e-12
