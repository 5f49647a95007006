from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.scalars import ZERO, Quad, RatFunc, as_scalar, binom, specialize, sqrt2


def test_quad_product_narrows_to_fraction():
    product = Quad(1, 1) * Quad(1, -1)
    assert product == Fraction(-1)
    assert isinstance(product, Fraction)


def test_sqrt2_squared_is_rational():
    assert sqrt2() * sqrt2() == 2
    assert isinstance(sqrt2() * sqrt2(), Fraction)


def test_quad_inverse():
    # 1 / (1 + s2) = s2 - 1
    assert Quad(1, 1).inverse() == Quad(-1, 1)
    assert Quad(1, 1) * Quad(1, 1).inverse() == 1


def test_quad_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Quad(1, 1) / 0


def test_ratfunc_reduces_to_lowest_terms():
    x = RatFunc.variable()
    assert (x * x - 1) / (x - 1) == x + 1


def test_ratfunc_cancellation_gives_zero_fraction():
    x = RatFunc.variable()
    diff = x - x
    assert diff == ZERO
    assert isinstance(diff, Fraction)


def test_specialize_at_rational_and_quadratic_points():
    x = RatFunc.variable()
    assert specialize(x * x / 2, Fraction(3)) == Fraction(9, 2)
    assert specialize(x * x, sqrt2()) == 2
    assert specialize(Fraction(5), Fraction(7)) == 5


def test_specialize_at_pole():
    x = RatFunc.variable()
    with pytest.raises(ZeroDivisionError):
        specialize(1 / x, 0)


def test_generalized_binomial():
    assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom(Fraction(5), 2) == 10
    assert binom(Fraction(3), -1) == 0


def test_as_scalar_rejects_floats():
    assert as_scalar(3) == Fraction(3)
    with pytest.raises(TypeError):
        as_scalar(1.5)
