from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.errors import SectorError, SpaceMismatchError
from freefield.fields import apply_mode
from freefield.lattice import proportionality
from freefield.states import SpaceDescriptor, State
from freefield.twisted import TWISTED, delta_apply, delta_coefficients, twisted_top, twisted_vacuum, twisted_vertex_mode
from freefield.virasoro import conformal_vector, j_vector

H = SpaceDescriptor.heisenberg("h")
H1 = State.monomial(H, [("h", 1)])


def test_delta_of_omega_adds_one_sixteenth():
    family = delta_apply(conformal_vector(H))
    assert set(family) == {Fraction(0), Fraction(-2)}
    assert family[Fraction(0)] == conformal_vector(H)
    assert family[Fraction(-2)] == State.vacuum(H).scale(Fraction(1, 16))


def test_delta_fixes_h():
    assert delta_apply(H1) == {Fraction(0): H1}


def test_delta_coefficient_c11():
    assert delta_coefficients(2).coefficient(1, 1) == Fraction(1, 16)
    with pytest.raises(ValueError):
        delta_coefficients(2).coefficient(2, 1)


@pytest.mark.parametrize(
    "sign, omega_value, j_value",
    [
        (1, Fraction(1, 16), Fraction(3, 128)),
        (-1, Fraction(9, 16), Fraction(-45, 128)),
    ],
)
def test_top_values(sign, omega_value, j_value):
    top = twisted_top(sign, 0)
    assert proportionality(twisted_vertex_mode(conformal_vector(H), 1, top), top) == omega_value
    assert proportionality(twisted_vertex_mode(j_vector(H), 3, top), top) == j_value


def test_twisted_field_of_h_is_h():
    v = State.monomial(TWISTED, [("h", Fraction(3, 2)), ("h", Fraction(1, 2))])
    for r in (Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)):
        assert twisted_vertex_mode(H1, r, v) == apply_mode(TWISTED, "h", r, v)


def test_twisted_l0_is_one_sixteenth_plus_depth():
    v = State.monomial(TWISTED, [("h", Fraction(5, 2)), ("h", Fraction(1, 2))])
    assert twisted_vertex_mode(conformal_vector(H), 1, v) == v.scale(Fraction(1, 16) + 3)


def test_integral_mode_of_theta_odd_operator_rejected():
    with pytest.raises(SectorError):
        twisted_vertex_mode(H1, 0, twisted_vacuum())


def test_half_integral_mode_of_theta_even_operator_rejected():
    with pytest.raises(SectorError):
        twisted_vertex_mode(conformal_vector(H), Fraction(1, 2), twisted_vacuum())


def test_untwisted_target_rejected():
    with pytest.raises(SpaceMismatchError):
        twisted_vertex_mode(H1, Fraction(1, 2), State.vacuum(H))
