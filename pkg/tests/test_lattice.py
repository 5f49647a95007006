from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.errors import NotInAlgebraError, SpaceMismatchError
from freefield.fields import vertex_mode
from freefield.lattice import (
    alpha_to_gamma,
    build_hwv,
    e_zero,
    exponential,
    f_zero,
    hw_check,
    identification_checks,
    j_lattice,
    lattice_vertex_mode,
    lift_mode_convention,
    proportionality,
    sl2_bracket_checks,
    sl2_h,
    spanning_check,
    string_length,
    verify_lift_identity,
)
from freefield.scalars import Quad
from freefield.states import SpaceDescriptor, State


def test_sl2_brackets_on_low_weights():
    assert all(c.passed for c in sl2_bracket_checks(3))


def test_e_squared_j_is_multiple_of_e_two_gamma():
    e2j = e_zero(j_lattice(), 2)
    c = proportionality(e2j, exponential(2))
    assert c is not None and c != 0
    assert not e_zero(j_lattice(), 3)


@pytest.mark.parametrize("m, k", [(0, 0), (1, 0), (0, 1), (2, 1)])
def test_highest_weight_vectors(m, k):
    report = hw_check(build_hwv(m, k))
    assert report.is_hw
    assert report.weight == (Fraction(m, 2) + k) ** 2


def test_string_length_of_exponential():
    assert string_length(exponential(Fraction(3, 2)), raising=False) == 4
    assert string_length(exponential(0), raising=False) == 1


def test_f_zero_lowers_momentum():
    assert f_zero(exponential(1)).momenta() == [Fraction(0)]


@pytest.mark.parametrize("m, k", [(0, 0), (1, 0), (2, 0), (0, 1)])
def test_lift_identity(m, k):
    report = verify_lift_identity(m, k)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.sigma
    assert report.constant


def test_formal_convention_is_selected():
    chosen, checks = lift_mode_convention()
    assert chosen == "formal"
    assert all(c.passed for c in checks)


@pytest.mark.parametrize("m", [0, 1])
def test_spanning_set_fills_each_depth(m):
    assert all(row.full for row in spanning_check(m, 4))


def test_half_lattice_vectors_do_not_act():
    with pytest.raises(NotInAlgebraError):
        vertex_mode(exponential(Fraction(1, 2)), 0, exponential(0))


def test_lattice_vertex_mode_reads_momentum():
    # gamma(0) e^(r gamma) = 2r e^(r gamma)
    v = exponential(Fraction(1, 2))
    assert lattice_vertex_mode(sl2_h(), 0, v) == v
    assert lattice_vertex_mode(sl2_h(), 0, exponential(-1)) == exponential(-1).scale(-2)


def test_lattice_vertex_mode_accepts_fock_presentation():
    heis = SpaceDescriptor.heisenberg()
    top = State.vacuum(heis, Quad(0, Fraction(1, 2)))
    assert alpha_to_gamma(top) == exponential(Fraction(1, 2))
    assert lattice_vertex_mode(sl2_h(), 0, top) == exponential(Fraction(1, 2))


def test_lattice_vertex_mode_rejects_other_operators():
    with pytest.raises(NotInAlgebraError):
        lattice_vertex_mode(exponential(Fraction(1, 2)), 0, exponential(0))
    with pytest.raises(SpaceMismatchError):
        lattice_vertex_mode(State.vacuum(SpaceDescriptor.weyl(1)), 0, exponential(0))


def test_alpha_to_gamma_rescales_modes():
    heis = SpaceDescriptor.heisenberg()
    v = State.monomial(heis, [("a", 1)])
    assert alpha_to_gamma(v) == exponential(0, (1,)).scale(Quad(0, Fraction(1, 2)))
    with pytest.raises(ValueError):
        alpha_to_gamma(State.vacuum(heis, Fraction(1)))


@pytest.mark.parametrize("m", [0, 1])
def test_fock_identification_with_lattice(m):
    checks = identification_checks(m, 3)
    assert all(c.passed for c in checks), [(c.name, c.note) for c in checks if not c.passed]
