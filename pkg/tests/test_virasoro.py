from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.states import SpaceDescriptor, State, basis
from freefield.virasoro import (
    central_charge,
    commutator_mode,
    conformal_vector,
    j_vector,
    virasoro_mode,
    virasoro_submodule_dims,
)

M1 = SpaceDescriptor.heisenberg("a")


@pytest.mark.parametrize(
    "space, expected",
    [
        (SpaceDescriptor.heisenberg("a"), 1),
        (SpaceDescriptor.lattice(), 1),
        (SpaceDescriptor.weyl(1), -1),
        (SpaceDescriptor.weyl(3), -3),
        (SpaceDescriptor.tensor(1), 0),
        (SpaceDescriptor.tensor(2), -1),
    ],
)
def test_central_charges(space, expected):
    assert central_charge(space) == expected


def test_j_is_virasoro_primary_of_weight_four():
    J = j_vector()
    assert not virasoro_mode(1, J)
    assert not virasoro_mode(2, J)
    assert virasoro_mode(0, J) == J.scale(4)


def test_j_is_primary_on_the_lattice_too():
    J = j_vector(SpaceDescriptor.lattice())
    assert not virasoro_mode(1, J)
    assert not virasoro_mode(2, J)


def test_l1_lminus1_bracket():
    omega = conformal_vector(M1)
    for depth in range(0, 4):
        for mono in basis(M1, depth):
            v = State(M1, {mono: Fraction(1)})
            # [L(1), L(-1)] = 2 L(0)
            assert commutator_mode(omega, 2, omega, 0, v) == virasoro_mode(0, v).scale(2)


def test_vacuum_module_levels():
    # q^0 (1 - q) / prod (1 - q^n)
    assert virasoro_submodule_dims(State.vacuum(M1), 6) == [1, 0, 1, 1, 2, 2, 4]
