from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.errors import ConventionError, SpaceMismatchError
from freefield.scalars import RatFunc
from freefield.states import (
    SpaceDescriptor,
    State,
    basis,
    depth_component,
    parity_basis,
    partition_count,
    project_parity,
    state_add,
    theta_involution,
)

M1 = SpaceDescriptor.heisenberg("a")
TW = SpaceDescriptor.twisted()


def test_partition_counts():
    assert [partition_count(n) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_twisted_basis_uses_half_integer_modes():
    # 3/2 = 3/2 = 1/2 + 1/2 + 1/2
    assert len(basis(TW, Fraction(3, 2))) == 2
    assert basis(TW, Fraction(-1)) == ()


def test_weyl_basis_allows_repeated_modes():
    # (1 - t)^-2 at t^2: a+a+, a+a-, a-a-
    assert len(basis(SpaceDescriptor.weyl(1), 1)) == 3


def test_parity_basis_splits_by_length():
    even = parity_basis(M1, 4, 1)
    odd = parity_basis(M1, 4, -1)
    assert len(even) + len(odd) == partition_count(4)
    assert all(m.length % 2 == 0 for m in even)


def test_conformal_weights():
    x = RatFunc.variable()
    assert State.vacuum(M1, x).weight() == x * x / 2
    assert State.vacuum(SpaceDescriptor.lattice(), Fraction(1)).weight() == 1
    assert State.vacuum(SpaceDescriptor.lattice(), Fraction(1, 2)).weight() == Fraction(1, 4)
    assert State.vacuum(TW).weight() == Fraction(1, 16)
    assert State.monomial(M1, [("a", 2), ("a", 1)]).weight() == 3


def test_inhomogeneous_weight_raises():
    v = State.vacuum(M1) + State.monomial(M1, [("a", 1)])
    with pytest.raises(ConventionError):
        v.weight()


def test_zero_state_is_falsy():
    v = State.monomial(M1, [("a", 1)])
    assert not (v - v)
    assert (v - v) == State.zero(M1)


def test_mixing_spaces_raises():
    with pytest.raises(SpaceMismatchError):
        State.vacuum(M1) + State.vacuum(SpaceDescriptor.heisenberg("h"))


def test_theta_flips_odd_monomials():
    v = State.monomial(M1, [("a", 1)])
    w = State.monomial(M1, [("a", 1), ("a", 1)])
    assert theta_involution(v) == -v
    assert theta_involution(w) == w


def test_state_add_merges_and_cancels():
    v = State.monomial(M1, [("a", 1)], coeff=Fraction(1, 2))
    w = State.monomial(M1, [("a", 1)], coeff=Fraction(-1, 2)) + State.vacuum(M1)
    assert state_add(v, w) == State.vacuum(M1)
    assert len(state_add(v, v)) == 1


def test_project_parity_splits_a_state():
    v = State.vacuum(M1) + State.monomial(M1, [("a", 1)]) + State.monomial(M1, [("a", 2), ("a", 1)])
    plus = project_parity(v, 1)
    minus = project_parity(v, -1)
    assert plus + minus == v
    assert theta_involution(plus) == plus
    assert theta_involution(minus) == -minus
    with pytest.raises(ValueError):
        project_parity(v, 0)


def test_depth_component_picks_one_level():
    v = State.vacuum(M1) + State.monomial(M1, [("a", 2)]) + State.monomial(M1, [("a", 1), ("a", 1)])
    assert depth_component(v, 0) == State.vacuum(M1)
    assert len(depth_component(v, 2)) == 2
    assert not depth_component(v, 1)
