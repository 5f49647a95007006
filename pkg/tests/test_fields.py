from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.errors import ConventionError, NotInAlgebraError, SpaceMismatchError
from freefield.fields import ModeIndex, vertex_mode, zero_mode
from freefield.oracle import vertex_mode_oracle
from freefield.scalars import RatFunc
from freefield.states import SpaceDescriptor, State, basis
from freefield.virasoro import commutator_mode, conformal_vector, j_vector

M1 = SpaceDescriptor.heisenberg("a")
A = State.monomial(M1, [("a", 1)])
VAC = State.vacuum(M1)


def test_weighted_mode_shifts_by_weight_minus_one():
    omega = conformal_vector(M1)
    assert ModeIndex.weighted(0).to_formal(omega) == 1
    assert ModeIndex.weighted(-2).to_formal(j_vector()) == 1


def test_weighted_mode_needs_homogeneous_state():
    with pytest.raises(ConventionError):
        ModeIndex.weighted(0).to_formal(VAC + A)


def test_heisenberg_pairing():
    assert vertex_mode(A, 1, A) == VAC
    assert vertex_mode(A, 0, A) == State.zero(M1)


def test_vacuum_acts_as_identity():
    v = State.monomial(M1, [("a", 3), ("a", 1)])
    assert vertex_mode(VAC, -1, v) == v
    assert vertex_mode(VAC, 0, v) == State.zero(M1)


def test_momentum_eigenvalue():
    x = RatFunc.variable()
    lam = State.vacuum(M1, x)
    assert vertex_mode(A, 0, lam) == lam.scale(x)
    assert zero_mode(A, lam) == lam.scale(x)


def test_creation_mode_of_a():
    assert vertex_mode(A, -2, VAC) == State.monomial(M1, [("a", 2)])


def test_module_vectors_do_not_act():
    with pytest.raises(NotInAlgebraError):
        vertex_mode(State.vacuum(M1, Fraction(1)), 0, VAC)


def test_mismatched_bosons_rejected():
    h = State.monomial(SpaceDescriptor.heisenberg("h"), [("h", 1)])
    with pytest.raises(SpaceMismatchError):
        vertex_mode(h, 0, A)


def test_commutator_of_a_with_omega():
    # [a_(m), omega_(n)] = m a_(m+n-1)
    omega = conformal_vector(M1)
    for depth in range(0, 4):
        for mono in basis(M1, depth):
            v = State(M1, {mono: Fraction(1)})
            for m in range(-2, 3):
                for n in range(-1, 3):
                    assert commutator_mode(A, m, omega, n, v) == vertex_mode(A, m + n - 1, v).scale(m)


@pytest.mark.parametrize(
    "u",
    [
        State.monomial(M1, [("a", 1)]),
        State.monomial(M1, [("a", 2), ("a", 1)]),
        conformal_vector(M1),
        j_vector(),
    ],
)
def test_normal_ordering_matches_iterate_oracle_heisenberg(u):
    targets = [VAC, A, State.monomial(M1, [("a", 2)]), State.monomial(M1, [("a", 1), ("a", 1)], Fraction(2))]
    for v in targets:
        for n in range(-3, 5):
            assert vertex_mode(u, n, v) == vertex_mode_oracle(u, n, v)


def test_normal_ordering_matches_iterate_oracle_lattice():
    lat = SpaceDescriptor.lattice()
    ops = [State.vacuum(lat, Fraction(1)), State.monomial(lat, [("g", 1)], Fraction(-1))]
    targets = [State.vacuum(lat), State.monomial(lat, [("g", 2)], Fraction(1)), State.vacuum(lat, Fraction(1, 2))]
    for u in ops:
        for v in targets:
            for n in range(-3, 3):
                assert vertex_mode(u, n, v) == vertex_mode_oracle(u, n, v)


def test_normal_ordering_matches_iterate_oracle_weyl():
    s = SpaceDescriptor.weyl(2)
    ops = [
        State.monomial(s, [("b1+", Fraction(1, 2))]),
        State.monomial(s, [("b1+", Fraction(1, 2)), ("b2-", Fraction(1, 2))]),
    ]
    targets = [State.vacuum(s), State.monomial(s, [("b1-", Fraction(1, 2))]), State.monomial(s, [("b2+", Fraction(3, 2))])]
    for u in ops:
        for v in targets:
            for n in range(-2, 3):
                assert vertex_mode(u, n, v) == vertex_mode_oracle(u, n, v)
