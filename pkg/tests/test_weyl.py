from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.errors import SectorError, SpaceMismatchError
from freefield.fields import vertex_mode
from freefield.oracle import vertex_mode_oracle
from freefield.states import Monomial, SpaceDescriptor, State
from freefield.tensor import tensor_mode, tensor_product
from freefield.virasoro import virasoro_mode, weyl_omega
from freefield.weyl import (
    CHARGE_SIGN,
    charge,
    charge_component,
    charge_field,
    charge_mode,
    charge_pairing,
    fixed_basis,
    fixed_projection,
    generator,
    gl_closure_dimension,
    parity_involution,
    symplectic_involution,
    u_generators,
    verify_generator_chain,
    weyl_space,
    weyl_vertex_mode,
)

HALF = Fraction(1, 2)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_charge_field_pairing_and_sign(rank):
    space = weyl_space(rank)
    H = charge_field(space)
    assert vertex_mode(H, 1, H).coefficient(Monomial.make()) == charge_pairing(rank) == -rank
    plus = generator(space, 1, "+")
    minus = generator(space, 1, "-")
    assert vertex_mode(H, 0, plus) == plus.scale(CHARGE_SIGN)
    assert vertex_mode(H, 0, minus) == minus.scale(-CHARGE_SIGN)


def test_charge_components():
    space = weyl_space(2)
    v = generator(space, 1, "+") + generator(space, 2, "-")
    assert charge(charge_component(v, 1)) == 1
    assert charge_component(v, 0) == State.zero(space)
    with pytest.raises(SectorError):
        charge(v)


def test_symplectic_involution():
    space = weyl_space(4)
    omega, H = weyl_omega(4), charge_field(space)
    assert symplectic_involution(omega) == omega
    assert symplectic_involution(H) == -H
    v = State.monomial(space, [("b1+", HALF), ("b4-", Fraction(3, 2))])
    assert symplectic_involution(symplectic_involution(v)) == v


def test_symplectic_involution_needs_even_rank():
    with pytest.raises(SectorError):
        symplectic_involution(generator(weyl_space(3), 1, "+"))


def test_weyl_l0_half_integral_on_odd_sector():
    v = State.monomial(weyl_space(2), [("b1+", HALF), ("b2-", Fraction(3, 2)), ("b2-", HALF)])
    assert virasoro_mode(0, v) == v.scale(Fraction(5, 2))


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_gl_closure(rank):
    assert gl_closure_dimension(rank) == (rank * rank, rank * rank)


def test_u_generators_are_fixed():
    for g in u_generators(3):
        assert parity_involution(g) == g


def test_fixed_basis_is_even():
    assert all(m.length % 2 == 0 for m in fixed_basis(1, 2))


def test_tensor_mode_agrees_with_vertex_mode():
    h = SpaceDescriptor.heisenberg("h")
    u = tensor_product(generator(weyl_space(1), 1, "+"), State.monomial(h, [("h", 1)]))
    v = tensor_product(generator(weyl_space(1), 1, "-"), State.monomial(h, [("h", 2)]))
    for n in range(-2, 4):
        assert tensor_mode(u, n, v) == vertex_mode(u, n, v)
        assert vertex_mode(u, n, v) == vertex_mode_oracle(u, n, v)


@pytest.mark.parametrize("n", [2, 3])
def test_generator_chain(n):
    checks = verify_generator_chain(n)
    assert len(checks) >= 8
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_charge_mode_zero_is_charge_grading():
    space = weyl_space(2)
    v = State.monomial(space, [("b1+", HALF), ("b2+", HALF), ("b1-", Fraction(3, 2))])
    assert charge_mode(0, v) == v.scale(CHARGE_SIGN * charge(v))


def test_weyl_vertex_mode_requires_matching_rank():
    g = generator(weyl_space(1), 1, "+")
    h = generator(weyl_space(1), 1, "-")
    assert weyl_vertex_mode(g, 0, h) == vertex_mode(g, 0, h)
    with pytest.raises(SpaceMismatchError):
        weyl_vertex_mode(g, 0, generator(weyl_space(2), 1, "-"))


def test_fixed_projection_keeps_the_u_component():
    space = SpaceDescriptor.tensor(1)
    even = State.monomial(space, [("b1+", HALF), ("h", 1)])
    odd = State.monomial(space, [("b1+", HALF)])
    assert fixed_projection(even + odd) == even
    assert fixed_projection(fixed_projection(even + odd)) == even
    for g in u_generators(3):
        assert fixed_projection(g) == g
