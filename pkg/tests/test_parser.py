from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.errors import ParseError
from freefield.fields import vertex_mode
from freefield.parser import (
    ParseContext,
    operator_from_text,
    parse_scalar,
    parse_state,
    print_ast,
    state_from_text,
)
from freefield.printing import format_state
from freefield.scalars import Quad, RatFunc
from freefield.states import SpaceDescriptor, SpaceKind, State
from freefield.twisted import twisted_vertex_mode
from freefield.virasoro import j_vector

M1 = SpaceDescriptor.heisenberg("a")

CORPUS = [
    "a(-1) a(-1) |0>",
    "1/2 a(-2) |lam>",
    "-3 h(-1/2) |tw>",
    "s2 g(-1) |e:1>",
    "g(-2) |e:1/2>",
    "J",
    "2 w",
    "w - a(-2) |0>",
    "(x^2 - 1) a(-1) |lam>",
    "b1+(-1/2) b2-(-3/2) |0>",
    "a(-1) |mom:1/2>",
    "a(-3) a(-1) |mom:1/2 s2>",
    "x a(-1) |lam> + x^2 |lam>",
    "h(-1) |0>",
    "0",
]


def test_parse_simple_state():
    assert state_from_text("a(-1) a(-1) |0>") == State.monomial(M1, [("a", 1), ("a", 1)])


def test_alias_j_expands():
    assert state_from_text("J") == j_vector()


def test_weyl_generator_in_rank_two():
    v = state_from_text("b1+(-1/2) |0>", ParseContext(rank=2))
    assert v == State.monomial(SpaceDescriptor.weyl(2), [("b1+", Fraction(1, 2))])


def test_half_integer_mode_infers_twisted_sector():
    v = state_from_text("h(-1/2) |tw>")
    assert v.space.kind is SpaceKind.TWISTED


def test_sector_mismatch_has_span():
    with pytest.raises(ParseError) as info:
        state_from_text("h(-1/2) |0>")
    assert info.value.span is not None
    assert "^" in info.value.render()


def test_syntax_error_points_at_token():
    text = "a(-1 |0>"
    with pytest.raises(ParseError) as info:
        parse_state(text)
    assert info.value.span.start == text.index("|")


def test_weyl_index_beyond_rank():
    with pytest.raises(ParseError):
        state_from_text("b3+(-1/2) |0>", ParseContext(rank=2))


def test_mixed_spaces_rejected():
    with pytest.raises(ParseError):
        state_from_text("a(-1) |0> + h(-1) |0>")


@pytest.mark.parametrize("text", CORPUS)
def test_print_parse_round_trip(text):
    ast = parse_state(text)
    assert parse_state(print_ast(ast)) == ast


@pytest.mark.parametrize("text", [t for t in CORPUS if t not in ("J", "2 w", "w - a(-2) |0>", "0")])
def test_format_state_reparses(text):
    state = state_from_text(text, ParseContext(rank=2))
    assert state_from_text(format_state(state), ParseContext(rank=2)) == state


def test_parse_scalar():
    assert parse_scalar("3/2") == Fraction(3, 2)
    assert parse_scalar("1/2 s2") == Quad(0, Fraction(1, 2))
    x = RatFunc.variable()
    assert parse_scalar("x^2 - 1") == x * x - 1
    with pytest.raises(ParseError):
        parse_scalar("3 a")


def test_eval_j_on_lambda():
    v = state_from_text("|lam>")
    u = operator_from_text("J", v)
    assert format_state(vertex_mode(u, 3, v)) == "(x^4 - 1/2 x^2) |lam>"


def test_eval_omega_on_vacuum():
    v = state_from_text("|0>")
    assert format_state(vertex_mode(operator_from_text("w", v), 1, v)) == "0"


def test_eval_pairing():
    v = state_from_text("a(-1)|0>")
    assert format_state(vertex_mode(operator_from_text("a(-1)|0>", v), 1, v)) == "|0>"


def test_operators_on_twisted_states_live_in_h():
    v = state_from_text("h(-1/2) |tw>")
    u = operator_from_text("w", v)
    assert u.space == SpaceDescriptor.heisenberg("h")
    assert twisted_vertex_mode(u, 1, v) == v.scale(Fraction(9, 16))
