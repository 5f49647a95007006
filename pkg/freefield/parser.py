"""
Parser

Reads the text form of states written by printing.format_state:

    state := term (('+' | '-') term)*
    term  := [sign] [coeff ['*']] (alias | mode* ket)
    mode  := gen '(' rational ')'        gen in a, h, g, b<i>+, b<i>-
    ket   := |0> | |tw> | |lam> | |mom:scalar> | |e:rational>
    coeff := rational, s2, x, x^k, products of these, '(' sum ')' and
             '(' sum ')/(' sum ')'

Aliases J, w, w1, H, E, F stand for the distinguished vectors of the
space in context. Every AST node carries the source span it came from.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import FreeFieldError, ParseError, SectorError, SpaceMismatchError, Span
from .fields import apply_mode
from .printing import _fraction, format_scalar
from .scalars import ONE, Quad, RatFunc, Scalar
from .states import (
    Monomial,
    SpaceDescriptor,
    SpaceKind,
    State,
    check_monomial,
    is_weyl,
    split_weyl,
)

logger = logging.getLogger(__name__)

ALIASES = ("J", "w", "w1", "H", "E", "F")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ket>\|[^>|]*>)
  | (?P<weyl>b\d+[+-](?=\s*\())
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[()+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span


def tokenize(text: str, base: int = 0) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, Span(base + pos, base + pos + 1))
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), Span(base + match.start(), base + match.end())))
        pos = match.end()
    return tokens


# AST


@dataclass(frozen=True)
class ModeNode:
    tag: str
    index: Fraction
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class KetNode:
    kind: str  # vac, tw, lam, mom, e
    value: Optional[Scalar] = None
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class AliasNode:
    name: str
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class TermNode:
    coeff: Scalar
    modes: Tuple[ModeNode, ...] = ()
    ket: Optional[KetNode] = None
    alias: Optional[AliasNode] = None
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class StateAst:
    terms: Tuple[TermNode, ...]
    span: Span = field(default=None, compare=False)


@dataclass
class ParseContext:
    """
    Where parsed states live. rank fixes the Weyl rank; space, when set,
    is the space aliases and bare kets default to (for an operator it is
    the space of the state it acts on).
    """

    rank: Optional[int] = None
    space: Optional[SpaceDescriptor] = None


class _Parser:
    def __init__(self, text: str, tokens: List[Token]):
        self.text = text
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            end = len(self.text)
            raise ParseError("unexpected end of input", self.text, Span(end, end + 1))
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", self.text, tok.span)
        return tok

    def error(self, message: str, tok: Optional[Token]) -> ParseError:
        if tok is None:
            end = len(self.text)
            return ParseError(message, self.text, Span(end, end + 1))
        return ParseError(message, self.text, tok.span)

    # scalars

    def at_scalar_atom(self) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        if tok.kind == "number" or tok.text == "(":
            return True
        return tok.kind == "ident" and tok.text in ("s2", "x")

    def scalar_atom(self) -> Scalar:
        tok = self.next()
        if tok.kind == "number":
            value: Scalar = Fraction(tok.text)
        elif tok.text == "s2":
            value = Quad(0, 1)
        elif tok.text == "x":
            value = RatFunc.variable()
        elif tok.text == "(":
            value = self.scalar_sum()
            self.expect(")")
        else:
            raise self.error(f"expected a scalar, found {tok.text!r}", tok)
        nxt = self.peek()
        if nxt is not None and nxt.text == "^":
            self.next()
            power = self.next()
            if power.kind != "number" or "/" in power.text:
                raise self.error("exponent must be a nonnegative integer", power)
            value = value ** int(power.text)
        nxt = self.peek()
        if nxt is not None and nxt.text == "/" and self.peek(1) is not None and self.peek(1).text == "(":
            self.next()
            self.expect("(")
            den = self.scalar_sum()
            close = self.expect(")")
            if not den:
                raise self.error("division by zero", close)
            value = value / den
        return value

    def scalar_product(self) -> Scalar:
        value = self.scalar_atom()
        while self.at_scalar_atom() or (self.peek() is not None and self.peek().text == "*" and self._scalar_follows(1)):
            if self.peek().text == "*":
                self.next()
            value = value * self.scalar_atom()
        return value

    def _scalar_follows(self, offset: int) -> bool:
        tok = self.peek(offset)
        return tok is not None and (tok.kind == "number" or tok.text in ("(", "s2", "x"))

    def scalar_sum(self) -> Scalar:
        sign = 1
        tok = self.peek()
        if tok is not None and tok.text in ("+", "-"):
            self.next()
            sign = -1 if tok.text == "-" else 1
        value = self.scalar_product()
        if sign == -1:
            value = -value
        while self.peek() is not None and self.peek().text in ("+", "-"):
            op = self.next()
            term = self.scalar_product()
            value = value + term if op.text == "+" else value - term
        return value

    # states

    def mode(self) -> ModeNode:
        tok = self.next()
        self.expect("(")
        sign = 1
        nxt = self.peek()
        if nxt is not None and nxt.text in ("+", "-"):
            self.next()
            sign = -1 if nxt.text == "-" else 1
        num = self.next()
        if num.kind != "number":
            raise self.error("mode index must be a rational number", num)
        close = self.expect(")")
        return ModeNode(tok.text, sign * Fraction(num.text), Span(tok.span.start, close.span.end))

    def ket(self) -> KetNode:
        tok = self.next()
        if tok.kind != "ket":
            raise self.error(f"expected a ket, found {tok.text!r}", tok)
        body = tok.text[1:-1].strip()
        if body == "0":
            return KetNode("vac", None, tok.span)
        if body == "tw":
            return KetNode("tw", None, tok.span)
        if body == "lam":
            return KetNode("lam", None, tok.span)
        for prefix in ("mom", "e"):
            if body.startswith(prefix + ":"):
                raw = tok.text[1:-1]
                start = raw.index(":") + 1
                inner = _Parser(self.text, tokenize(raw[start:], tok.span.start + 1 + start))
                value = inner.scalar_sum()
                if inner.peek() is not None:
                    raise self.error("unexpected text inside ket", inner.peek())
                if prefix == "e" and not isinstance(value, Fraction):
                    raise self.error("lattice momentum must be rational", tok)
                return KetNode(prefix, value, tok.span)
        raise self.error(f"unknown ket {tok.text!r}", tok)

    def is_generator(self, tok: Optional[Token]) -> bool:
        if tok is None:
            return False
        if tok.kind == "weyl":
            return True
        return tok.kind == "ident" and tok.text in ("a", "h", "g") and self.peek(1) is not None and self.peek(1).text == "("

    def term(self) -> TermNode:
        start_tok = self.peek()
        if start_tok is None:
            raise self.error("expected a term", None)
        coeff: Scalar = ONE
        if self.at_scalar_atom():
            coeff = self.scalar_product()
            if self.peek() is not None and self.peek().text == "*":
                self.next()
        tok = self.peek()
        if tok is not None and tok.kind == "ident" and tok.text in ALIASES:
            self.next()
            return TermNode(coeff, (), None, AliasNode(tok.text, tok.span), Span(start_tok.span.start, tok.span.end))
        modes: List[ModeNode] = []
        while self.is_generator(self.peek()):
            modes.append(self.mode())
        tok = self.peek()
        if tok is None or tok.kind != "ket":
            raise self.error("expected a mode, an alias or a ket", tok)
        ket = self.ket()
        return TermNode(coeff, tuple(modes), ket, None, Span(start_tok.span.start, ket.span.end))

    def state(self) -> StateAst:
        terms: List[TermNode] = []
        sign = 1
        tok = self.peek()
        if tok is not None and tok.text in ("+", "-"):
            self.next()
            sign = -1 if tok.text == "-" else 1
        while True:
            node = self.term()
            if sign == -1:
                node = TermNode(-node.coeff, node.modes, node.ket, node.alias, node.span)
            terms.append(node)
            tok = self.peek()
            if tok is None:
                break
            if tok.text not in ("+", "-"):
                raise self.error(f"unexpected {tok.text!r}", tok)
            self.next()
            sign = -1 if tok.text == "-" else 1
        return StateAst(tuple(terms), Span(0, len(self.text)))


def parse_state(text: str) -> StateAst:
    """Syntax tree of a state expression; raises ParseError with a span."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression", text, Span(0, 1))
    if len(tokens) == 1 and tokens[0].text == "0":
        return StateAst((), Span(0, len(text)))
    return _Parser(text, tokens).state()


def parse_scalar(text: str) -> Scalar:
    """A bare coefficient such as "3/2", "1/2 s2" or "x^2 - 1"."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty scalar", text, Span(0, 1))
    parser = _Parser(text, tokens)
    value = parser.scalar_sum()
    tok = parser.peek()
    if tok is not None:
        raise parser.error(f"unexpected {tok.text!r}", tok)
    return value


# printing the tree


def _print_ket(ket: KetNode) -> str:
    if ket.kind == "vac":
        return "|0>"
    if ket.kind == "tw":
        return "|tw>"
    if ket.kind == "lam":
        return "|lam>"
    if ket.kind == "e":
        return f"|e:{_fraction(ket.value)}>"
    return f"|mom:{format_scalar(ket.value)}>"


def _print_coeff(c: Scalar) -> Tuple[bool, str]:
    from .printing import _coefficient_prefix

    return _coefficient_prefix(c)


def print_ast(ast: StateAst) -> str:
    if not ast.terms:
        return "0"
    pieces: List[str] = []
    for term in ast.terms:
        negative, prefix = _print_coeff(term.coeff)
        if term.alias is not None:
            body = prefix + term.alias.name
        else:
            modes = " ".join(f"{m.tag}({_fraction(m.index)})" for m in term.modes)
            ket = _print_ket(term.ket)
            body = prefix + (f"{modes} {ket}" if modes else ket)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


# space inference and evaluation


def _lattice_space() -> SpaceDescriptor:
    return SpaceDescriptor.lattice()


def infer_space(ast: StateAst, context: ParseContext, text: str = "") -> SpaceDescriptor:
    tags = {m.tag for t in ast.terms for m in t.modes}
    kets = {t.ket.kind for t in ast.terms if t.ket is not None}
    weyl_indices = [split_weyl(tag)[0] for tag in tags if is_weyl(tag)]
    half_h = [m for t in ast.terms for m in t.modes if m.tag == "h" and m.index.denominator != 1]
    ctx = context.space

    if "tw" in kets or (half_h and not weyl_indices):
        return SpaceDescriptor.twisted()
    if weyl_indices or (ctx is not None and ctx.kind in (SpaceKind.WEYL, SpaceKind.TENSOR)):
        rank = context.rank or (ctx.rank if ctx is not None else 0) or max(weyl_indices)
        if weyl_indices and max(weyl_indices) > rank:
            span = next(m.span for t in ast.terms for m in t.modes if is_weyl(m.tag) and split_weyl(m.tag)[0] > rank)
            raise ParseError(f"generator index exceeds the Weyl rank {rank}", text, span)
        tensor = "h" in tags or (ctx is not None and ctx.kind is SpaceKind.TENSOR)
        return SpaceDescriptor.tensor(rank) if tensor else SpaceDescriptor.weyl(rank)
    if "g" in tags or "e" in kets:
        return _lattice_space()
    if "h" in tags:
        return SpaceDescriptor.heisenberg("h")
    if "a" in tags or "lam" in kets or "mom" in kets:
        return SpaceDescriptor.heisenberg("a")
    if ctx is not None:
        return ctx
    aliases = {t.alias.name for t in ast.terms if t.alias is not None}
    if aliases & {"E", "F"}:
        return _lattice_space()
    if aliases & {"w1", "H"}:
        return SpaceDescriptor.weyl(context.rank or 1)
    return SpaceDescriptor.heisenberg("a")


def _operator_space(space: SpaceDescriptor) -> SpaceDescriptor:
    """Twisted-module operators are written in M(1)[h]."""
    return SpaceDescriptor.heisenberg("h") if space.kind is SpaceKind.TWISTED else space


def expand_alias(name: str, space: SpaceDescriptor) -> State:
    from . import lattice, virasoro, weyl

    op_space = _operator_space(space)
    if name == "J":
        return virasoro.j_vector(op_space)
    if name == "w":
        return virasoro.conformal_vector(op_space)
    if name == "w1":
        if space.kind is SpaceKind.TENSOR:
            from .tensor import tensor_product

            return tensor_product(virasoro.weyl_omega(space.rank), State.vacuum(SpaceDescriptor.heisenberg("h")))
        rank = space.rank if space.kind is SpaceKind.WEYL else 1
        return virasoro.weyl_omega(rank)
    if name == "H":
        if space.kind is SpaceKind.LATTICE:
            return lattice.sl2_h()
        return weyl.charge_field(space)
    if name == "E":
        return lattice.sl2_e()
    if name == "F":
        return lattice.sl2_f()
    raise KeyError(name)


def _ket_state(ket: KetNode, space: SpaceDescriptor) -> State:
    if ket.kind == "tw":
        if space.kind is not SpaceKind.TWISTED:
            raise SectorError(f"the twisted vacuum does not belong to {space.describe()}")
        return State.vacuum(space)
    if space.kind is SpaceKind.TWISTED:
        raise SectorError("half-integer h modes act on the twisted vacuum |tw>, not on an untwisted ket")
    if ket.kind == "vac":
        return State.vacuum(space)
    if ket.kind == "lam":
        return State.vacuum(space, RatFunc.variable())
    return State.vacuum(space, ket.value)


def _term_state(term: TermNode, space: SpaceDescriptor) -> State:
    if term.alias is not None:
        return expand_alias(term.alias.name, space).scale(term.coeff)
    state = _ket_state(term.ket, space)
    for mode in reversed(term.modes):
        if mode.index < 0:
            check_monomial(space, Monomial.make([(mode.tag, -mode.index)]))
        elif mode.tag not in space.generators():
            raise SectorError(f"generator {mode.tag} does not belong to {space.describe()}")
        state = apply_mode(space, mode.tag, mode.index, state)
    return state.scale(term.coeff)


def evaluate(ast: StateAst, context: Optional[ParseContext] = None, text: str = "") -> State:
    """Expand aliases and build the State the tree denotes."""
    context = context or ParseContext()
    space = infer_space(ast, context, text)
    total = State.zero(space)
    for term in ast.terms:
        try:
            piece = _term_state(term, space)
            total = total + piece
        except SpaceMismatchError as e:
            raise ParseError(f"terms live in different spaces: {e}", text, term.span) from e
        except ParseError:
            raise
        except (FreeFieldError, ValueError) as e:
            span = term.span
            for mode in term.modes:
                if mode.index.denominator == 1 and space.kind is SpaceKind.TWISTED:
                    span = mode.span
                    break
                if mode.index.denominator != 1 and mode.tag in ("a", "h", "g") and space.kind is not SpaceKind.TWISTED:
                    span = mode.span
                    break
            raise ParseError(f"sector mismatch: {e}", text, span) from e
    logger.debug(f"Parsed {text!r} into {space.describe()}")
    return total


def state_from_text(text: str, context: Optional[ParseContext] = None) -> State:
    return evaluate(parse_state(text), context, text)


def operator_from_text(text: str, target: State, rank: Optional[int] = None) -> State:
    """Parse an operator state in the context of the state it acts on."""
    context = ParseContext(rank=rank, space=_operator_space(target.space))
    return state_from_text(text, context)
