"""
Printing

Canonical text for scalars, states and q-series. The output is accepted
back by parser.parse_state, and reports rely on it being stable:
rationals as p/q, sqrt 2 as s2, the momentum parameter as x, terms in
graded-lex monomial order.
"""

from fractions import Fraction
from typing import List, Tuple

from .scalars import LAMBDA, Quad, RatFunc, from_sympy
from .states import Monomial, SpaceDescriptor, SpaceKind, State


def _fraction(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _quad(q: Quad) -> str:
    if q.b == 1:
        b = "s2"
    elif q.b == -1:
        b = "-s2"
    else:
        b = f"{_fraction(q.b)} s2"
    if not q.a:
        return b
    if b.startswith("-"):
        return f"{_fraction(q.a)} - {b[1:]}"
    return f"{_fraction(q.a)} + {b}"


def _poly_terms(poly) -> List[Tuple[int, object]]:
    domain = poly.get_domain()
    return [(deg[0], from_sympy(domain.to_sympy(c))) for deg, c in poly.terms()]


def _power(deg: int) -> str:
    if deg == 0:
        return ""
    return str(LAMBDA) if deg == 1 else f"{LAMBDA}^{deg}"


def _poly(poly) -> str:
    pieces: List[str] = []
    for deg, c in _poly_terms(poly):
        var = _power(deg)
        negative = (isinstance(c, Fraction) and c < 0) or (isinstance(c, Quad) and not c.a and c.b < 0)
        mag = -c if negative else c
        if not var:
            body = format_scalar(mag)
        elif mag == 1:
            body = var
        elif isinstance(mag, Quad) and mag.a:
            body = f"({_quad(mag)}) {var}"
        else:
            body = f"{format_scalar(mag)} {var}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def format_scalar(c) -> str:
    if isinstance(c, RatFunc):
        if c.is_polynomial:
            return _poly(c.num)
        return f"({_poly(c.num)})/({_poly(c.den)})"
    if isinstance(c, Quad):
        return _quad(c)
    return _fraction(c)


def _is_compound(c) -> bool:
    if isinstance(c, RatFunc):
        return not c.is_polynomial or len(c.num.terms()) > 1
    return isinstance(c, Quad) and bool(c.a)


def _mode(tag: str, depth: Fraction) -> str:
    return f"{tag}({_fraction(-depth)})"


def format_ket(space: SpaceDescriptor, momentum) -> str:
    if space.kind is SpaceKind.TWISTED:
        return "|tw>"
    if not momentum:
        return "|0>"
    if space.kind is SpaceKind.LATTICE:
        return f"|e:{_fraction(momentum)}>"
    if isinstance(momentum, RatFunc) and momentum == RatFunc.variable():
        return "|lam>"
    return f"|mom:{format_scalar(momentum)}>"


def format_monomial(space: SpaceDescriptor, mono: Monomial) -> str:
    modes = " ".join(_mode(t, d) for t, d in mono.parts)
    ket = format_ket(space, mono.momentum)
    return f"{modes} {ket}" if modes else ket


def _coefficient_prefix(c) -> Tuple[bool, str]:
    """(negative, text to put before the monomial)."""
    if isinstance(c, (int, Fraction)):
        negative = c < 0
        mag = -c if negative else c
        return negative, "" if mag == 1 else f"{_fraction(mag)} "
    if _is_compound(c):
        return False, f"({format_scalar(c)}) "
    text = format_scalar(c)
    if text.startswith("-"):
        return True, f"{text[1:]} "
    return False, f"{text} "


def format_state(state: State) -> str:
    if not state:
        return "0"
    pieces: List[str] = []
    for mono, c in state.items():
        negative, prefix = _coefficient_prefix(c)
        body = prefix + format_monomial(state.space, mono)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def _q_power(e: Fraction) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "q"
    return f"q^{_fraction(e)}" if e.denominator == 1 else f"q^({_fraction(e)})"


def format_series(series) -> str:
    """q^offset (c0 + c1 q + ...), truncated terms shown as O(q^N)."""
    step = Fraction(getattr(series, "step", 1))
    terms = []
    for j, c in enumerate(series.coeffs):
        if not c:
            continue
        q = _q_power(j * step)
        if not q:
            terms.append(str(c))
        elif c == 1:
            terms.append(q)
        else:
            terms.append(f"{c} {q}")
    body = " + ".join(terms) if terms else "0"
    body = body.replace("+ -", "- ")
    tail = f" + O({_q_power(len(series.coeffs) * step)})"
    if series.offset:
        return f"q^({_fraction(series.offset)}) ({body}{tail})"
    return body + tail


def format_value(value) -> str:
    """Report text for any computed value."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, State):
        return format_state(value)
    if isinstance(value, (int, Fraction, Quad, RatFunc)):
        return format_scalar(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    if hasattr(value, "coeffs") and hasattr(value, "offset"):
        return format_series(value)
    return str(value)
