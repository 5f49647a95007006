"""
Scalars

Exact coefficient tower used by every engine:

    Fraction  -  rationals (stdlib, always in lowest terms)
    Quad      -  a + b*sqrt(2) with rational a, b
    RatFunc   -  rational functions in the momentum parameter x with
                 coefficients in Q(sqrt 2), backed by sympy polynomials

Arithmetic between variants lands in the widest variant present and is
narrowed back whenever the value allows it, so a Quad never carries b == 0
and a RatFunc is never constant.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Union

import sympy
from sympy import Poly, QQ

logger = logging.getLogger(__name__)

LAMBDA = sympy.Symbol("x")
SQRT2_EXPR = sympy.sqrt(2)
QQ_SQRT2 = QQ.algebraic_field(SQRT2_EXPR)

ZERO = Fraction(0)
ONE = Fraction(1)


class Quad:
    """Element a + b*sqrt(2) of Q(sqrt 2) with b != 0."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __repr__(self) -> str:
        return f"Quad({self.a}, {self.b})"

    def __hash__(self) -> int:
        return hash(("quad", self.a, self.b))

    def __eq__(self, other) -> bool:
        if isinstance(other, Quad):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __neg__(self):
        return Quad(-self.a, -self.b)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _lift_quad(other)
        if o is None:
            return NotImplemented
        return _quad(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift_quad(other)
        if o is None:
            return NotImplemented
        return _quad(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _lift_quad(other)
        if o is None:
            return NotImplemented
        return _quad(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = _lift_quad(other)
        if o is None:
            return NotImplemented
        return _quad(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("Quad division by zero")
        return _quad(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        o = _lift_quad(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Quad) and o.b == 0:
            if o.a == 0:
                raise ZeroDivisionError("Quad division by zero")
            return _quad(self.a / o.a, self.b / o.a)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _lift_quad(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self):
        return Quad(self.a, -self.b)


def _lift_quad(value):
    if isinstance(value, Quad):
        return value
    if isinstance(value, (int, Fraction)):
        # Unnarrowed lift used only inside arithmetic
        q = Quad.__new__(Quad)
        q.a = Fraction(value)
        q.b = ZERO
        return q
    return None


def _quad(a: Fraction, b: Fraction):
    if b == 0:
        return a
    return Quad(a, b)


def sqrt2():
    return Quad(0, 1)


def to_sympy(value) -> sympy.Expr:
    """Convert a Fraction or Quad into a sympy number."""
    if isinstance(value, Quad):
        return sympy.Rational(value.a.numerator, value.a.denominator) + sympy.Rational(
            value.b.numerator, value.b.denominator
        ) * SQRT2_EXPR
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(expr) -> "Scalar":
    """Read a sympy element of Q(sqrt 2) back into the tower."""
    expr = sympy.expand(sympy.sympify(expr))
    b = expr.coeff(SQRT2_EXPR)
    a = sympy.expand(expr - b * SQRT2_EXPR)
    if not (a.is_Rational and sympy.sympify(b).is_Rational):
        raise ValueError(f"{expr} is not an element of Q(sqrt 2)")
    a_frac = Fraction(int(a.p), int(a.q))
    b = sympy.Rational(b)
    return _quad(a_frac, Fraction(int(b.p), int(b.q)))


def _const_poly(value) -> Poly:
    if isinstance(value, Quad):
        return Poly(to_sympy(value), LAMBDA, domain=QQ_SQRT2)
    value = Fraction(value)
    return Poly(sympy.Rational(value.numerator, value.denominator), LAMBDA, domain=QQ)


class RatFunc:
    """
    Rational function num/den in the formal momentum x.

    Stored with a monic denominator coprime to the numerator. Construct
    through ``RatFunc.make`` so that constants narrow to Fraction or Quad.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den
        self._hash = hash(("ratfunc", num.as_expr(), den.as_expr()))

    @classmethod
    def make(cls, num: Poly, den: Poly = None):
        if den is None:
            den = Poly(1, LAMBDA, domain=QQ)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            return ZERO
        if not den.is_ground:
            g = num.gcd(den)
            if not g.is_ground:
                num = num.exquo(g)
                den = den.exquo(g)
        lc = den.LC()
        if lc != 1:
            scale = Poly(lc, LAMBDA, domain=den.get_domain())
            num = num.exquo(scale)
            den = den.exquo(scale)
        if num.is_ground and den.is_ground:
            return from_sympy(num.LC())
        return cls(num, den)

    @classmethod
    def variable(cls):
        return cls.make(Poly(LAMBDA, LAMBDA, domain=QQ))

    @classmethod
    def from_expr(cls, expr):
        """Build from a sympy expression in x (coefficients in Q(sqrt 2))."""
        num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
        return cls.make(_expr_poly(num), _expr_poly(den))

    def __repr__(self) -> str:
        return f"RatFunc({self.num.as_expr()}, {self.den.as_expr()})"

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Quad)):
            return False
        return NotImplemented

    def __bool__(self) -> bool:
        return True

    def _parts(self, other):
        if isinstance(other, RatFunc):
            return other.num, other.den
        if isinstance(other, (int, Fraction, Quad)):
            return _const_poly(other), None
        return None

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        num, den = parts
        if den is None or den == self.den:
            den_ = self.den
            return RatFunc.make(self.num + (num * den_ if den is None else num), den_)
        return RatFunc.make(self.num * den + num * self.den, self.den * den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        num, den = parts
        if den is None:
            if num.is_zero:
                return ZERO
            return RatFunc.make(self.num * num, self.den)
        if self.den.is_one and den.is_one:
            return RatFunc.make(self.num * num)
        return RatFunc.make(self.num * num, self.den * den)

    __rmul__ = __mul__

    def inverse(self):
        return RatFunc.make(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, Quad)):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return self * (ONE / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RatFunc.make(self.num ** exponent, self.den ** exponent)

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_one

    def evaluate(self, value) -> "Scalar":
        """Specialize x to a Fraction or Quad."""
        point = to_sympy(value)
        den = self.den.eval(point)
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at x = {value}")
        return from_sympy(self.num.eval(point)) / from_sympy(den)


def _expr_poly(expr) -> Poly:
    expr = sympy.sympify(expr)
    if expr.has(SQRT2_EXPR):
        return Poly(expr, LAMBDA, domain=QQ_SQRT2)
    return Poly(expr, LAMBDA, domain=QQ)


Scalar = Union[Fraction, Quad, RatFunc]


def is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, Quad, RatFunc))


def as_scalar(value) -> Scalar:
    """Coerce ints and Fractions (and already-built scalars) into the tower."""
    if isinstance(value, (Quad, RatFunc)):
        return value
    if isinstance(value, (int, Fraction, str)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def is_rational(value) -> bool:
    return isinstance(value, (int, Fraction))


def is_parametric(value) -> bool:
    return isinstance(value, RatFunc)


def scalar_to_poly(value) -> Poly:
    """Polynomial view of a scalar whose denominator is 1."""
    if isinstance(value, RatFunc):
        if not value.is_polynomial:
            raise ValueError(f"{value!r} is not a polynomial in x")
        return value.num
    return _const_poly(value)


def poly_to_scalar(poly: Poly) -> Scalar:
    return RatFunc.make(poly)


def specialize(value, point) -> Scalar:
    """Evaluate x := point inside any scalar; constants pass through."""
    if isinstance(value, RatFunc):
        return value.evaluate(point)
    return value


@lru_cache(maxsize=None)
def binom(top: Fraction, j: int) -> Fraction:
    """Generalized binomial coefficient C(top, j) for rational top."""
    if j < 0:
        return ZERO
    result = ONE
    for i in range(j):
        result = result * (top - i) / (i + 1)
    return result
