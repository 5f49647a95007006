"""
QSeries

Truncated q-series with a rational offset, the closed-form characters of
the free-field modules, their basis-enumeration counterparts and the
decomposition identities checked between them.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .checks import Check, check_equal, check_true
from .states import HALF, SpaceDescriptor, basis, parity_basis
from .twisted import TWISTED

logger = logging.getLogger(__name__)

SIXTEENTH = Fraction(1, 16)
MIN_MEANINGFUL_ORDER = 8


@dataclass(frozen=True, eq=False)
class QSeries:
    """
    sum_j coeffs[j] q^(offset + j*step), known through j = len(coeffs) - 1.
    Half-integer graded modules use step 1/2.
    """

    offset: Fraction
    coeffs: Tuple[int, ...]
    step: Fraction = Fraction(1)

    @classmethod
    def make(cls, offset, coeffs: Iterable[int], step=1) -> "QSeries":
        return cls(Fraction(offset), tuple(int(c) for c in coeffs), Fraction(step))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def known_to(self) -> Fraction:
        """Largest exponent whose coefficient is exact."""
        return self.offset + self.order * self.step

    def coefficient(self, exponent) -> int:
        j = (Fraction(exponent) - self.offset) / self.step
        if j.denominator != 1 or j < 0 or j > self.order:
            return 0
        return self.coeffs[int(j)]

    def exponents(self) -> List[Fraction]:
        return [self.offset + j * self.step for j in range(len(self.coeffs))]

    def _grid(self, other: "QSeries") -> Tuple[Fraction, Fraction, Fraction]:
        start = min(self.offset, other.offset)
        step = _fraction_gcd([self.step, other.step, self.offset - start, other.offset - start])
        return start, step, min(self.known_to, other.known_to)

    def __add__(self, other: "QSeries") -> "QSeries":
        start, step, end = self._grid(other)
        n = int((end - start) / step)
        coeffs = [self.coefficient(start + j * step) + other.coefficient(start + j * step) for j in range(n + 1)]
        return QSeries(start, tuple(coeffs), step)

    def __neg__(self) -> "QSeries":
        return QSeries(self.offset, tuple(-c for c in self.coeffs), self.step)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, factor: int) -> "QSeries":
        return QSeries(self.offset, tuple(factor * c for c in self.coeffs), self.step)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self.step != other.step:
            step = min(self.step, other.step)
            return self.refine(step) * other.refine(step)
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i in range(n + 1):
            if self.coeffs[i]:
                for j in range(n + 1 - i):
                    out[i + j] += self.coeffs[i] * other.coeffs[j]
        return QSeries(self.offset + other.offset, tuple(out), self.step)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        start, step, end = self._grid(other)
        e = start
        while e <= end:
            if self.coefficient(e) != other.coefficient(e):
                return False
            e += step
        return True

    __hash__ = None

    def refine(self, step) -> "QSeries":
        """Same series on a finer exponent grid."""
        step = Fraction(step)
        ratio = self.step / step
        if ratio.denominator != 1:
            raise ValueError(f"cannot refine step {self.step} to {step}")
        r = int(ratio)
        out = [0] * (self.order * r + 1)
        for j, c in enumerate(self.coeffs):
            out[j * r] = c
        return QSeries(self.offset, tuple(out), step)

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.offset, self.coeffs[: order + 1], self.step)

    def normalized(self) -> "QSeries":
        """Drop leading zeros into the offset; use step 1 when the support allows it."""
        k = 0
        while k < len(self.coeffs) - 1 and self.coeffs[k] == 0:
            k += 1
        coeffs = self.coeffs[k:]
        offset = self.offset + k * self.step
        if self.step == HALF and all(c == 0 for c in coeffs[1::2]):
            return QSeries(offset, coeffs[::2], Fraction(1))
        return QSeries(offset, coeffs, self.step)

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __repr__(self) -> str:
        from .printing import format_series

        return format_series(self)


def _fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    out = Fraction(0)
    for v in values:
        v = abs(Fraction(v))
        if v:
            out = Fraction(math.gcd(out.numerator * v.denominator, v.numerator * out.denominator), out.denominator * v.denominator) if out else v
    return out


def _divide_by_factors(n: int, factors: Iterable[Tuple[int, int]]) -> List[int]:
    """1 / prod (1 - eps t^k) to order t^n for the (k, eps) given."""
    out = [0] * (n + 1)
    out[0] = 1
    for k, eps in factors:
        if k > n:
            continue
        for j in range(k, n + 1):
            out[j] += eps * out[j - k]
    return out


def partition_series(n: int) -> List[int]:
    return _divide_by_factors(n, [(k, 1) for k in range(1, n + 1)])


def _half_factors(n_t: int, sign: int, power: int = 1) -> List[Tuple[int, int]]:
    """(1 - sign t^k)^power over odd k, as repeated factors."""
    return [(k, sign) for k in range(1, n_t + 1, 2) for _ in range(power)]


def _halve(values: Sequence[int]) -> List[int]:
    if any(v % 2 for v in values):
        raise ArithmeticError("graded trace average is not integral")
    return [v // 2 for v in values]


def char_fock(momentum_weight, order: int) -> QSeries:
    """q^w / prod (1 - q^n)."""
    return QSeries.make(momentum_weight, partition_series(order))


def theta_trace(order: int) -> QSeries:
    """Trace of theta on M(1): 1 / prod (1 + q^n)."""
    return QSeries.make(0, _divide_by_factors(order, [(k, -1) for k in range(1, order + 1)]))


def twisted_fock(order: int, trace: bool = False) -> QSeries:
    """q^(1/16) / prod (1 -+ q^(n-1/2)), in steps of 1/2 to depth order."""
    n_t = 2 * order + 1
    return QSeries.make(SIXTEENTH, _divide_by_factors(n_t, _half_factors(n_t, -1 if trace else 1)), HALF)


def char_orbifold(sign: int, twisted: bool, order: int) -> QSeries:
    """Characters of M(1)^+-, M(1)(theta)^+- to relative depth order."""
    if twisted:
        full, tr = twisted_fock(order), twisted_fock(order, trace=True)
    else:
        full, tr = char_fock(0, order), theta_trace(order)
    raw = full + tr.scale(sign)
    halved = QSeries(raw.offset, tuple(_halve(raw.coeffs)), raw.step).normalized()
    return halved.truncate(order)


def char_virasoro_c1(m: int, order: int) -> QSeries:
    """L(1, m^2/4): q^(m^2/4)(1 - q^(m+1)) / prod (1 - q^n)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    p = partition_series(order)
    coeffs = [p[j] - (p[j - m - 1] if j >= m + 1 else 0) for j in range(order + 1)]
    return QSeries.make(Fraction(m * m, 4), coeffs)


def _theta_sum(order: int, shift: Fraction) -> List[int]:
    """sum_j q^((j+shift)^2 - shift^2) to order."""
    out = [0] * (order + 1)
    j = -order - 2
    while j <= order + 2:
        e = (j + shift) ** 2 - shift**2
        if 0 <= e <= order and e.denominator == 1:
            out[int(e)] += 1
        j += 1
    return out


def char_lattice(order: int, half: bool = False) -> QSeries:
    """V_L (or V_(L+gamma/2) when half): theta function over eta-type product."""
    shift = HALF if half else Fraction(0)
    theta = QSeries.make(shift**2, _theta_sum(order, shift))
    return theta * char_fock(0, order)


def char_weyl(rank: int, parity: int, order: int) -> QSeries:
    """
    S(rank)^(parity) graded by L(0) (no q^(-c/24)); parity 0 is the even
    part. Computed on the half-integer grid to weight order.
    """
    n_t = 2 * order
    full = _divide_by_factors(n_t, _half_factors(n_t, 1, 2 * rank))
    tr = _divide_by_factors(n_t, _half_factors(n_t, -1, 2 * rank))
    sign = 1 if parity == 0 else -1
    coeffs = _halve([a + sign * b for a, b in zip(full, tr)])
    return QSeries.make(0, coeffs, HALF).normalized()


def char_weyl_full(rank: int, order: int) -> QSeries:
    n_t = 2 * order
    return QSeries.make(0, _divide_by_factors(n_t, _half_factors(n_t, 1, 2 * rank)), HALF)


def char_u(n: int, order: int) -> QSeries:
    """S(n-1)^even x M(1)^+  +  S(n-1)^odd x M(1)^-."""
    even = char_weyl(n - 1, 0, order)
    odd = char_weyl(n - 1, 1, order)
    plus = char_orbifold(1, False, order)
    minus = char_orbifold(-1, False, order)
    return (even * plus + odd * minus).refine(HALF).truncate(2 * order)


def char_u_trace(n: int, order: int) -> QSeries:
    """Half the sum of the graded dimension and the parity x theta trace of S(n-1) x M(1)."""
    n_t = 2 * order
    full = QSeries.make(0, _divide_by_factors(n_t, _half_factors(n_t, 1, 2 * (n - 1))), HALF)
    tr = QSeries.make(0, _divide_by_factors(n_t, _half_factors(n_t, -1, 2 * (n - 1))), HALF)
    raw = full * char_fock(0, order) + tr * theta_trace(order)
    return QSeries(raw.offset, tuple(_halve(raw.coeffs)), raw.step)


# basis enumeration


def enum_fock(order: int) -> QSeries:
    space = SpaceDescriptor.heisenberg()
    return QSeries.make(0, [len(basis(space, d)) for d in range(order + 1)])


def enum_orbifold(sign: int, twisted: bool, order: int) -> QSeries:
    if not twisted:
        space = SpaceDescriptor.heisenberg()
        return QSeries.make(0, [len(parity_basis(space, d, sign)) for d in range(order + 1)]).normalized()
    start = Fraction(0) if sign == 1 else HALF
    dims = [len(parity_basis(TWISTED, start + d, sign)) for d in range(order + 1)]
    return QSeries.make(SIXTEENTH + start, dims)


def enum_virasoro(m: int, order: int) -> QSeries:
    """Levels of the Virasoro submodule generated by e^(m gamma/2) in V_L + V_(L+gamma/2)."""
    from .lattice import exponential
    from .virasoro import virasoro_submodule_dims

    hw = exponential(Fraction(m, 2))
    return QSeries.make(Fraction(m * m, 4), virasoro_submodule_dims(hw, order))


def enum_lattice(order: int, half: bool = False) -> QSeries:
    from .lattice import LATTICE

    shift = HALF if half else Fraction(0)
    dims = [0] * (order + 1)
    j = -order - 1
    while j <= order + 1:
        r = j + shift
        base = r * r - shift * shift
        for d in range(order + 1):
            e = base + d
            if e.denominator == 1 and 0 <= e <= order:
                dims[int(e)] += len(basis(LATTICE, d, r))
        j += 1
    return QSeries.make(shift * shift, dims)


def enum_weyl(rank: int, parity: int, order: int) -> QSeries:
    space = SpaceDescriptor.weyl(rank)
    keep = parity % 2
    dims = []
    for j in range(2 * order + 1):
        dims.append(sum(1 for m in basis(space, Fraction(j, 2)) if m.length % 2 == keep))
    return QSeries.make(0, dims, HALF).normalized()


def enum_u(n: int, order: int) -> QSeries:
    from .weyl import fixed_basis

    return QSeries.make(0, [len(fixed_basis(n - 1, Fraction(j, 2))) for j in range(2 * order + 1)], HALF)


def enum_tensor(n: int, order: int) -> QSeries:
    space = SpaceDescriptor.tensor(n - 1)
    return QSeries.make(0, [len(basis(space, Fraction(j, 2))) for j in range(2 * order + 1)], HALF)


# identities


def _warn_order(order: int) -> None:
    if order < MIN_MEANINGFUL_ORDER:
        logger.warning(f"Truncation order {order} is below {MIN_MEANINGFUL_ORDER}; identities are weak evidence")


def closed_form_checks(order: int, tensor_order: int, ranks: Sequence[int] = (1, 2, 3)) -> List[Check]:
    """Every closed-form character against basis enumeration."""
    _warn_order(order)
    p = (("order", str(order)),)
    checks = [check_equal("fock", enum_fock(order), char_fock(0, order), p)]
    for sign, twisted, name in ((1, False, "M(1)^+"), (-1, False, "M(1)^-"), (1, True, "M(1)(theta)^+"), (-1, True, "M(1)(theta)^-")):
        checks.append(check_equal(f"orbifold {name}", enum_orbifold(sign, twisted, order), char_orbifold(sign, twisted, order), p))
    for m in range(0, 5):
        checks.append(
            check_equal(
                f"virasoro c=1 m={m}",
                enum_virasoro(m, order),
                char_virasoro_c1(m, order),
                (("m", str(m)), ("order", str(order))),
            )
        )
    for half in (False, True):
        name = "V_(L+gamma/2)" if half else "V_L"
        checks.append(check_equal(f"lattice {name}", enum_lattice(order, half), char_lattice(order, half), p))
    for rank in ranks:
        w_order = max(1, tensor_order // rank)
        for parity in (0, 1):
            checks.append(
                check_equal(
                    f"weyl S({rank}) parity {parity}",
                    enum_weyl(rank, parity, w_order),
                    char_weyl(rank, parity, w_order),
                    (("rank", str(rank)), ("order", str(w_order))),
                )
            )
    return checks


def telescoping_checks(order: int, m_max: int = 4) -> List[Check]:
    """M(1, m/sqrt 2) = sum_k L(1, (m/2+k)^2) as characters."""
    _warn_order(order)
    checks = []
    for m in range(0, m_max + 1):
        total = None
        k = 0
        while Fraction((m + 2 * k) ** 2, 4) - Fraction(m * m, 4) <= order:
            term = char_virasoro_c1(m + 2 * k, order)
            total = term if total is None else total + term
            k += 1
        fock = char_fock(Fraction(m * m, 4), order)
        checks.append(check_equal(f"M(1,{m}/s2) decomposition", fock, total.truncate(order), (("m", str(m)), ("order", str(order)))))
    return checks


def lattice_decomposition_checks(order: int) -> List[Check]:
    """V_L = sum (2m+1) L(1, m^2) and V_(L+gamma/2) = sum (2m+2) L(1, (2m+1)^2/4)."""
    checks = []
    for half in (False, True):
        total = None
        m = 0
        while True:
            index = 2 * m + 1 if half else 2 * m
            if Fraction(index * index, 4) > order + 1:
                break
            mult = 2 * m + 2 if half else 2 * m + 1
            term = char_virasoro_c1(index, order).scale(mult)
            total = term if total is None else total + term
            m += 1
        lhs = char_lattice(order, half)
        name = "V_(L+gamma/2)" if half else "V_L"
        checks.append(check_equal(f"{name} sl2 x Virasoro decomposition", lhs, total.truncate(lhs.order), (("order", str(order)),)))
    return checks


def u_checks(n: int, order: int) -> List[Check]:
    p = (("n", str(n)), ("order", str(order)))
    direct = enum_u(n, order)
    return [
        check_equal(f"U(n={n}) decomposition = enumeration", direct, char_u(n, order), p),
        check_equal(f"U(n={n}) fixed-point trace = enumeration", direct, char_u_trace(n, order), p),
        check_equal(
            f"S({n - 1}) x M(1) character is a product",
            enum_tensor(n, order),
            (char_weyl_full(n - 1, order) * char_fock(0, order)).truncate(2 * order),
            p,
        ),
        check_true(f"U(n={n}) coefficients nonnegative", direct.nonnegative(), p),
    ]


def verify_decompositions(order: int, tensor_order: int = 8, telescoping_order: int = 20, u_ranks: Sequence[int] = (2, 3)) -> List[Check]:
    _warn_order(order)
    checks: List[Check] = []
    checks += telescoping_checks(telescoping_order)
    checks += lattice_decomposition_checks(order)
    for n in u_ranks:
        checks += u_checks(n, tensor_order)
    return checks
