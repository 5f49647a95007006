"""
Twisted Sector

theta-twisted vertex operators on the twisted Fock module M(1)(theta):

    Y_tw(v, z) = W(Delta_z v, z)

where W(h(-m1)...h(-mr)1, z) = :d^(m1-1) h(z) ... d^(mr-1) h(z): with
h(z) = sum_{r in 1/2 + Z} h(r) z^(-r-1), and

    Delta_z = exp( sum_{m,n >= 0} c_mn a(m) a(n) z^(-m-n) )

with sum c_mn x^m y^n = -log( ((1+x)^(1/2) + (1+y)^(1/2)) / 2 ).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Tuple

from .errors import SectorError, SpaceMismatchError
from .fields import ModeLike, apply_mode, monomial_factors, normal_ordered_coefficient, resolve_mode
from .scalars import ONE, ZERO, Scalar, binom
from .states import HALF, SpaceDescriptor, SpaceKind, State, sum_states

logger = logging.getLogger(__name__)

TWISTED = SpaceDescriptor.twisted()

Series2 = Dict[Tuple[int, int], Fraction]


def _mul2(a: Series2, b: Series2, order: int) -> Series2:
    out: Series2 = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            if i1 + i2 + j1 + j2 > order:
                continue
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, ZERO) + c1 * c2
    return {k: c for k, c in out.items() if c}


@dataclass(frozen=True)
class DeltaCorrection:
    """Coefficient table c_mn for m + n <= order."""

    order: int
    table: Mapping[Tuple[int, int], Fraction]

    def coefficient(self, m: int, n: int) -> Fraction:
        if m + n > self.order:
            raise ValueError(f"c_{m}{n} beyond the generated order {self.order}")
        return self.table.get((m, n), ZERO)


@lru_cache(maxsize=None)
def delta_coefficients(order: int) -> DeltaCorrection:
    """Expand -log(((1+x)^(1/2) + (1+y)^(1/2))/2) up to total degree `order`."""
    s: Series2 = {}
    for k in range(1, order + 1):
        c = binom(HALF, k) / 2
        s[(k, 0)] = s.get((k, 0), ZERO) + c
        s[(0, k)] = s.get((0, k), ZERO) + c
    table: Series2 = {}
    power: Series2 = {(0, 0): ONE}
    for k in range(1, order + 1):
        power = _mul2(power, s, order)
        sign = 1 if k % 2 == 0 else -1
        for key, c in power.items():
            table[key] = table.get(key, ZERO) + sign * c / k
    table = {k: c for k, c in table.items() if c}
    logger.debug(f"Generated {len(table)} Delta_z coefficients to order {order}")
    return DeltaCorrection(order, table)


def _require_untwisted_neutral(v: State) -> None:
    if v.space.kind is not SpaceKind.HEISENBERG:
        raise SectorError(f"Delta_z acts on M(1), not {v.space.describe()}")
    for mono in v.terms:
        if mono.momentum != 0:
            raise SectorError("Delta_z is only applied to momentum-zero states")


def delta_apply(v: State, order: int = None) -> Dict[Fraction, State]:
    """
    Delta_z v as a family of states indexed by the power of z.

    The exponential is exact: every quadratic term lowers depth, so the
    series stops once the depth of v is used up.
    """
    _require_untwisted_neutral(v)
    space = v.space
    tag = space.boson
    depth = max((m.depth for m in v.terms), default=ZERO)
    top = int(depth)
    table = delta_coefficients(max(order or 0, top, 2))
    family: Dict[Fraction, State] = {ZERO: v}
    term: Dict[Fraction, State] = {ZERO: v}
    k = 1
    while term:
        nxt: Dict[Fraction, list] = {}
        for power, st in term.items():
            avail = int(max((m.depth for m in st.terms), default=ZERO))
            for m in range(0, avail + 1):
                for n in range(0, avail + 1 - m):
                    c = table.coefficient(m, n)
                    if not c:
                        continue
                    image = apply_mode(space, tag, m, apply_mode(space, tag, n, st))
                    if image:
                        nxt.setdefault(power - m - n, []).append(image.scale(c / k))
        term = {}
        for power, images in nxt.items():
            total = sum_states(space, images)
            if total:
                term[power] = total
        for power, st in term.items():
            family[power] = family[power] + st if power in family else st
        k += 1
    return {p: s for p, s in sorted(family.items(), reverse=True) if s}


def theta_parity(u: State) -> int:
    """+1 for theta-even, -1 for theta-odd; mixed states are rejected."""
    parities = {m.length % 2 for m in u.terms}
    if len(parities) > 1:
        raise SectorError("operator mixes theta-even and theta-odd parts")
    return -1 if parities == {1} else 1


def twisted_vertex_mode(u: State, n: ModeLike, v: State) -> State:
    """
    u_(n) on the twisted module.

    Args:
        u: momentum-zero M(1) state (generator 'a' or 'h')
        n: formal mode; integral for theta-even u, in 1/2 + Z for theta-odd u
        v: twisted-sector state

    Returns:
        Twisted-sector state
    """
    if v.space.kind is not SpaceKind.TWISTED:
        raise SpaceMismatchError(u.space, v.space, "twist-act with")
    _require_untwisted_neutral(u)
    formal = resolve_mode(n, u)
    if u.is_zero():
        return State(TWISTED)
    integral = formal.denominator == 1
    if integral != (theta_parity(u) == 1):
        raise SectorError(
            f"mode ({formal}) does not match the theta-parity of the operator"
        )
    acc: Dict = {}
    for power, ue in delta_apply(u).items():
        for umono, cu in ue.terms.items():
            factors = tuple(("h", j) for _, j in monomial_factors(u.space, umono))
            for vmono, cv in v.terms.items():
                for mono, c in normal_ordered_coefficient(TWISTED, factors, ZERO, vmono, -formal - 1 - power):
                    acc[mono] = acc.get(mono, ZERO) + cu * cv * c
    return State(TWISTED, acc)


def twisted_vacuum() -> State:
    return State.vacuum(TWISTED)


def twisted_top(sign: int, i: int) -> State:
    """h(-1/2)^(2i) 1_tw for sign +, h(-1/2)^(2i+1) 1_tw for sign -."""
    count = 2 * i + (0 if sign == 1 else 1)
    return State.monomial(TWISTED, [("h", HALF)] * count)
