"""
Oracle

Second, independent implementation of u_(n) v used only to cross-check
the field expansion in fields.py.

Instead of expanding normal-ordered fields it peels one creation mode off u
at a time and applies the iterate formula

    (a_(p) u')_(q) v = sum_{j >= 0} (-1)^j C(p, j)
                       [ a_(p-j) u'_(q+j) v - (-1)^p u'_(p+q-j) a_(j) v ]

down to the vacuum (or an exponential e^beta, handled with Schur
recursions for E^-(-beta, z) and E^+(-beta, z)).
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List

from .fields import ModeLike, apply_mode, check_acting, mode_bound, resolve_mode
from .scalars import ZERO, binom
from .states import BOSON_NORMS, Monomial, SpaceDescriptor, SpaceKind, State, sum_states

logger = logging.getLogger(__name__)


def _exponential_mode(space: SpaceDescriptor, beta: Fraction, n: Fraction, vmono: Monomial) -> State:
    """(e^beta)_(n) on a single lattice monomial."""
    tag = space.boson
    v = State(space, {vmono: Fraction(1)})
    if not beta:
        return v if n == -1 else State(space)
    shift = BOSON_NORMS[tag] * beta * vmono.momentum
    # S_k: coefficient of z^(-k) in E^+(-beta, z)
    lowering: List[State] = [v]
    for k in range(1, int(vmono.depth) + 1):
        acc = [apply_mode(space, tag, i, lowering[k - i]).scale(-beta / k) for i in range(1, k + 1)]
        lowering.append(sum_states(space, acc))
    out: List[State] = []
    for k, sk in enumerate(lowering):
        l = k - n - 1 - shift
        if l < 0 or not sk:
            continue
        if Fraction(l).denominator != 1:
            continue
        moved = State(space, {m.with_momentum(m.momentum + beta): c for m, c in sk.terms.items()})
        # T_l: coefficient of z^l in E^-(-beta, z)
        raising: List[State] = [moved]
        for j in range(1, int(l) + 1):
            acc = [apply_mode(space, tag, -i, raising[j - i]).scale(beta / j) for i in range(1, j + 1)]
            raising.append(sum_states(space, acc))
        out.append(raising[int(l)])
    return sum_states(space, out)


@lru_cache(maxsize=None)
def _monomial_mode(space: SpaceDescriptor, umono: Monomial, q: Fraction, vmono: Monomial) -> State:
    if q > mode_bound(space, umono, vmono):
        return State(space)
    if not umono.parts:
        beta = Fraction(umono.momentum) if space.kind is SpaceKind.LATTICE else ZERO
        return _exponential_mode(space, beta, q, vmono)
    part = umono.parts[0]
    tag, s = part
    rest = umono.without(part)
    delta = space.field_shift(tag)
    p = -s + delta
    sign_p = -1 if p % 2 else 1
    v = State(space, {vmono: Fraction(1)})
    terms: List[State] = []

    j = 0
    while q + j <= mode_bound(space, rest, vmono):
        c = binom(p, j) * (-1) ** j
        if c:
            inner = _mode_on_state(space, rest, q + j, v)
            terms.append(apply_mode(space, tag, p - j - delta, inner).scale(c))
        j += 1

    j = 0
    while j - delta <= vmono.depth:
        c = binom(p, j) * (-1) ** j
        if c:
            lowered = apply_mode(space, tag, j - delta, v)
            if lowered:
                terms.append(_mode_on_state(space, rest, p + q - j, lowered).scale(-sign_p * c))
        j += 1
    return sum_states(space, terms)


def _mode_on_state(space: SpaceDescriptor, umono: Monomial, q: Fraction, v: State) -> State:
    return sum_states(
        space, (_monomial_mode(space, umono, q, vmono).scale(c) for vmono, c in v.terms.items())
    )


def vertex_mode_oracle(u: State, n: ModeLike, v: State) -> State:
    """u_(n) v by the iterate recursion; must agree with fields.vertex_mode."""
    check_acting(u, v)
    q = resolve_mode(n, u)
    space = v.space
    out = []
    for umono, cu in u.terms.items():
        out.append(_mode_on_state(space, umono, q, v).scale(cu))
    return sum_states(space, out)
