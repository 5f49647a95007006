"""
Tensor Products

States of S(n) x M(1)[h] are stored as single monomials in the combined
generator set; this module splits them into pure tensors and implements the
tensor-product mode formula

    (a x b)_(n) (x x y) = sum_j a_(j) x  x  b_(n-1-j) y
"""

import logging
from fractions import Fraction
from typing import Dict, Tuple

from .errors import SpaceMismatchError
from .fields import ModeLike, check_acting, resolve_mode, vertex_mode
from .scalars import ZERO
from .states import Monomial, SpaceDescriptor, SpaceKind, State, is_weyl

logger = logging.getLogger(__name__)


def factor_spaces(space: SpaceDescriptor) -> Tuple[SpaceDescriptor, SpaceDescriptor]:
    if space.kind is not SpaceKind.TENSOR:
        raise SpaceMismatchError(space, space, "split a non-tensor state of")
    return SpaceDescriptor.weyl(space.rank), SpaceDescriptor.heisenberg("h")


def split_monomial(mono: Monomial) -> Tuple[Monomial, Monomial]:
    weyl = [p for p in mono.parts if is_weyl(p[0])]
    boson = [p for p in mono.parts if not is_weyl(p[0])]
    return Monomial.make(weyl), Monomial.make(boson, mono.momentum)


def join_monomials(weyl: Monomial, boson: Monomial) -> Monomial:
    return Monomial.make(weyl.parts + boson.parts, boson.momentum)


def tensor_product(left: State, right: State) -> State:
    """left in S(n), right in M(1)[h]  ->  left x right in S(n) x M(1)."""
    if left.space.kind is not SpaceKind.WEYL:
        raise SpaceMismatchError(left.space, right.space, "tensor")
    if right.space != SpaceDescriptor.heisenberg("h"):
        raise SpaceMismatchError(left.space, right.space, "tensor")
    space = SpaceDescriptor.tensor(left.space.rank)
    acc: Dict[Monomial, object] = {}
    for a, ca in left.terms.items():
        for b, cb in right.terms.items():
            mono = join_monomials(a, b)
            acc[mono] = acc.get(mono, ZERO) + ca * cb
    return State(space, acc)


def tensor_mode(u: State, n: ModeLike, v: State) -> State:
    """
    u_(n) v on S(n) x M(1) through the pure-tensor formula.

    The sum over j is cut at depth(a) + depth(x) - 1 on the Weyl side and at
    the matching bound on the Heisenberg side.
    """
    if u.space.kind is not SpaceKind.TENSOR or u.space != v.space:
        raise SpaceMismatchError(u.space, v.space, "tensor-act with")
    check_acting(u, v)
    formal = resolve_mode(n, u)
    weyl_space, boson_space = factor_spaces(v.space)
    acc: Dict[Monomial, object] = {}
    for umono, cu in u.terms.items():
        ua, ub = split_monomial(umono)
        a = State(weyl_space, {ua: Fraction(1)})
        b = State(boson_space, {ub: Fraction(1)})
        for vmono, cv in v.terms.items():
            vx, vy = split_monomial(vmono)
            x = State(weyl_space, {vx: Fraction(1)})
            y = State(boson_space, {vy: Fraction(1)})
            hi = int(ua.depth + vx.depth - 1)
            lo = int(formal - 1 - (ub.depth + vy.depth - 1))
            for j in range(lo, hi + 1):
                left = vertex_mode(a, j, x)
                if not left:
                    continue
                right = vertex_mode(b, formal - 1 - j, y)
                for lm, lc in left.terms.items():
                    for rm, rc in right.terms.items():
                        mono = join_monomials(lm, rm)
                        acc[mono] = acc.get(mono, ZERO) + cu * cv * lc * rc
    return State(v.space, acc)
