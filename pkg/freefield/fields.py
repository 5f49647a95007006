"""
Fields

Mode products u_(n) v for free-field states by normal-ordered field
expansion.

A creation monomial tag1(-s1) ... tagk(-sk) e^beta corresponds to the field

    : d^(j1) phi_1(z) ... d^(jk) phi_k(z) Y(e^beta, z) :,   j = s - 1 - delta

with d^(j) phi(z) = sum_r C(-r-1-delta, j) phi(r) z^(-r-1-delta-j). Each
factor is split into its creation and annihilation halves; the annihilation
halves (zero modes included) act on v first, then the lattice exponential
E^+(-beta, z) z^(beta, mu) e_beta, and finally the creation halves together
with E^-(-beta, z) distribute the remaining power of z. All sums are finite:
an annihilation half can only remove parts that v has, and the creation
powers are bounded below.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple, Union

from .errors import ConventionError, NotInAlgebraError, SectorError, SpaceMismatchError
from .scalars import ONE, ZERO, Scalar, binom
from .states import (
    BOSON_NORMS,
    Monomial,
    SpaceDescriptor,
    SpaceKind,
    State,
    compositions,
    is_weyl,
    iter_subsets,
    pairing,
)

logger = logging.getLogger(__name__)

Factor = Tuple[str, int]
Vec = Dict[Monomial, Scalar]


class Convention(str, Enum):
    FORMAL = "formal"
    WEIGHTED = "weighted"


@dataclass(frozen=True)
class ModeIndex:
    """
    A mode label with its convention.

    formal:   u_(n), the coefficient of z^(-n-1) in Y(u, z)
    weighted: u_n := u_(n + wt(u) - 1), defined for homogeneous u only
    """

    value: Fraction
    convention: Convention = Convention.FORMAL

    @classmethod
    def formal(cls, n) -> "ModeIndex":
        return cls(Fraction(n), Convention.FORMAL)

    @classmethod
    def weighted(cls, n) -> "ModeIndex":
        return cls(Fraction(n), Convention.WEIGHTED)

    def to_formal(self, u: State) -> Fraction:
        if self.convention is Convention.FORMAL:
            return self.value
        if not u.is_homogeneous():
            raise ConventionError("weighted modes need a homogeneous state")
        wt = u.weight()
        if not isinstance(wt, (int, Fraction)):
            raise ConventionError(f"weighted mode of a state with non-rational weight {wt}")
        return self.value + wt - 1

    def __str__(self) -> str:
        return f"({self.value})" if self.convention is Convention.FORMAL else f"{self.value}"


ModeLike = Union[ModeIndex, int, Fraction]


def resolve_mode(n: ModeLike, u: State) -> Fraction:
    if isinstance(n, ModeIndex):
        return n.to_formal(u)
    return Fraction(n)


def derivative_order(space: SpaceDescriptor, tag: str, depth: Fraction) -> int:
    """j with tag(-depth)|0> <-> d^(j) tag(z)."""
    j = depth - 1 - space.field_shift(tag)
    if j.denominator != 1 or j < 0:
        raise SectorError(f"{tag}(-{depth}) is not a state-field generator mode")
    return int(j)


def monomial_factors(space: SpaceDescriptor, mono: Monomial) -> Tuple[Factor, ...]:
    return tuple((tag, derivative_order(space, tag, d)) for tag, d in mono.parts)


def check_acting(u: State, v: State) -> None:
    """Reject operators that do not belong to the algebra acting on v's space."""
    us, vs = u.space, v.space
    if vs.kind is SpaceKind.HEISENBERG:
        if us != vs:
            raise SpaceMismatchError(us, vs, "act with")
        for mono in u.terms:
            if mono.momentum != 0:
                raise NotInAlgebraError(
                    f"M(1,{mono.momentum}) vectors are module vectors and do not act"
                )
    elif vs.kind is SpaceKind.LATTICE:
        if us.kind is not SpaceKind.LATTICE:
            raise SpaceMismatchError(us, vs, "act with")
        for mono in u.terms:
            if Fraction(mono.momentum).denominator != 1:
                raise NotInAlgebraError(
                    f"e^({mono.momentum} gamma) lies in V_(L+gamma/2): module vectors do not act"
                )
    elif vs.kind in (SpaceKind.WEYL, SpaceKind.TENSOR):
        if us != vs:
            raise SpaceMismatchError(us, vs, "act with")
        for mono in u.terms:
            if mono.momentum != 0:
                raise NotInAlgebraError("only momentum-zero tensor vectors act")
    else:
        raise SpaceMismatchError(us, vs, "act with")


def annihilation_images(space: SpaceDescriptor, tag: str, mono: Monomial) -> List[Tuple[Fraction, Scalar, Monomial]]:
    """(r, coefficient, image) for every annihilation mode tag(r), r >= 0, acting nonzero on mono."""
    out: List[Tuple[Fraction, Scalar, Monomial]] = []
    if not is_weyl(tag) and space.kind is not SpaceKind.TWISTED and space.has_momentum:
        eigen = BOSON_NORMS[tag] * mono.momentum
        if eigen:
            out.append((ZERO, eigen, mono))
    seen = set()
    for part in mono.parts:
        if part in seen:
            continue
        seen.add(part)
        value = pairing(tag, part[0], part[1])
        if value:
            out.append((part[1], value * mono.multiplicity(part), mono.without(part)))
    return out


def apply_mode(space: SpaceDescriptor, tag: str, r, state: State) -> State:
    """Single generator mode tag(r) acting on a state (r < 0 creates)."""
    r = Fraction(r)
    if state.space != space:
        raise SpaceMismatchError(space, state.space, "apply a mode to")
    acc: Vec = {}
    if r < 0:
        for mono, c in state.terms.items():
            new = mono.with_parts(((tag, -r),))
            acc[new] = acc.get(new, ZERO) + c
        return State(space, acc)
    for mono, c in state.terms.items():
        for mode, coeff, image in annihilation_images(space, tag, mono):
            if mode == r:
                acc[image] = acc.get(image, ZERO) + c * coeff
    return State(space, acc)


@lru_cache(maxsize=None)
def _e_plus(space: SpaceDescriptor, beta: Fraction, mono: Monomial) -> Tuple[Tuple[Fraction, Monomial, Scalar], ...]:
    """E^+(-beta, z) = exp(-sum_n beta gamma(n) z^(-n) / n) on a lattice monomial."""
    tag = space.boson
    term: Dict[Tuple[Fraction, Monomial], Scalar] = {(ZERO, mono): ONE}
    total = dict(term)
    k = 1
    while term:
        nxt: Dict[Tuple[Fraction, Monomial], Scalar] = {}
        for (power, m), c in term.items():
            seen = set()
            for part in m.parts:
                if part in seen or part[0] != tag:
                    continue
                seen.add(part)
                s = part[1]
                # -(beta/s) * [gamma(s), gamma(-s)] = -(beta/s) * 2s
                coeff = -beta * BOSON_NORMS[tag] * m.multiplicity(part) / k
                key = (power - s, m.without(part))
                nxt[key] = nxt.get(key, ZERO) + c * coeff
        term = {key: c for key, c in nxt.items() if c}
        for key, c in term.items():
            total[key] = total.get(key, ZERO) + c
        k += 1
    return tuple((p, m, c) for (p, m), c in total.items() if c)


@lru_cache(maxsize=None)
def _e_minus(space: SpaceDescriptor, beta: Fraction, degree: int) -> Tuple[Tuple[Tuple[Tuple[str, Fraction], ...], Scalar], ...]:
    """Coefficient of z^degree in E^-(-beta, z) = exp(sum_n beta gamma(-n) z^n / n)."""
    tag = space.boson
    out = []
    for parts in integer_partitions(degree):
        coeff = ONE
        counts: Dict[int, int] = {}
        for k in parts:
            counts[k] = counts.get(k, 0) + 1
        for k, m in counts.items():
            coeff *= (beta / k) ** m
            for i in range(2, m + 1):
                coeff /= i
        out.append((tuple((tag, Fraction(k)) for k in parts), coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def integer_partitions(n: int) -> Tuple[Tuple[int, ...], ...]:
    out: List[Tuple[int, ...]] = []

    def walk(rest: int, largest: int, acc: List[int]):
        if rest == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rest, largest), 0, -1):
            acc.append(k)
            walk(rest - k, k, acc)
            acc.pop()

    walk(n, n, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _creation_terms(
    space: SpaceDescriptor, factors: Tuple[Factor, ...], beta: Fraction, need: Fraction
) -> Tuple[Tuple[Tuple[Tuple[str, Fraction], ...], Scalar], ...]:
    """
    Coefficient of z^need in the product of creation halves (and E^- when
    beta != 0), as (added parts, coefficient) pairs.
    """
    lowest = [space.lowest_depth(tag) for tag, _ in factors]
    bases = [
        lowest_d - 1 - space.field_shift(tag) - j
        for (tag, j), lowest_d in zip(factors, lowest)
    ]
    rest = need - sum(bases, ZERO)
    if rest < 0 or rest.denominator != 1:
        return ()
    rest = int(rest)
    slots = len(factors) + (1 if beta else 0)
    out: Dict[Tuple[Tuple[str, Fraction], ...], Scalar] = {}
    for comp in compositions(rest, slots):
        coeff = ONE
        parts: List[Tuple[str, Fraction]] = []
        for (tag, j), lowest_d, t in zip(factors, lowest, comp):
            depth = lowest_d + t
            # mode r = -depth
            b = binom(depth - 1 - space.field_shift(tag), j)
            if not b:
                coeff = ZERO
                break
            coeff *= b
            parts.append((tag, depth))
        if not coeff:
            continue
        if beta:
            for extra, c in _e_minus(space, beta, comp[-1]):
                key = tuple(sorted(parts + list(extra)))
                out[key] = out.get(key, ZERO) + coeff * c
        else:
            key = tuple(sorted(parts))
            out[key] = out.get(key, ZERO) + coeff
    return tuple((k, c) for k, c in out.items() if c)


def _annihilation_stage(space: SpaceDescriptor, factors: Iterable[Factor], vmono: Monomial) -> Dict[Fraction, Vec]:
    stage: Dict[Fraction, Vec] = {ZERO: {vmono: ONE}}
    for tag, j in factors:
        delta = space.field_shift(tag)
        nxt: Dict[Fraction, Vec] = {}
        for power, vec in stage.items():
            for mono, c in vec.items():
                for r, coeff, image in annihilation_images(space, tag, mono):
                    b = binom(-r - 1 - delta, j)
                    if not b:
                        continue
                    bucket = nxt.setdefault(power - r - 1 - delta - j, {})
                    bucket[image] = bucket.get(image, ZERO) + c * coeff * b
        stage = nxt
        if not stage:
            break
    return stage


def _lattice_stage(space: SpaceDescriptor, beta: Fraction, stage: Dict[Fraction, Vec]) -> Dict[Fraction, Vec]:
    norm = BOSON_NORMS[space.boson]
    out: Dict[Fraction, Vec] = {}
    for power, vec in stage.items():
        for mono, c in vec.items():
            shift = norm * beta * mono.momentum
            target = mono.momentum + beta
            for p2, m2, c2 in _e_plus(space, beta, mono):
                bucket = out.setdefault(power + p2 + shift, {})
                new = m2.with_momentum(target)
                bucket[new] = bucket.get(new, ZERO) + c * c2
    return out


@lru_cache(maxsize=None)
def normal_ordered_coefficient(
    space: SpaceDescriptor,
    factors: Tuple[Factor, ...],
    beta: Fraction,
    vmono: Monomial,
    power: Fraction,
) -> Tuple[Tuple[Monomial, Scalar], ...]:
    """Coefficient of z^power in the normal-ordered field of `factors` (times e^beta) on vmono."""
    acc: Vec = {}
    for ann, cre in iter_subsets(factors):
        stage = _annihilation_stage(space, ann, vmono)
        if not stage:
            continue
        if beta:
            stage = _lattice_stage(space, beta, stage)
        for p, vec in stage.items():
            creation = _creation_terms(space, cre, beta, power - p)
            if not creation:
                continue
            for mono, c in vec.items():
                for parts, c2 in creation:
                    new = mono.with_parts(parts)
                    acc[new] = acc.get(new, ZERO) + c * c2
    return tuple((m, c) for m, c in acc.items() if c)


def mode_bound(space: SpaceDescriptor, umono: Monomial, vmono: Monomial) -> Fraction:
    """Largest formal n for which umono_(n) vmono can be nonzero."""
    bound = umono.depth + vmono.depth - 1
    if space.kind is SpaceKind.LATTICE and umono.momentum:
        bound -= BOSON_NORMS[space.boson] * umono.momentum * vmono.momentum
    return bound


def vertex_mode(u: State, n: ModeLike, v: State) -> State:
    """
    u_(n) v by normal-ordered expansion.

    Args:
        u: operator state in the algebra acting on v's space
        n: formal mode (int/Fraction) or a ModeIndex in either convention
        v: state being acted on

    Returns:
        The exact result in v's space (momenta shifted for lattice operators).
    """
    if v.space.kind is SpaceKind.TWISTED:
        from .twisted import twisted_vertex_mode

        return twisted_vertex_mode(u, n, v)
    check_acting(u, v)
    formal = resolve_mode(n, u)
    space = v.space
    acc: Vec = {}
    for umono, cu in u.terms.items():
        factors = monomial_factors(u.space, umono)
        beta = Fraction(umono.momentum) if space.kind is SpaceKind.LATTICE else ZERO
        for vmono, cv in v.terms.items():
            if formal > mode_bound(space, umono, vmono):
                continue
            for mono, c in normal_ordered_coefficient(space, factors, beta, vmono, -formal - 1):
                acc[mono] = acc.get(mono, ZERO) + cu * cv * c
    return State(space, acc)


def zero_mode(u: State, v: State) -> State:
    """o(u) = u_(wt u - 1)."""
    return vertex_mode(u, ModeIndex.weighted(0), v)
