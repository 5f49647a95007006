"""
States

Canonical-form state algebra shared by every free-field space: generator
metadata, space descriptors, creation monomials, immutable linear
combinations, the theta involution and depth gradings, and monomial bases.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import SectorError, SpaceMismatchError
from .scalars import ONE, ZERO, Quad, RatFunc, Scalar, as_scalar

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

# Heisenberg generators and their norms (a, a) / (h, h) / (gamma, gamma)
BOSON_NORMS: Dict[str, int] = {"a": 1, "h": 1, "g": 2}

_WEYL_TAG = re.compile(r"^b(\d+)([+-])$")


def weyl_tag(index: int, sign: str) -> str:
    return f"b{index}{sign}"


def is_weyl(tag: str) -> bool:
    return tag.startswith("b")


def split_weyl(tag: str) -> Tuple[int, str]:
    match = _WEYL_TAG.match(tag)
    if not match:
        raise ValueError(f"not a Weyl generator tag: {tag}")
    return int(match.group(1)), match.group(2)


class SpaceKind(str, Enum):
    HEISENBERG = "heisenberg"
    TWISTED = "twisted"
    LATTICE = "lattice"
    WEYL = "weyl"
    TENSOR = "tensor"


class Sector(str, Enum):
    UNTWISTED = "untwisted"
    TWISTED = "twisted"


@dataclass(frozen=True)
class SpaceDescriptor:
    """Which algebra or module a state lives in."""

    kind: SpaceKind
    boson: Optional[str] = "a"
    rank: int = 0

    @classmethod
    def heisenberg(cls, tag: str = "a") -> "SpaceDescriptor":
        if tag not in ("a", "h"):
            raise ValueError(f"Heisenberg generator must be 'a' or 'h', got {tag!r}")
        return cls(SpaceKind.HEISENBERG, tag, 0)

    @classmethod
    def twisted(cls) -> "SpaceDescriptor":
        return cls(SpaceKind.TWISTED, "h", 0)

    @classmethod
    def lattice(cls) -> "SpaceDescriptor":
        return cls(SpaceKind.LATTICE, "g", 0)

    @classmethod
    def weyl(cls, rank: int) -> "SpaceDescriptor":
        if rank < 1:
            raise ValueError("Weyl rank must be positive")
        return cls(SpaceKind.WEYL, None, rank)

    @classmethod
    def tensor(cls, rank: int) -> "SpaceDescriptor":
        if rank < 1:
            raise ValueError("Weyl rank of a tensor space must be positive")
        return cls(SpaceKind.TENSOR, "h", rank)

    @property
    def sector(self) -> Sector:
        return Sector.TWISTED if self.kind is SpaceKind.TWISTED else Sector.UNTWISTED

    @property
    def has_momentum(self) -> bool:
        return self.kind in (SpaceKind.HEISENBERG, SpaceKind.LATTICE, SpaceKind.TENSOR)

    def generators(self) -> Tuple[str, ...]:
        tags: List[str] = []
        if self.kind in (SpaceKind.WEYL, SpaceKind.TENSOR):
            for i in range(1, self.rank + 1):
                tags.extend([weyl_tag(i, "+"), weyl_tag(i, "-")])
        if self.boson is not None:
            tags.append(self.boson)
        return tuple(tags)

    def lowest_depth(self, tag: str) -> Fraction:
        """Depth of the lowest creation mode of a generator."""
        if is_weyl(tag) or self.kind is SpaceKind.TWISTED:
            return HALF
        return ONE

    def field_shift(self, tag: str) -> Fraction:
        """delta in phi(z) = sum_r phi(r) z^(-r-1-delta)."""
        return -HALF if is_weyl(tag) else ZERO

    def describe(self) -> str:
        if self.kind is SpaceKind.HEISENBERG:
            return f"M(1)[{self.boson}]"
        if self.kind is SpaceKind.TWISTED:
            return "M(1)(theta)"
        if self.kind is SpaceKind.LATTICE:
            return "V_L"
        if self.kind is SpaceKind.WEYL:
            return f"S({self.rank})"
        return f"S({self.rank})xM(1)[h]"


def pairing(annihilator: str, creator: str, mode: Fraction) -> Fraction:
    """[annihilator(mode), creator(-mode)] for mode > 0."""
    if is_weyl(annihilator):
        if not is_weyl(creator):
            return ZERO
        i, s = split_weyl(annihilator)
        j, t = split_weyl(creator)
        if i != j or s == t:
            return ZERO
        return ONE if s == "+" else -ONE
    if annihilator == creator:
        return BOSON_NORMS[annihilator] * mode
    return ZERO


def _part_key(part: Tuple[str, Fraction]):
    return (part[0], -part[1])


@dataclass(frozen=True)
class Monomial:
    """
    Product of creation modes on a momentum vacuum.

    parts holds (tag, depth) pairs, one per creation operator tag(-depth),
    sorted by tag and then weakly decreasing depth.
    """

    parts: Tuple[Tuple[str, Fraction], ...] = ()
    momentum: Scalar = ZERO
    depth: Fraction = field(default=ZERO, compare=False)

    @classmethod
    def make(cls, parts: Iterable[Tuple[str, Fraction]] = (), momentum: Scalar = ZERO) -> "Monomial":
        ordered = tuple(sorted(((t, Fraction(d)) for t, d in parts), key=_part_key))
        return cls(ordered, momentum, sum((d for _, d in ordered), ZERO))

    @property
    def length(self) -> int:
        return len(self.parts)

    def count(self, tag_filter=None) -> int:
        if tag_filter is None:
            return len(self.parts)
        return sum(1 for t, _ in self.parts if tag_filter(t))

    def with_parts(self, extra: Iterable[Tuple[str, Fraction]]) -> "Monomial":
        return Monomial.make(self.parts + tuple(extra), self.momentum)

    def without(self, part: Tuple[str, Fraction]) -> "Monomial":
        parts = list(self.parts)
        parts.remove(part)
        return Monomial(tuple(parts), self.momentum, self.depth - part[1])

    def with_momentum(self, momentum: Scalar) -> "Monomial":
        return Monomial(self.parts, momentum, self.depth)

    def multiplicity(self, part: Tuple[str, Fraction]) -> int:
        return self.parts.count(part)


def momentum_key(value) -> Tuple:
    if isinstance(value, RatFunc):
        return (2, str(value.num.as_expr()), str(value.den.as_expr()))
    if isinstance(value, Quad):
        return (1, value.a, value.b)
    return (0, Fraction(value), ZERO)


def monomial_key(mono: Monomial) -> Tuple:
    """Graded-lex order: depth, then momentum, then parts."""
    return (mono.depth, momentum_key(mono.momentum), tuple((t, -d) for t, d in mono.parts))


def check_monomial(space: SpaceDescriptor, mono: Monomial) -> None:
    allowed = set(space.generators())
    for tag, depth in mono.parts:
        if tag not in allowed:
            raise SectorError(f"generator {tag} does not belong to {space.describe()}")
        if depth <= 0:
            raise SectorError(f"{tag}(-{depth}) is not a creation mode")
        half_integral = (depth - HALF).denominator == 1
        if is_weyl(tag) or space.kind is SpaceKind.TWISTED:
            if not half_integral:
                raise SectorError(
                    f"{tag}(-{depth}) needs a mode in 1/2 + Z in {space.describe()}"
                )
        elif depth.denominator != 1:
            raise SectorError(f"{tag}(-{depth}) needs an integer mode in {space.describe()}")
    if not space.has_momentum and mono.momentum != 0:
        raise SectorError(f"{space.describe()} carries no momentum")
    if space.kind is SpaceKind.LATTICE:
        r = mono.momentum
        if not isinstance(r, (int, Fraction)) or (2 * Fraction(r)).denominator != 1:
            raise SectorError(f"lattice momentum {r} is not in (1/2)Z")


class State:
    """
    Immutable finite linear combination of monomials in one space.

    Identical monomials are merged and zero coefficients dropped on
    construction, so equality of states is equality of the stored maps.
    """

    __slots__ = ("space", "_terms")

    def __init__(self, space: SpaceDescriptor, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.space = space
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff
        self._terms = clean

    @classmethod
    def build(cls, space: SpaceDescriptor, pairs: Iterable[Tuple[Monomial, Scalar]]) -> "State":
        """Merge (monomial, coefficient) pairs, validating each monomial."""
        acc: Dict[Monomial, Scalar] = {}
        for mono, coeff in pairs:
            check_monomial(space, mono)
            acc[mono] = acc.get(mono, ZERO) + as_scalar(coeff)
        return cls(space, acc)

    @classmethod
    def zero(cls, space: SpaceDescriptor) -> "State":
        return cls(space)

    @classmethod
    def vacuum(cls, space: SpaceDescriptor, momentum: Scalar = ZERO) -> "State":
        mono = Monomial.make((), momentum)
        check_monomial(space, mono)
        return cls(space, {mono: ONE})

    @classmethod
    def monomial(
        cls,
        space: SpaceDescriptor,
        parts: Iterable[Tuple[str, Fraction]] = (),
        momentum: Scalar = ZERO,
        coeff: Scalar = ONE,
    ) -> "State":
        mono = Monomial.make(parts, momentum)
        check_monomial(space, mono)
        return cls(space, {mono: as_scalar(coeff)})

    @property
    def terms(self) -> Mapping[Monomial, Scalar]:
        return MappingProxyType(self._terms)

    def items(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(mono, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        if self.space != other.space:
            return False
        return self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        from .printing import format_state

        return f"State<{self.space.describe()}>({format_state(self)})"

    def __add__(self, other: "State") -> "State":
        return state_add(self, other)

    def __sub__(self, other: "State") -> "State":
        return state_add(self, -other)

    def __neg__(self) -> "State":
        return State(self.space, {m: -c for m, c in self._terms.items()})

    def scale(self, factor: Scalar) -> "State":
        if not factor:
            return State(self.space)
        return State(self.space, {m: c * factor for m, c in self._terms.items()})

    def __mul__(self, factor) -> "State":
        return self.scale(factor)

    __rmul__ = __mul__

    def depths(self) -> List[Fraction]:
        return sorted({m.depth for m in self._terms})

    def momenta(self) -> List[Scalar]:
        return sorted({m.momentum for m in self._terms}, key=momentum_key)

    def is_homogeneous(self) -> bool:
        return len({weight_of(self.space, m) for m in self._terms}) <= 1

    def weight(self) -> Scalar:
        """Conformal weight of a homogeneous state (zero state: 0)."""
        weights = {weight_of(self.space, m) for m in self._terms}
        if len(weights) > 1:
            from .errors import ConventionError

            raise ConventionError("state is not homogeneous")
        return weights.pop() if weights else ZERO


def weight_of(space: SpaceDescriptor, mono: Monomial) -> Scalar:
    """Conformal weight of a monomial: momentum weight plus depth."""
    if space.kind is SpaceKind.LATTICE:
        return mono.momentum * mono.momentum + mono.depth
    if space.kind is SpaceKind.TWISTED:
        return Fraction(1, 16) + mono.depth
    if space.kind in (SpaceKind.HEISENBERG, SpaceKind.TENSOR):
        lam = mono.momentum
        if lam:
            return lam * lam / 2 + mono.depth
    return mono.depth


def state_add(a: State, b: State) -> State:
    """Canonical sum of two states of the same space."""
    if a.space != b.space:
        raise SpaceMismatchError(a.space, b.space, "add")
    acc = dict(a._terms)
    for mono, coeff in b._terms.items():
        acc[mono] = acc.get(mono, ZERO) + coeff
    return State(a.space, acc)


def sum_states(space: SpaceDescriptor, states: Iterable[State]) -> State:
    acc: Dict[Monomial, Scalar] = {}
    for s in states:
        if s.space != space:
            raise SpaceMismatchError(space, s.space, "add")
        for mono, coeff in s._terms.items():
            acc[mono] = acc.get(mono, ZERO) + coeff
    return State(space, acc)


def _require_theta_space(s: State) -> None:
    if s.space.kind not in (SpaceKind.HEISENBERG, SpaceKind.TWISTED):
        raise SectorError(f"theta acts on Heisenberg and twisted Fock spaces, not {s.space.describe()}")
    for mono in s._terms:
        if mono.momentum != 0:
            raise SectorError(
                f"theta maps M(1,{mono.momentum}) to M(1,-{mono.momentum}); only momentum 0 is supported"
            )


def theta_involution(s: State) -> State:
    """alpha -> -alpha: scales every monomial by (-1)^(number of parts)."""
    _require_theta_space(s)
    return State(s.space, {m: (-c if m.length % 2 else c) for m, c in s._terms.items()})


def project_parity(s: State, sign: int) -> State:
    """(s + sign * theta(s)) / 2."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _require_theta_space(s)
    keep = 0 if sign == 1 else 1
    return State(s.space, {m: c for m, c in s._terms.items() if m.length % 2 == keep})


def depth_component(s: State, d) -> State:
    d = Fraction(d)
    return State(s.space, {m: c for m, c in s._terms.items() if m.depth == d})


def coordinates(s: State, basis: List[Monomial]) -> List[Scalar]:
    index = {m: i for i, m in enumerate(basis)}
    row: List[Scalar] = [ZERO] * len(basis)
    for mono, coeff in s._terms.items():
        if mono not in index:
            raise SectorError(f"monomial outside the supplied basis: {mono}")
        row[index[mono]] = coeff
    return row


def _colored_partitions(total: Fraction, parts: Tuple[Tuple[str, Fraction], ...]) -> List[Tuple[Tuple[str, Fraction], ...]]:
    """Multisets of the given (tag, depth) parts summing to total."""
    out: List[Tuple[Tuple[str, Fraction], ...]] = []

    def walk(rest: Fraction, start: int, acc: List[Tuple[str, Fraction]]):
        if rest == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(parts)):
            tag, d = parts[i]
            if d <= rest:
                acc.append((tag, d))
                walk(rest - d, i, acc)
                acc.pop()

    walk(total, 0, [])
    return out


@lru_cache(maxsize=None)
def basis(space: SpaceDescriptor, depth, momentum: Scalar = ZERO) -> Tuple[Monomial, ...]:
    """Monomial basis of the depth-d subspace over the given momentum vacuum."""
    depth = Fraction(depth)
    if depth < 0:
        return ()
    available: List[Tuple[str, Fraction]] = []
    for tag in space.generators():
        d = space.lowest_depth(tag)
        while d <= depth:
            available.append((tag, d))
            d += 1
    monos = {Monomial.make(p, momentum) for p in _colored_partitions(depth, tuple(available))}
    return tuple(sorted(monos, key=monomial_key))


def parity_basis(space: SpaceDescriptor, depth, sign: int) -> Tuple[Monomial, ...]:
    """Basis of the theta-eigenspace of the given sign at depth d (momentum 0)."""
    keep = 0 if sign == 1 else 1
    return tuple(m for m in basis(space, depth) if m.length % 2 == keep)


def partition_count(n: int) -> int:
    return len(basis(SpaceDescriptor.heisenberg(), n))


def product_monomials(left: Monomial, right: Monomial) -> Monomial:
    """Concatenate commuting creation parts; momentum from whichever side carries it."""
    momentum = right.momentum if right.momentum != 0 else left.momentum
    return Monomial.make(left.parts + right.parts, momentum)


def iter_subsets(items: Tuple) -> Iterator[Tuple[Tuple, Tuple]]:
    """(chosen, rest) over all 2^k index subsets."""
    k = len(items)
    for mask in range(1 << k):
        chosen = tuple(items[i] for i in range(k) if mask >> i & 1)
        rest = tuple(items[i] for i in range(k) if not mask >> i & 1)
        yield chosen, rest


def compositions(total: int, slots: int) -> Iterator[Tuple[int, ...]]:
    """All ways to write total as an ordered sum of slots nonnegative integers."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + slots - 1), slots - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + slots - 1 - prev - 1)
        yield tuple(out)
