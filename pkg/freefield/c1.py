"""
C1

Graded pieces C_1(M)(d) = span{ v_(-1) m : v in M(1)^+, wt v > 0 } of
M(1)-orbifold modules, their rank over the function field in x when the
momentum is the formal parameter, and the evidence tables built on them:
specialization coherence, exceptional parameter candidates, codimension
scans for atypical momenta and the exclusion of twisted tops.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import BudgetExceededError
from .fields import vertex_mode
from .linalg import bareiss_rank, exceptional_candidates, in_span, rank
from .printing import format_scalar, format_state
from .scalars import ZERO, Quad, RatFunc, Scalar, is_parametric, specialize
from .states import (
    HALF,
    Monomial,
    SpaceDescriptor,
    State,
    basis,
    coordinates,
    parity_basis,
)
from .twisted import TWISTED, twisted_top, twisted_vertex_mode

logger = logging.getLogger(__name__)

HEISENBERG = SpaceDescriptor.heisenberg()


class ModuleKind(str, Enum):
    PARAMETRIC = "lambda"
    MOMENTUM = "momentum"
    PLUS = "plus"
    MINUS = "minus"
    TWISTED_PLUS = "twisted-plus"
    TWISTED_MINUS = "twisted-minus"


@dataclass(frozen=True)
class C1Module:
    """An M(1)^+-module whose C_1 subspace is computed."""

    kind: ModuleKind
    momentum: Scalar = ZERO

    @classmethod
    def parametric(cls) -> "C1Module":
        return cls(ModuleKind.PARAMETRIC, RatFunc.variable())

    @classmethod
    def with_momentum(cls, value: Scalar) -> "C1Module":
        return cls(ModuleKind.MOMENTUM, value)

    @classmethod
    def atypical(cls, m: int) -> "C1Module":
        """M(1, m/sqrt 2)."""
        return cls(ModuleKind.MOMENTUM, Quad(0, Fraction(m, 2)) if m else ZERO)

    @classmethod
    def orbifold(cls, sign: int) -> "C1Module":
        return cls(ModuleKind.PLUS if sign == 1 else ModuleKind.MINUS)

    @classmethod
    def twisted(cls, sign: int) -> "C1Module":
        return cls(ModuleKind.TWISTED_PLUS if sign == 1 else ModuleKind.TWISTED_MINUS)

    @property
    def space(self) -> SpaceDescriptor:
        return TWISTED if self.kind in (ModuleKind.TWISTED_PLUS, ModuleKind.TWISTED_MINUS) else HEISENBERG

    @property
    def sign(self) -> int:
        return -1 if self.kind in (ModuleKind.MINUS, ModuleKind.TWISTED_MINUS) else 1

    def basis(self, depth) -> Tuple[Monomial, ...]:
        depth = Fraction(depth)
        if depth < 0:
            return ()
        if self.kind in (ModuleKind.PARAMETRIC, ModuleKind.MOMENTUM):
            if depth.denominator != 1:
                return ()
            return basis(HEISENBERG, depth, self.momentum)
        if self.kind in (ModuleKind.PLUS, ModuleKind.MINUS):
            if depth.denominator != 1:
                return ()
            return parity_basis(HEISENBERG, depth, self.sign)
        return parity_basis(TWISTED, depth, self.sign)

    def depths(self, limit) -> List[Fraction]:
        """Depths up to limit on which the module can be nonzero."""
        step = HALF if self.space == TWISTED else Fraction(1)
        out, d = [], ZERO
        while d <= limit:
            out.append(d)
            d += step
        return out

    def describe(self) -> str:
        if self.kind is ModuleKind.PARAMETRIC:
            return "M(1,x)"
        if self.kind is ModuleKind.MOMENTUM:
            return f"M(1,{format_scalar(self.momentum)})"
        return {
            ModuleKind.PLUS: "M(1)^+",
            ModuleKind.MINUS: "M(1)^-",
            ModuleKind.TWISTED_PLUS: "M(1)(theta)^+",
            ModuleKind.TWISTED_MINUS: "M(1)(theta)^-",
        }[self.kind]


def act(v: State, m: State) -> State:
    """v_(-1) m for v in M(1)^+."""
    if m.space == TWISTED:
        return twisted_vertex_mode(v, -1, m)
    return vertex_mode(v, -1, m)


def operator_basis(weight: int) -> Tuple[Monomial, ...]:
    """Even-length a-monomials of the given weight: a basis of M(1)^+_weight."""
    return parity_basis(HEISENBERG, weight, 1)


@dataclass
class C1Matrix:
    module: C1Module
    depth: Fraction
    basis: Tuple[Monomial, ...]
    rows: List[List[Scalar]] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis)

    def shuffled(self, rng: random.Random) -> "C1Matrix":
        order = list(range(len(self.rows)))
        rng.shuffle(order)
        return C1Matrix(self.module, self.depth, self.basis, [self.rows[i] for i in order], [self.labels[i] for i in order])


def _generator_pairs(module: C1Module, d: Fraction, max_weight: int):
    for w in range(1, max_weight + 1):
        for vmono in operator_basis(w):
            for mmono in module.basis(d - w):
                yield vmono, mmono


def c1_component(module: C1Module, d, max_weight: Optional[int] = None, row_budget: Optional[int] = None) -> C1Matrix:
    """
    Rows v_(-1) m over even-length monomials v with 0 < wt v <= max_weight
    (default d) and basis monomials m of depth d - wt v.
    """
    d = Fraction(d)
    target = module.basis(d)
    mat = C1Matrix(module, d, target)
    limit = int(d) if max_weight is None else max_weight
    for vmono, mmono in _generator_pairs(module, d, limit):
        if row_budget is not None and len(mat.rows) >= row_budget:
            raise BudgetExceededError(f"C1 matrix of {module.describe()} at depth {d} exceeds {row_budget} rows")
        v = State(HEISENBERG, {vmono: Fraction(1)})
        m = State(module.space, {mmono: Fraction(1)})
        image = act(v, m)
        mat.rows.append(coordinates(image, list(target)))
        mat.labels.append(f"({format_state(v)})_(-1) ({format_state(m)})")
    logger.debug(f"C1 {module.describe()} depth {d}: {len(mat.rows)} rows x {len(target)} columns")
    return mat


@dataclass
class RankReport:
    module: str
    depth: Fraction
    generic_rank: int
    ambient_dim: int
    exceptional_candidates: List[str] = field(default_factory=list)
    roots: List[Scalar] = field(default_factory=list)
    specializations: List[Tuple[Scalar, int]] = field(default_factory=list)

    @property
    def codimension(self) -> int:
        return self.ambient_dim - self.generic_rank

    @property
    def coherent(self) -> bool:
        return all(r == self.generic_rank for _, r in self.specializations)


def _specialize_rows(rows: Sequence[Sequence[Scalar]], point) -> List[List[Scalar]]:
    return [[specialize(c, point) for c in row] for row in rows]


def rank_analysis(mat: C1Matrix, samples: int = 3, seed: int = 0) -> RankReport:
    """
    Generic rank (fraction-free), exceptional candidates from the gcd of
    maximal minors, and ranks at random rational parameter values that
    avoid the candidates.
    """
    parametric = any(is_parametric(c) for row in mat.rows for c in row)
    generic = bareiss_rank(mat.rows) if parametric else rank(mat.rows)
    report = RankReport(mat.module.describe(), mat.depth, generic, mat.ambient_dim)
    if not parametric:
        return report
    names, roots = exceptional_candidates(mat.rows, generic)
    report.exceptional_candidates = names
    report.roots = roots
    rng = random.Random(seed)
    while len(report.specializations) < samples:
        point = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        if point in roots:
            continue
        try:
            r = rank(_specialize_rows(mat.rows, point))
        except ZeroDivisionError:
            continue
        report.specializations.append((point, r))
    return report


def _enlarged_rows(module: C1Module, d: Fraction, target: Sequence[Monomial]) -> List[List[Scalar]]:
    """
    Images u_(-n) m for n >= 2 and (u_(-1) v)_(-1) m, all lying in C_1(d)
    without being rows of the weight <= d generating set.
    """
    rows: List[List[Scalar]] = []
    top = int(d)
    for w in range(1, top + 1):
        for umono in operator_basis(w):
            u = State(HEISENBERG, {umono: Fraction(1)})
            for n in range(2, top - w + 2):
                for mmono in module.basis(d - w - n + 1):
                    m = State(module.space, {mmono: Fraction(1)})
                    image = twisted_vertex_mode(u, -n, m) if m.space == TWISTED else vertex_mode(u, -n, m)
                    rows.append(coordinates(image, list(target)))
    for wu in range(2, top + 1):
        for wv in range(2, top - wu + 1):
            for umono in operator_basis(wu):
                for vmono in operator_basis(wv):
                    uv = vertex_mode(State(HEISENBERG, {umono: Fraction(1)}), -1, State(HEISENBERG, {vmono: Fraction(1)}))
                    for mmono in module.basis(d - wu - wv):
                        image = act(uv, State(module.space, {mmono: Fraction(1)}))
                        rows.append(coordinates(image, list(target)))
    return rows


def saturation_check(module: C1Module, d, base: Optional[C1Matrix] = None) -> Tuple[int, int]:
    """
    Rank of the C_1(d) generating rows against the rank once the
    enlarged rows are appended; equal exactly when the generators span.
    """
    d = Fraction(d)
    if base is None:
        base = c1_component(module, d)
    rows = list(base.rows) + _enlarged_rows(module, d, base.basis)
    logger.debug(f"Saturation of {module.describe()} depth {d}: {len(base.rows)} -> {len(rows)} rows")
    if any(is_parametric(c) for row in rows for c in row):
        return bareiss_rank(base.rows), bareiss_rank(rows)
    return rank(base.rows), rank(rows)


@dataclass(frozen=True)
class TopExclusion:
    sign: int
    i: int
    depth: Fraction
    excluded: bool
    quotient_dim: int


def twisted_top_exclusion(sign: int, i_max: int) -> List[TopExclusion]:
    """Rank-augmentation test that h(-1/2)^(2i) 1_tw (sign +) or h(-1/2)^(2i+1) 1_tw (sign -) avoids C_1."""
    module = C1Module.twisted(sign)
    out: List[TopExclusion] = []
    for i in range(0, i_max + 1):
        top = twisted_top(sign, i)
        depth = top.depths()[0]
        mat = c1_component(module, depth)
        vec = coordinates(top, list(mat.basis))
        excluded = not in_span(mat.rows, vec)
        out.append(TopExclusion(sign, i, depth, excluded, mat.ambient_dim - rank(mat.rows)))
    return out


@dataclass
class CodimScan:
    m: int
    rows: List[Tuple[int, int, int]] = field(default_factory=list)
    partial: bool = False

    @property
    def threshold(self) -> Optional[int]:
        """Smallest d0 with codimension 0 on every scanned depth >= d0."""
        d0 = None
        for d, _dim, rk in reversed(self.rows):
            if _dim - rk != 0:
                break
            d0 = d
        return d0


def atypical_codim_scan(m: int, d_max: int, row_budget: Optional[int] = None) -> CodimScan:
    """dim M(1, m/sqrt 2)(d) - rank C_1(d) for d <= d_max."""
    module = C1Module.atypical(m)
    scan = CodimScan(m)
    for d in range(0, d_max + 1):
        try:
            mat = c1_component(module, d, row_budget=row_budget)
        except BudgetExceededError as e:
            logger.warning(f"Atypical scan m={m} stopped at depth {d}: {e}")
            scan.partial = True
            break
        scan.rows.append((d, mat.ambient_dim, rank(mat.rows)))
    return scan
