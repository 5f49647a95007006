"""
Lattice

The rank-one lattice vertex algebra V_L, L = Z gamma with (gamma, gamma) = 2,
and its module V_(L + gamma/2), both stored in gamma-modes over e^(r gamma).

Provides the sl_2 triple E = e^gamma, F = e^-gamma, H = gamma(-1) 1 acting by
zero modes, the vectors v_m^(k) = F^k e^((m/2 + k) gamma), Virasoro
highest-weight checks, the E^i J E^j constants behind the key identity and
the J/L spanning-set ranks.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .checks import Check, check_equal, check_true
from .errors import NotInAlgebraError, SpaceMismatchError
from .fields import ModeIndex, vertex_mode
from .linalg import SparseEchelon
from .printing import format_scalar
from .scalars import ONE, ZERO, Quad, Scalar
from .states import HALF, Monomial, SpaceDescriptor, SpaceKind, State, basis, monomial_key, partition_count
from .virasoro import conformal_vector, j_vector, virasoro_mode

logger = logging.getLogger(__name__)

LATTICE = SpaceDescriptor.lattice()


def exponential(r, parts=()) -> State:
    """gamma(-n1)...gamma(-nk) e^(r gamma)."""
    return State.monomial(LATTICE, [("g", d) for d in parts], momentum=Fraction(r))


def lattice_vertex_mode(u: State, n, v: State) -> State:
    """
    u_(n) v for u in V_L and v in V_L + V_(L+gamma/2). Either argument may be
    given in the a-presentation of M(1, m/sqrt 2) and is rewritten first.
    """
    u = alpha_to_gamma(u) if u.space.kind is SpaceKind.HEISENBERG else u
    v = alpha_to_gamma(v) if v.space.kind is SpaceKind.HEISENBERG else v
    if u.space != LATTICE or v.space != LATTICE:
        raise SpaceMismatchError(u.space, v.space, "lattice-act with")
    for mono in u.terms:
        if Fraction(mono.momentum).denominator != 1:
            raise NotInAlgebraError(f"e^({mono.momentum} gamma) is not in V_L")
    return vertex_mode(u, n, v)


def sl2_e() -> State:
    return exponential(1)


def sl2_f() -> State:
    return exponential(-1)


def sl2_h() -> State:
    return exponential(0, (1,))


def e_zero(v: State, times: int = 1) -> State:
    for _ in range(times):
        v = lattice_vertex_mode(sl2_e(), 0, v)
    return v


def f_zero(v: State, times: int = 1) -> State:
    for _ in range(times):
        v = lattice_vertex_mode(sl2_f(), 0, v)
    return v


def h_zero(v: State) -> State:
    return lattice_vertex_mode(sl2_h(), 0, v)


def omega() -> State:
    return conformal_vector(LATTICE)


def j_lattice() -> State:
    return j_vector(LATTICE)


def build_hwv(m: int, k: int) -> State:
    """v_m^(k) = F_0^k e^((m/2 + k) gamma)."""
    if m < 0 or k < 0:
        raise ValueError("m and k must be nonnegative")
    return f_zero(exponential(Fraction(m, 2) + k), k)


def alpha_to_gamma(v: State) -> State:
    """
    Rewrite an M(1, m/sqrt 2) state in the a-presentation onto V_L or
    V_(L+gamma/2): a(-n) = gamma(-n)/sqrt 2 and momentum m/sqrt 2 -> (m/2) gamma.
    """
    acc: Dict[Monomial, Scalar] = {}
    for mono, c in v.terms.items():
        lam = mono.momentum
        # a(0) eigenvalue lam = sqrt 2 r
        r = lam * Quad(0, HALF) if lam else ZERO
        if not isinstance(r, Fraction) or (2 * r).denominator != 1:
            raise ValueError(f"momentum {lam} is not in (1/sqrt 2) Z")
        scale = Quad(0, HALF) ** mono.length if mono.length else ONE
        new = Monomial.make([("g", d) for _, d in mono.parts], r)
        acc[new] = acc.get(new, ZERO) + c * scale
    return State(LATTICE, acc)


def identification_checks(m: int, depth: int) -> List[Check]:
    """
    M(1, m/sqrt 2) against its image in V_L + V_(L+gamma/2): omega and J
    map to their lattice forms, and L(-1), L(0), L(1), L(2) and o(J)
    commute with the rewrite on every basis state up to `depth`.
    """
    heis = SpaceDescriptor.heisenberg()
    params = (("m", str(m)),)
    checks = [
        check_equal("omega maps to omega", omega(), alpha_to_gamma(conformal_vector(heis)), params),
        check_equal("J maps to J", j_lattice(), alpha_to_gamma(j_vector(heis)), params),
    ]
    lam = Quad(0, Fraction(m, 2)) if m else ZERO
    j_heis, J = j_vector(heis), j_lattice()
    mismatches = []
    for d in range(depth + 1):
        for mono in basis(heis, d, lam):
            v = State(heis, {mono: ONE})
            image = alpha_to_gamma(v)
            for k in (-1, 0, 1, 2):
                if alpha_to_gamma(virasoro_mode(k, v)) != virasoro_mode(k, image):
                    mismatches.append(f"L({k}) on depth {d}")
            if alpha_to_gamma(vertex_mode(j_heis, 3, v)) != vertex_mode(J, 3, image):
                mismatches.append(f"o(J) on depth {d}")
    checks.append(
        check_true(
            "modes commute with the rewrite",
            not mismatches,
            params + (("depth", str(depth)),),
            note="; ".join(sorted(set(mismatches))),
        )
    )
    return checks


@dataclass(frozen=True)
class HwReport:
    is_hw: bool
    weight: Scalar


def hw_check(v: State) -> HwReport:
    """Virasoro highest weight iff L(1) v = L(2) v = 0."""
    weight = v.weight()
    is_hw = not virasoro_mode(1, v) and not virasoro_mode(2, v) and virasoro_mode(0, v) == v.scale(weight)
    return HwReport(bool(is_hw), weight)


def proportionality(v: State, target: State) -> Optional[Scalar]:
    """c with v = c * target, or None when v is not a multiple of target."""
    if not target:
        raise ValueError("target must be nonzero")
    if not v:
        return ZERO
    mono, lead = next(iter(target.items()))
    c = v.coefficient(mono) / lead
    return c if v == target.scale(c) else None


def sl2_bracket_checks(max_weight: int) -> List[Check]:
    """[E0, F0] = H0, [H0, E0] = 2 E0, [H0, F0] = -2 F0 on basis vectors of weight <= max_weight."""
    E, F, H = sl2_e(), sl2_f(), sl2_h()
    failures = 0
    tested = 0
    for r2 in range(-2 * max_weight, 2 * max_weight + 1):
        r = Fraction(r2, 2)
        top = max_weight - r * r
        if top < 0:
            continue
        for d in range(0, int(top) + 1):
            for mono in basis(LATTICE, d, r):
                v = State(LATTICE, {mono: ONE})
                ef = vertex_mode(E, 0, vertex_mode(F, 0, v)) - vertex_mode(F, 0, vertex_mode(E, 0, v))
                he = vertex_mode(H, 0, vertex_mode(E, 0, v)) - vertex_mode(E, 0, vertex_mode(H, 0, v))
                hf = vertex_mode(H, 0, vertex_mode(F, 0, v)) - vertex_mode(F, 0, vertex_mode(H, 0, v))
                tested += 1
                if ef != vertex_mode(H, 0, v) or he != vertex_mode(E, 0, v).scale(2) or hf != vertex_mode(F, 0, v).scale(-2):
                    failures += 1
    logger.debug(f"sl2 brackets tested on {tested} basis vectors")
    return [
        Check(
            name="sl2 brackets",
            passed=failures == 0 and tested > 0,
            expected="0 failures",
            computed=f"{failures} failures on {tested} vectors",
            parameters=(("max_weight", str(max_weight)),),
        )
    ]


@dataclass
class LiftReport:
    m: int
    k: int
    checks: List[Check] = field(default_factory=list)
    sigma: Optional[Scalar] = None
    constant: Optional[Scalar] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def lift_mode(m: int, k: int) -> ModeIndex:
    return ModeIndex.formal(-2 * m - 4 * k - 1)


def verify_lift_identity(m: int, k: int) -> LiftReport:
    """
    Exact checks around J_(-2m-4k-1) v_m^(k):

    - v_m^(k) is a Virasoro highest-weight vector of weight (m/2 + k)^2 with
      an sl_2 string of length m + 2k + 1
    - E^i (E^2 J)_(N) E^j v = sigma e^(...) for i + j = k
    - E^i (E J)_(N) E^j v = i sigma e^(...) for i + j = k + 1
    - E^i J_(N) E^j v = i(i-1)/2 sigma e^(...) for i + j = k + 2, i >= 2
    - J_(N) v = C v_m^(k+2) + (lower sl_2 components) with C != 0
    """
    params = (("m", str(m)), ("k", str(k)))
    report = LiftReport(m, k)
    add = report.checks.append
    v = build_hwv(m, k)
    target_r = Fraction(m, 2) + k + 2
    target = exponential(target_r)
    N = lift_mode(m, k)

    hw = hw_check(v)
    weight = (Fraction(m, 2) + k) ** 2
    add(check_true(f"v_{m}^({k}) highest weight", hw.is_hw, params))
    add(check_equal(f"v_{m}^({k}) weight", weight, hw.weight, params))

    top = e_zero(v, k)
    add(check_true(f"E^{k} v_{m}^({k}) is a nonzero multiple of e^({format_scalar(Fraction(m, 2) + k)} g)",
                   bool(top) and proportionality(top, exponential(Fraction(m, 2) + k)) not in (None, ZERO), params))
    add(check_true(f"E^{k + 1} v_{m}^({k}) = 0", not e_zero(top, 1), params))
    add(check_equal("sl2 string length", m + 2 * k + 1, string_length(exponential(Fraction(m, 2) + k), raising=False), params))

    J = j_lattice()
    EJ = e_zero(J)
    E2J = e_zero(EJ)
    powers: Dict[int, State] = {0: v}
    for j in range(1, k + 3):
        powers[j] = e_zero(powers[j - 1])

    def constant(op: State, i: int, j: int) -> Optional[Scalar]:
        w = e_zero(vertex_mode(op, N, powers[j]), i)
        return proportionality(w, target)

    sigma = constant(E2J, 0, k)
    report.sigma = sigma
    add(check_true("sigma != 0", sigma not in (None, ZERO), params))
    if sigma in (None, ZERO):
        return report

    for i in range(0, k + 1):
        c = constant(E2J, i, k - i)
        add(check_equal(f"E^{i} (E^2 J) E^{k - i}", sigma, c, params))
    for i in range(0, k + 2):
        c = constant(EJ, i, k + 1 - i)
        add(check_equal(f"E^{i} (E J) E^{k + 1 - i}", i * sigma, c, params))
    for i in range(2, k + 3):
        c = constant(J, i, k + 2 - i)
        add(check_equal(f"E^{i} J E^{k + 2 - i}", Fraction(i * (i - 1), 2) * sigma, c, params))

    # E^(k+2) annihilates the sl_2 components of lower spin, so the ratio
    # of E^(k+2) images isolates C.
    w = vertex_mode(J, N, v)
    num = proportionality(e_zero(w, k + 2), target)
    den = proportionality(e_zero(build_hwv(m, k + 2), k + 2), target)
    C = num / den if num is not None and den else None
    report.constant = C
    add(check_true("C != 0", C not in (None, ZERO), params))
    logger.debug(f"lift identity m={m} k={k}: sigma={sigma} C={C}")
    return report


def lift_mode_convention() -> Tuple[str, List[Check]]:
    """
    Which reading of J_(-1) on v_0^(0) = 1 lands in weight (0/2 + 2)^2 = 4.

    Formal: J_(-1) 1 = J (weight 4). Weighted: J_(-1) = J_(2), which kills 1.
    """
    vac = exponential(0)
    formal = vertex_mode(j_lattice(), ModeIndex.formal(-1), vac)
    weighted = vertex_mode(j_lattice(), ModeIndex.weighted(-1), vac)
    formal_ok = bool(formal) and formal.weight() == 4
    weighted_ok = bool(weighted) and weighted.weight() == 4
    chosen = "formal" if formal_ok and not weighted_ok else ("weighted" if weighted_ok else "undetermined")
    checks = [
        check_true("formal J_(-1) 1 has weight 4", formal_ok, ()),
        check_true("weighted J_-1 1 vanishes", not weighted, ()),
    ]
    return chosen, checks


def string_length(v: State, raising: bool = True) -> int:
    """Number of nonzero vectors v, E v, E^2 v, ... (F for raising=False), v itself counted."""
    step = e_zero if raising else f_zero
    length = 0
    while v:
        length += 1
        v = step(v)
    return length


def spanning_words(m: int, depth: int) -> List[State]:
    """All J_-i1 ... J_-ik L_-j1 ... L_-jl v_m^(t), t = 0, 1, of total depth `depth`."""
    omega_v = omega()
    J = j_lattice()
    out: List[State] = []
    # v_m^(1) = F_0 e^((m/2 + 1) gamma) sits at depth m + 1 over e^(m gamma / 2)
    for top, base in ((build_hwv(m, 0), 0), (build_hwv(m, 1), m + 1)):
        if base > depth:
            continue
        rest = depth - base
        l_words: Dict[int, List[State]] = {0: [top]}
        for b in range(1, rest + 1):
            l_words[b] = [
                vertex_mode(omega_v, ModeIndex.weighted(-j), w)
                for j in range(1, b + 1)
                for w in l_words[b - j]
            ]
        for b in range(0, rest + 1):
            j_words: Dict[int, List[State]] = {0: l_words[b]}
            for a in range(1, rest - b + 1):
                j_words[a] = [
                    vertex_mode(J, ModeIndex.weighted(-i), w)
                    for i in range(1, a + 1)
                    for w in j_words[a - i]
                ]
            out.extend(j_words[rest - b])
    return out


@dataclass(frozen=True)
class SpanningRow:
    depth: int
    rank: int
    dimension: int

    @property
    def full(self) -> bool:
        return self.rank == self.dimension


def spanning_check(m: int, depth_cutoff: int) -> List[SpanningRow]:
    """Rank of the J/L spanning set inside M(1, m/sqrt 2) at each depth."""
    rows: List[SpanningRow] = []
    for d in range(0, depth_cutoff + 1):
        ech = SparseEchelon(monomial_key)
        for w in spanning_words(m, d):
            ech.add(dict(w.terms))
        rows.append(SpanningRow(d, ech.rank, partition_count(d)))
        logger.debug(f"spanning m={m} depth={d}: rank {ech.rank} of {partition_count(d)}")
    return rows
