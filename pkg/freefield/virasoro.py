"""
Virasoro

Conformal vectors of every space in scope, the Virasoro modes
L(k) = omega_(k+1), central charges, commutators of modes, and the
weight-4 singular vector J that generates M(1)^+ together with omega.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from .fields import ModeLike, integer_partitions, resolve_mode, vertex_mode
from .linalg import SparseEchelon
from .scalars import ZERO
from .states import HALF, Monomial, SpaceDescriptor, SpaceKind, State, monomial_key, weyl_tag

logger = logging.getLogger(__name__)

THREE_HALVES = Fraction(3, 2)


def _weyl_omega_terms(rank: int) -> List[Tuple[List[Tuple[str, Fraction]], Fraction]]:
    terms = []
    for i in range(1, rank + 1):
        plus, minus = weyl_tag(i, "+"), weyl_tag(i, "-")
        terms.append(([(minus, THREE_HALVES), (plus, HALF)], HALF))
        terms.append(([(plus, THREE_HALVES), (minus, HALF)], -HALF))
    return terms


def conformal_vector(space: SpaceDescriptor) -> State:
    """
    omega for the algebra acting on `space`.

    Heisenberg: (1/2) a(-1)^2; lattice: (1/4) gamma(-1)^2; Weyl:
    omega_1 = (1/2) sum (a_i^-(-3/2) a_i^+(-1/2) - a_i^+(-3/2) a_i^-(-1/2));
    tensor: omega_1 + (1/2) h(-1)^2. The twisted module is acted on by the
    Heisenberg algebra in h.
    """
    kind = space.kind
    if kind is SpaceKind.TWISTED:
        return conformal_vector(SpaceDescriptor.heisenberg("h"))
    if kind is SpaceKind.HEISENBERG:
        return State.monomial(space, [(space.boson, 1)] * 2, coeff=HALF)
    if kind is SpaceKind.LATTICE:
        return State.monomial(space, [("g", 1)] * 2, coeff=Fraction(1, 4))
    pairs: Dict[Monomial, Fraction] = {}
    for parts, c in _weyl_omega_terms(space.rank):
        mono = Monomial.make(parts)
        pairs[mono] = pairs.get(mono, ZERO) + c
    if kind is SpaceKind.TENSOR:
        pairs[Monomial.make([("h", 1)] * 2)] = HALF
    return State(space, pairs)


def weyl_omega(rank: int) -> State:
    """omega_1 of S(rank)."""
    return conformal_vector(SpaceDescriptor.weyl(rank))


def virasoro_mode(k: int, v: State) -> State:
    """L(k) v := omega_(k+1) v."""
    return vertex_mode(conformal_vector(v.space), k + 1, v)


def central_charge(space: SpaceDescriptor) -> Fraction:
    """2 * <vacuum coefficient of L(2) L(-2) 1>."""
    if space.kind is SpaceKind.TWISTED:
        space = SpaceDescriptor.heisenberg("h")
    vac = State.vacuum(space)
    image = virasoro_mode(2, virasoro_mode(-2, vac))
    return 2 * image.coefficient(Monomial.make())


def commutator_mode(u: State, m: ModeLike, w: State, n: ModeLike, v: State) -> State:
    """u_m (w_n v) - w_n (u_m v)."""
    mu = resolve_mode(m, u)
    nw = resolve_mode(n, w)
    return vertex_mode(u, mu, vertex_mode(w, nw, v)) - vertex_mode(w, nw, vertex_mode(u, mu, v))


def j_vector(space: SpaceDescriptor = None) -> State:
    """
    J = a(-1)^4 - 2 a(-3) a(-1) + (3/2) a(-2)^2 on M(1)[a or h].

    On V_L (a = gamma / sqrt 2) the same vector reads
    (1/4) g(-1)^4 - g(-3) g(-1) + (3/4) g(-2)^2.
    """
    space = space or SpaceDescriptor.heisenberg()
    if space.kind is SpaceKind.TWISTED:
        space = SpaceDescriptor.heisenberg("h")
    if space.kind is SpaceKind.LATTICE:
        g = "g"
        coeffs = (Fraction(1, 4), Fraction(-1), Fraction(3, 4))
    elif space.kind is SpaceKind.HEISENBERG:
        g = space.boson
        coeffs = (Fraction(1), Fraction(-2), THREE_HALVES)
    else:
        raise ValueError(f"J is not defined on {space.describe()}")
    return State(
        space,
        {
            Monomial.make([(g, 1)] * 4): coeffs[0],
            Monomial.make([(g, 3), (g, 1)]): coeffs[1],
            Monomial.make([(g, 2)] * 2): coeffs[2],
        },
    )


def virasoro_submodule_dims(hw: State, order: int) -> List[int]:
    """
    Dimensions of the Virasoro submodule generated by a homogeneous hw
    vector, level by level, from the PBW vectors L(-j1)...L(-jl) hw with
    j1 >= ... >= jl >= 1.
    """
    vectors: Dict[Tuple[int, ...], State] = {(): hw}
    dims: List[int] = []
    for level in range(order + 1):
        ech = SparseEchelon(monomial_key)
        for parts in integer_partitions(level):
            if parts not in vectors:
                vectors[parts] = virasoro_mode(-parts[0], vectors[parts[1:]])
            ech.add(dict(vectors[parts].terms))
        dims.append(ech.rank)
    logger.debug(f"Virasoro submodule dimensions {dims}")
    return dims


def l0_eigen_check(v: State) -> bool:
    """True when L(0) v = wt(v) v."""
    return virasoro_mode(0, v) == v.scale(v.weight())
