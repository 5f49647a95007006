"""
Weyl

The rank-n Weyl vertex algebra S(n) (beta-gamma system) and the tensor
algebra S(n-1) x M(1): charge field, symplectic and parity involutions,
charge sectors, the weight-one gl(n) closure, and the identity chain that
places 1 x J inside the subalgebra U generated by the sp quadratics,
the conformal vector and the a_i^+- x h vectors.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Tuple

from .checks import Check, check_equal, check_true
from .errors import SectorError, SpaceMismatchError
from .fields import ModeLike, vertex_mode
from .linalg import SparseEchelon
from .scalars import ONE, ZERO, Scalar
from .states import (
    HALF,
    Monomial,
    SpaceDescriptor,
    SpaceKind,
    State,
    basis,
    is_weyl,
    monomial_key,
    split_weyl,
    weyl_tag,
)
from .tensor import tensor_mode, tensor_product
from .virasoro import conformal_vector, j_vector

logger = logging.getLogger(__name__)

# H(0) v = CHARGE_SIGN * charge(v) * v
CHARGE_SIGN = -1


def weyl_space(rank: int) -> SpaceDescriptor:
    return SpaceDescriptor.weyl(rank)


def _weyl_like(space: SpaceDescriptor) -> None:
    if space.kind not in (SpaceKind.WEYL, SpaceKind.TENSOR):
        raise SpaceMismatchError(space, space, "use Weyl generators in")


def generator(space: SpaceDescriptor, index: int, sign: str, h: int = 0) -> State:
    """a_index^sign(-1/2) 1, times h(-1)^h in a tensor space."""
    _weyl_like(space)
    if not 1 <= index <= space.rank:
        raise SectorError(f"a_{index} does not exist in rank {space.rank}")
    parts = [(weyl_tag(index, sign), HALF)] + [("h", 1)] * h
    return State.monomial(space, parts)


def weyl_vertex_mode(u: State, n: ModeLike, v: State) -> State:
    """u_(n) v inside S(n); ranks must agree."""
    if u.space.kind is not SpaceKind.WEYL or v.space.kind is not SpaceKind.WEYL:
        raise SpaceMismatchError(u.space, v.space, "Weyl-act with")
    if u.space.rank != v.space.rank:
        raise SpaceMismatchError(u.space, v.space, "Weyl-act with")
    return vertex_mode(u, n, v)


def charge_field(space: SpaceDescriptor) -> State:
    """H = sum_i a_i^+(-1/2) a_i^-(-1/2) 1."""
    _weyl_like(space)
    return State(
        space,
        {Monomial.make([(weyl_tag(i, "+"), HALF), (weyl_tag(i, "-"), HALF)]): ONE for i in range(1, space.rank + 1)},
    )


def charge_pairing(rank: int) -> int:
    """(H, H): the 1 coefficient of H_(1) H."""
    return -rank


def monomial_charge(mono: Monomial) -> int:
    total = 0
    for tag, _ in mono.parts:
        if is_weyl(tag):
            total += 1 if split_weyl(tag)[1] == "+" else -1
    return total


def charge(v: State) -> int:
    values = {monomial_charge(m) for m in v.terms}
    if len(values) != 1:
        raise SectorError("state is not homogeneous in charge")
    return values.pop()


def charge_component(v: State, s: int) -> State:
    return State(v.space, {m: c for m, c in v.terms.items() if monomial_charge(m) == s})


def charge_mode(m: int, v: State) -> State:
    """H(m) v = H_(m) v (H has weight one)."""
    return vertex_mode(charge_field(v.space), m, v)


def weyl_parity(mono: Monomial) -> int:
    """0 on S^(0-bar), 1 on S^(1-bar): the number of Weyl parts mod 2."""
    return sum(1 for t, _ in mono.parts if is_weyl(t)) % 2


def symplectic_involution(v: State) -> State:
    """
    On S(2n): a_i^+ -> a_j^-, a_j^+ -> -a_i^-, a_i^- -> -a_j^+, a_j^- -> a_i^+
    for i <= n and j = 2n + 1 - i.
    """
    _weyl_like(v.space)
    rank = v.space.rank
    if rank % 2:
        raise SectorError(f"the symplectic involution needs even rank, got {rank}")
    half = rank // 2
    acc: Dict[Monomial, Scalar] = {}
    for mono, c in v.terms.items():
        sign = 1
        parts: List[Tuple[str, Fraction]] = []
        for tag, depth in mono.parts:
            if not is_weyl(tag):
                parts.append((tag, depth))
                continue
            i, s = split_weyl(tag)
            j = rank + 1 - i
            if i <= half:
                new, flip = (weyl_tag(j, "-"), 1) if s == "+" else (weyl_tag(j, "+"), -1)
            else:
                new, flip = (weyl_tag(j, "-"), -1) if s == "+" else (weyl_tag(j, "+"), 1)
            sign *= flip
            parts.append((new, depth))
        new_mono = Monomial.make(parts, mono.momentum)
        acc[new_mono] = acc.get(new_mono, ZERO) + c * sign
    return State(v.space, acc)


def parity_involution(v: State) -> State:
    """(-1)^(Weyl parity) on S(n-1) times theta on M(1)."""
    if v.space.kind is not SpaceKind.TENSOR:
        raise SpaceMismatchError(v.space, v.space, "apply the parity involution to")
    acc: Dict[Monomial, Scalar] = {}
    for mono, c in v.terms.items():
        if mono.momentum != 0:
            raise SectorError("theta only fixes the momentum-zero Fock space")
        flips = mono.length
        acc[mono] = -c if flips % 2 else c
    return State(v.space, acc)


def fixed_projection(v: State) -> State:
    """(v + P v) / 2 for the parity involution P: the component of v in U."""
    return (v + parity_involution(v)).scale(HALF)


def fixed_basis(rank: int, weight) -> Tuple[Monomial, ...]:
    """Basis of U = (S(rank) x M(1))^(parity x theta) at the given weight."""
    return tuple(m for m in basis(SpaceDescriptor.tensor(rank), weight) if m.length % 2 == 0)


def gl_closure_dimension(rank: int) -> Tuple[int, int]:
    """
    (span of o(a_i^+ a_j^-), span after adding commutators) as operators on
    the weight-1 space of S(rank). Both equal rank^2 for a gl(rank) closure.
    """
    space = weyl_space(rank)
    domain = basis(space, 1)
    ops = []
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            x = State.monomial(space, [(weyl_tag(i, "+"), HALF), (weyl_tag(j, "-"), HALF)])
            ops.append({m: vertex_mode(x, 0, State(space, {m: ONE})) for m in domain})

    def flatten(op) -> Dict[Tuple, Scalar]:
        out: Dict[Tuple, Scalar] = {}
        for src, image in op.items():
            for dst, c in image.terms.items():
                out[(monomial_key(src), monomial_key(dst))] = c
        return out

    def compose(a, b):
        result = {}
        for src, image in b.items():
            acc = State(space)
            for mid, c in image.terms.items():
                acc = acc + a[mid].scale(c)
            result[src] = acc
        return result

    ech = SparseEchelon()
    for op in ops:
        ech.add(flatten(op))
    base = ech.rank
    for a in ops:
        for b in ops:
            ab, ba = compose(a, b), compose(b, a)
            ech.add(flatten({m: ab[m] - ba[m] for m in domain}))
    return base, ech.rank


def u_generators(n: int) -> List[State]:
    """Generators of U inside S(n-1) x M(1): sp quadratics, omega, a_i^+- x h."""
    space = SpaceDescriptor.tensor(n - 1)
    tags = [weyl_tag(i, s) for i in range(1, n) for s in ("+", "-")]
    gens: List[State] = []
    for x in range(len(tags)):
        for y in range(x, len(tags)):
            gens.append(State.monomial(space, [(tags[x], HALF), (tags[y], HALF)]))
    gens.append(conformal_vector(space))
    for tag in tags:
        i, s = split_weyl(tag)
        gens.append(generator(space, i, s, h=1))
    return gens


def reachable_span(generators: List[State], max_weight: int) -> Dict[Fraction, SparseEchelon]:
    """
    Span of g1_(n1) ... gk_(nk) 1 with every intermediate weight <= max_weight,
    per weight. Truncating intermediates only shrinks the span, so membership
    in it implies membership in the generated subalgebra.
    """
    space = generators[0].space
    spans: Dict[Fraction, SparseEchelon] = {}
    vac = State.vacuum(space)
    spans[ZERO] = SparseEchelon(monomial_key)
    spans[ZERO].add(dict(vac.terms))
    queue = [vac]
    while queue:
        w = queue.pop()
        wt_w = w.weight()
        for g in generators:
            wt_g = g.weight()
            top = wt_g + wt_w - 1
            for n in range(math.ceil(top - max_weight), math.floor(top) + 1):
                image = vertex_mode(g, n, w)
                if not image or not image.is_homogeneous():
                    continue
                wt = image.weight()
                if wt > max_weight:
                    continue
                ech = spans.setdefault(wt, SparseEchelon(monomial_key))
                if ech.add(dict(image.terms)):
                    queue.append(image)
    logger.debug(f"reachable span dims {[(str(k), v.rank) for k, v in sorted(spans.items())]}")
    return spans


def _only_index_one(g: State) -> bool:
    for mono in g.terms:
        for tag, _ in mono.parts:
            if is_weyl(tag) and split_weyl(tag)[0] != 1:
                return False
    return True


def _pair(space: SpaceDescriptor, plus_mode: int, index: int = 1) -> State:
    """(a_index^+)_(plus_mode) a_index^- as a state of S(rank)."""
    weyl = weyl_space(space.rank)
    return weyl_vertex_mode(generator(weyl, index, "+"), plus_mode, generator(weyl, index, "-"))


def _h(*depths) -> State:
    return State.monomial(SpaceDescriptor.heisenberg("h"), [("h", d) for d in depths])


def u_generator_identities(n: int) -> List[Tuple[str, State, int, State, State]]:
    """
    (name, u, mode, v, exact u_(mode) v) for the product chain that puts
    1 x h(-1)^4, 1 x h(-3)h(-1) and 1 x h(-2)^2 into U.

    Right-hand sides are complete: next to the leading terms they carry the
    contractions coming from h(k), k >= 1, e.g. (a1+)_(-2)a1- x 1 in the
    first product.
    """
    space = SpaceDescriptor.tensor(n - 1)
    weyl = weyl_space(n - 1)
    vac_w = State.vacuum(weyl)
    one = State.vacuum(SpaceDescriptor.heisenberg("h"))
    ap_h = generator(space, 1, "+", h=1)
    am_h = generator(space, 1, "-", h=1)
    am1 = generator(weyl, 1, "-")
    am3 = State.monomial(weyl, [(weyl_tag(1, "-"), Fraction(5, 2))])
    omega2 = tensor_product(vac_w, conformal_vector(SpaceDescriptor.heisenberg("h")))
    p1, p2, p3, p4 = (_pair(space, k) for k in (-1, -2, -3, -4))
    h11 = tensor_product(vac_w, _h(1, 1))
    h21 = tensor_product(vac_w, _h(2, 1))
    am_h2 = tensor_product(am1, _h(2))
    return [
        (
            "(a1+ x h)_(0)(a1- x h) = 1 x h(-1)^2 + (a1+)_(-2)a1- x 1",
            ap_h, 0, am_h,
            h11 + tensor_product(p2, one),
        ),
        (
            "(a1- x h)_(-1)(1 x h(-1)^2) = (a1-)_(-1)1 x h(-1)^3 + 2 (a1-)_(-3)1 x h(-1)",
            am_h, -1, h11,
            tensor_product(am1, _h(1, 1, 1)) + tensor_product(am3, _h(1)).scale(2),
        ),
        (
            "(a1+ x h)_(0)(a1- x h(-1)^3) = 1 x h(-1)^4 + 3 (a1+)_(-2)a1- x h(-1)^2",
            ap_h, 0, generator(space, 1, "-", h=3),
            tensor_product(vac_w, _h(1, 1, 1, 1)) + tensor_product(p2, _h(1, 1)).scale(3),
        ),
        (
            "(a1+ x h)_(-2)(a1- x h) = 1 x h(-3)h(-1) + (a1+)_(-1)a1- x h(-2)h(-1) "
            "+ (a1+)_(-2)a1- x h(-1)^2 + (a1+)_(-4)a1- x 1",
            ap_h, -2, am_h,
            tensor_product(vac_w, _h(3, 1))
            + tensor_product(p1, _h(2, 1))
            + tensor_product(p2, _h(1, 1))
            + tensor_product(p4, one),
        ),
        (
            "((a1+)_(-2)a1- x 1)_(-1)(1 x h(-1)^2) = (a1+)_(-2)a1- x h(-1)^2",
            tensor_product(p2, one), -1, h11,
            tensor_product(p2, _h(1, 1)),
        ),
        (
            "((a1+)_(-1)a1- x 1)_(-1)(1 x h(-1)^2) = (a1+)_(-1)a1- x h(-1)^2",
            tensor_product(p1, one), -1, h11,
            tensor_product(p1, _h(1, 1)),
        ),
        (
            "(a1+ x h)_(-1)(a1- x h) = 1 x h(-2)h(-1) + (a1+)_(-1)a1- x h(-1)^2 + (a1+)_(-3)a1- x 1",
            ap_h, -1, am_h,
            h21 + tensor_product(p1, _h(1, 1)) + tensor_product(p3, one),
        ),
        (
            "((a1+)_(-1)a1- x 1)_(-1)(1 x h(-2)h(-1)) = (a1+)_(-1)a1- x h(-2)h(-1)",
            tensor_product(p1, one), -1, h21,
            tensor_product(p1, _h(2, 1)),
        ),
        (
            "(1 x omega2)_(0)(a1- x h(-1)) = a1- x h(-2)",
            omega2, 0, am_h,
            am_h2,
        ),
        (
            "(a1+ x h)_(-1)(a1- x h(-2)) = 1 x h(-2)^2 + (a1+)_(-1)a1- x h(-2)h(-1) + 2 (a1+)_(-4)a1- x 1",
            ap_h, -1, am_h2,
            tensor_product(vac_w, _h(2, 2)) + tensor_product(p1, _h(2, 1)) + tensor_product(p4, one).scale(2),
        ),
    ]


def verify_generator_chain(n: int) -> List[Check]:
    """
    Recompute the product chain inside S(n-1) x M(1) with both the field
    expansion and the pure-tensor formula, check the generators of U are
    parity-fixed, then test 1 x J against the span reachable from the
    index-1 generators at weight <= 4.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    params = (("n", str(n)),)
    checks: List[Check] = []
    for name, u, mode, v, expected in u_generator_identities(n):
        checks.append(check_equal(name, expected, vertex_mode(u, mode, v), params))
        checks.append(check_equal(f"{name} [tensor formula]", expected, tensor_mode(u, mode, v), params))

    gens = u_generators(n)
    fixed = all(fixed_projection(g) == g for g in gens)
    checks.append(check_true("generators of U are parity-fixed", fixed, params))

    space = SpaceDescriptor.tensor(n - 1)
    j_state = tensor_product(State.vacuum(weyl_space(n - 1)), j_vector(SpaceDescriptor.heisenberg("h")))
    spans = reachable_span([g for g in gens if _only_index_one(g)], 4)
    weight_four = spans.get(Fraction(4), SparseEchelon(monomial_key))
    member = weight_four.contains(dict(j_state.terms))
    checks.append(check_true("1 x J lies in the span reachable at weight 4", member, params))
    logger.debug(f"U closure in {space.describe()}: weight-4 span of rank {weight_four.rank}")
    return checks


