"""
FreeField Bench Fixed-Point Suite

The subalgebra U of S(n-1) x M(1) fixed by the parity involution: the
product chain that puts 1 x J inside U, the charge field of S(n), the
symplectic involution and the weight-one gl(n) closure.
"""

import random
from fractions import Fraction
from typing import List

from freefield.checks import Check, check_equal, check_true
from freefield.fields import vertex_mode
from freefield.states import Monomial, State, basis
from freefield.virasoro import weyl_omega
from freefield.weyl import (
    CHARGE_SIGN,
    charge_component,
    charge_field,
    charge_pairing,
    generator,
    gl_closure_dimension,
    monomial_charge,
    symplectic_involution,
    verify_generator_chain,
    weyl_parity,
    weyl_space,
)

from .base_suite import BaseSuite, CaseSpec


def charge_checks(rank: int) -> List[Check]:
    space = weyl_space(rank)
    H = charge_field(space)
    p = (("rank", str(rank)),)
    pairing = vertex_mode(H, 1, H).coefficient(Monomial.make())
    plus = generator(space, 1, "+")
    checks = [
        check_equal("(H, H)", Fraction(charge_pairing(rank)), pairing, p),
        check_equal("H(0) a_1^+", plus.scale(CHARGE_SIGN), vertex_mode(H, 0, plus), p),
    ]
    ok = True
    for j in range(0, 5):
        for mono in basis(space, Fraction(j, 2)):
            v = State(space, {mono: Fraction(1)})
            if vertex_mode(H, 0, v) != v.scale(CHARGE_SIGN * monomial_charge(mono)):
                ok = False
            if monomial_charge(mono) % 2 != weyl_parity(mono):
                ok = False
    checks.append(check_true("charge grading on weight <= 2", ok, p))
    return checks


def charge_sector_checks(rank: int, max_weight: int = 2) -> List[Check]:
    """Every S(rank)^(parity) vector splits into charge components of matching parity."""
    space = weyl_space(rank)
    rng = random.Random(rank)
    ok = True
    for j in range(0, 2 * max_weight + 1):
        monos = list(basis(space, Fraction(j, 2)))
        if not monos:
            continue
        v = State(space, {m: Fraction(rng.randint(1, 5)) for m in rng.sample(monos, min(4, len(monos)))})
        pieces = [charge_component(v, s) for s in range(-j, j + 1)]
        total = State.zero(space)
        for piece in pieces:
            total = total + piece
        if total != v:
            ok = False
    return [check_true(f"charge sectors of S({rank})", ok, (("rank", str(rank)),))]


def symplectic_checks(rank: int) -> List[Check]:
    space = weyl_space(rank)
    p = (("rank", str(rank)),)
    omega, H = weyl_omega(rank), charge_field(space)
    checks = [
        check_equal("sigma(omega) = omega", omega, symplectic_involution(omega), p),
        check_equal("sigma(H) = -H", -H, symplectic_involution(H), p),
    ]
    rng = random.Random(17 + rank)
    squared = automorphic = True
    for _ in range(12):
        wu, wv = Fraction(rng.randint(1, 3), 2), Fraction(rng.randint(0, 3), 2)
        u = State(space, {rng.choice(basis(space, wu)): Fraction(1)})
        v = State(space, {rng.choice(basis(space, wv)): Fraction(1)})
        n = rng.randint(-1, 2)
        if symplectic_involution(symplectic_involution(v)) != v:
            squared = False
        lhs = symplectic_involution(vertex_mode(u, n, v))
        rhs = vertex_mode(symplectic_involution(u), n, symplectic_involution(v))
        if lhs != rhs:
            automorphic = False
    checks.append(check_true("sigma^2 = 1", squared, p))
    checks.append(check_true("sigma(u_(n) v) = sigma(u)_(n) sigma(v)", automorphic, p))
    return checks


class FixedPointSuite(BaseSuite):
    name = "appendix-b"
    description = "1 x J in U, charge field and involutions of S(n), gl(n) closure"

    def cases(self) -> List[CaseSpec]:
        out = [CaseSpec(name=f"generator chain n={n}", parameters={"kind": "chain", "n": str(n)}) for n in self.budgets.u_ranks]
        out += [CaseSpec(name=f"charge field S({r})", parameters={"kind": "charge", "rank": str(r)}) for r in (1, 2, 3, 4)]
        out += [CaseSpec(name=f"charge sectors S({r})", parameters={"kind": "sectors", "rank": str(r)}) for r in (2, 4)]
        out += [CaseSpec(name=f"symplectic involution S({r})", parameters={"kind": "sigma", "rank": str(r)}) for r in (2, 4)]
        out += [CaseSpec(name=f"gl({r}) closure", parameters={"kind": "gl", "rank": str(r)}) for r in (1, 2, 3)]
        return out

    def run_case(self, case: CaseSpec) -> List[Check]:
        p = case.parameters
        kind = p["kind"]
        if kind == "chain":
            return verify_generator_chain(int(p["n"]))
        rank = int(p["rank"])
        if kind == "charge":
            return charge_checks(rank)
        if kind == "sectors":
            return charge_sector_checks(rank)
        if kind == "sigma":
            return symplectic_checks(rank)
        base, closed = gl_closure_dimension(rank)
        return [
            check_equal("span of o(a_i^+ a_j^-)", rank * rank, base, (("rank", str(rank)),)),
            check_equal("closed under commutators", rank * rank, closed, (("rank", str(rank)),)),
        ]
