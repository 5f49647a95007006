"""
FreeField Bench Twisted Suite

The twisted module M(1)(theta): mode commutators, the twisted field of
h(-1)1, the Virasoro action built from Delta_z, and the top values of
M(1)(theta)^+-.
"""

from fractions import Fraction
from typing import List

from freefield.checks import Check, check_equal, check_true
from freefield.errors import SectorError
from freefield.fields import apply_mode
from freefield.lattice import proportionality
from freefield.states import SpaceDescriptor, State, basis
from freefield.twisted import TWISTED, delta_apply, twisted_top, twisted_vertex_mode
from freefield.virasoro import conformal_vector, j_vector

from .base_suite import BaseSuite, CaseSpec

H_SPACE = SpaceDescriptor.heisenberg("h")
HALF_MODES = [Fraction(k, 2) for k in (-5, -3, -1, 1, 3, 5)]


def _h(r, v: State) -> State:
    return apply_mode(TWISTED, "h", r, v)


def twisted_states(depth: int) -> List[State]:
    out = []
    for j in range(0, 2 * depth + 1):
        for mono in basis(TWISTED, Fraction(j, 2)):
            out.append(State(TWISTED, {mono: Fraction(1)}))
    return out


def _l(m: int, v: State) -> State:
    return twisted_vertex_mode(conformal_vector(H_SPACE), m + 1, v)


class TwistedSuite(BaseSuite):
    name = "twisted"
    description = "twisted commutators, Delta_z, twisted Virasoro action and top values"

    def cases(self) -> List[CaseSpec]:
        d = str(self.budgets.twisted_depth)
        kinds = ["modes", "field", "virasoro", "l0", "delta", "tops", "parity"]
        return [CaseSpec(name=k, parameters={"kind": k, "depth": d}) for k in kinds]

    def run_case(self, case: CaseSpec) -> List[Check]:
        kind = case.parameters["kind"]
        depth = int(case.parameters["depth"])
        states = twisted_states(min(depth, 3) if kind == "virasoro" else depth)
        if kind == "modes":
            ok = all(
                _h(r, _h(s, v)) - _h(s, _h(r, v)) == v.scale(r if r + s == 0 else 0)
                for v in states
                for r in HALF_MODES
                for s in HALF_MODES
            )
            return [check_true("[h(r), h(s)] = r delta(r+s, 0)", ok, note=f"{len(states)} basis states")]
        if kind == "field":
            u = State.monomial(H_SPACE, [("h", 1)])
            ok = all(twisted_vertex_mode(u, r, v) == _h(r, v) for v in states for r in HALF_MODES)
            return [check_true("Y_tw(h(-1)1, z) = h(z)", ok)]
        if kind == "virasoro":
            ok = True
            for v in states:
                for m in range(-2, 3):
                    for r in HALF_MODES:
                        lhs = _l(m, _h(r, v)) - _h(r, _l(m, v))
                        if lhs != _h(m + r, v).scale(-r):
                            ok = False
            return [check_true("[L(m), h(r)] = -r h(m+r)", ok)]
        if kind == "l0":
            ok = all(_l(0, v) == v.scale(v.weight()) for v in states)
            return [check_true("L(0) = 1/16 + depth", ok, note=f"{len(states)} basis states")]
        if kind == "delta":
            family = delta_apply(conformal_vector(H_SPACE))
            expected = {Fraction(0): conformal_vector(H_SPACE), Fraction(-2): State.vacuum(H_SPACE).scale(Fraction(1, 16))}
            return [
                check_equal("Delta_z omega, z^0 part", expected[Fraction(0)], family.get(Fraction(0))),
                check_equal("Delta_z omega, z^-2 part", expected[Fraction(-2)], family.get(Fraction(-2))),
                check_equal("Delta_z omega has two parts", 2, len(family)),
            ]
        if kind == "tops":
            checks = []
            for sign, values in ((1, (Fraction(1, 16), Fraction(3, 128))), (-1, (Fraction(9, 16), Fraction(-45, 128)))):
                top = twisted_top(sign, 0)
                label = "+" if sign == 1 else "-"
                omega_val = proportionality(twisted_vertex_mode(conformal_vector(H_SPACE), 1, top), top)
                j_val = proportionality(twisted_vertex_mode(j_vector(H_SPACE), 3, top), top)
                checks.append(check_equal(f"o(omega) on M(1)(theta)^{label}", values[0], omega_val))
                checks.append(check_equal(f"o(J) on M(1)(theta)^{label}", values[1], j_val))
            return checks
        try:
            twisted_vertex_mode(State.monomial(H_SPACE, [("h", 1)]), 0, twisted_top(1, 0))
            rejected = False
        except SectorError:
            rejected = True
        return [check_true("theta-odd operator with an integral mode is rejected", rejected)]

