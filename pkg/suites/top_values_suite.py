"""
FreeField Bench Top-Value Suite

Eigenvalues of the zero modes o(omega) and o(J) on the top levels of the
five irreducible M(1)^+-module families.
"""

from fractions import Fraction
from typing import Dict, List, Tuple

from freefield.checks import Check, check_equal
from freefield.fields import zero_mode
from freefield.lattice import proportionality
from freefield.scalars import RatFunc
from freefield.states import SpaceDescriptor, State
from freefield.twisted import TWISTED, twisted_top
from freefield.virasoro import conformal_vector, j_vector

from .base_suite import BaseSuite, CaseSpec

LAM = RatFunc.variable()

# module -> (o(omega), o(J)) on its top
EXPECTED: Dict[str, Tuple[object, object]] = {
    "M(1)^+": (Fraction(0), Fraction(0)),
    "M(1)^-": (Fraction(1), Fraction(-6)),
    "M(1,x)": (LAM * LAM / 2, LAM**4 - LAM * LAM / 2),
    "M(1)(theta)^+": (Fraction(1, 16), Fraction(3, 128)),
    "M(1)(theta)^-": (Fraction(9, 16), Fraction(-45, 128)),
}


def module_top(module: str) -> State:
    heis = SpaceDescriptor.heisenberg()
    if module == "M(1)^+":
        return State.vacuum(heis)
    if module == "M(1)^-":
        return State.monomial(heis, [("a", Fraction(1))])
    if module == "M(1,x)":
        return State.vacuum(heis, LAM)
    if module == "M(1)(theta)^+":
        return twisted_top(1, 0)
    if module == "M(1)(theta)^-":
        return twisted_top(-1, 0)
    raise KeyError(module)


def operator_for(name: str, top: State) -> State:
    space = SpaceDescriptor.heisenberg("h") if top.space == TWISTED else top.space
    return conformal_vector(space) if name == "omega" else j_vector(space)


class TopValuesSuite(BaseSuite):
    name = "table1"
    description = "o(omega) and o(J) on the tops of M(1)^+-, M(1,x), M(1)(theta)^+-"

    def cases(self) -> List[CaseSpec]:
        return [
            CaseSpec(name=f"o({op}) on {module}", parameters={"module": module, "operator": op})
            for module in EXPECTED
            for op in ("omega", "J")
        ]

    def run_case(self, case: CaseSpec) -> List[Check]:
        module = case.parameters["module"]
        op = case.parameters["operator"]
        top = module_top(module)
        image = zero_mode(operator_for(op, top), top)
        value = proportionality(image, top)
        expected = EXPECTED[module][0 if op == "omega" else 1]
        return [check_equal(case.name, expected, value)]
