"""
FreeField Bench Characters Suite

Truncated q-series: closed forms against basis enumeration, the Fock and
lattice decompositions into Virasoro c=1 characters, and the character
of the fixed-point subalgebra U.
"""

from typing import List

from freefield.checks import Check
from freefield.qseries import closed_form_checks, lattice_decomposition_checks, telescoping_checks, u_checks

from .base_suite import BaseSuite, CaseSpec


class CharactersSuite(BaseSuite):
    name = "characters"
    description = "closed-form characters, Virasoro decompositions, character of U"

    def cases(self) -> List[CaseSpec]:
        b = self.budgets
        out = [
            CaseSpec(name="closed forms", parameters={"kind": "closed", "order": str(b.char_order_small), "tensor_order": str(b.char_order_tensor)}),
            CaseSpec(name="Fock telescoping", parameters={"kind": "telescoping", "order": str(b.telescoping_order)}),
            CaseSpec(name="lattice decomposition", parameters={"kind": "lattice", "order": str(b.char_order_small)}),
        ]
        out += [
            CaseSpec(name=f"character of U n={n}", parameters={"kind": "u", "n": str(n), "order": str(b.char_order_tensor)})
            for n in b.u_ranks
        ]
        return out

    def run_case(self, case: CaseSpec) -> List[Check]:
        p = case.parameters
        kind = p["kind"]
        order = int(p["order"])
        if kind == "closed":
            return closed_form_checks(order, int(p["tensor_order"]))
        if kind == "telescoping":
            return telescoping_checks(order)
        if kind == "lattice":
            return lattice_decomposition_checks(order)
        return u_checks(int(p["n"]), order)
