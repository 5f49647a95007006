"""
FreeField Bench sl2 Lattice Suite

sl_2 inside V_L, the highest-weight vectors v_m^(k) = F^k e^((m/2+k) gamma),
the J-mode identity that lifts v_m^(k) to v_m^(k+2), and the J/L spanning
set of M(1, m/sqrt 2).
"""

from typing import List

from freefield.checks import Check, check_equal, check_true
from freefield.lattice import (
    e_zero,
    exponential,
    identification_checks,
    j_lattice,
    lift_mode_convention,
    proportionality,
    sl2_bracket_checks,
    spanning_check,
    verify_lift_identity,
)
from freefield.scalars import ZERO

from .base_suite import BaseSuite, CaseSpec


class Sl2LatticeSuite(BaseSuite):
    name = "appendix-a"
    description = "sl2 in V_L, highest-weight vectors v_m^(k), the J_(-2m-4k-1) identity, spanning sets"

    def cases(self) -> List[CaseSpec]:
        b = self.budgets
        out = [
            CaseSpec(name="mode convention", parameters={"kind": "convention"}),
            CaseSpec(name="E^2 J and E^3 J", parameters={"kind": "ej"}),
            CaseSpec(name="sl2 brackets", parameters={"kind": "brackets", "weight": str(b.sl2_weight)}),
        ]
        for m in range(0, b.lift_mk + 1):
            for k in range(0, (b.lift_mk - m) // 2 + 1):
                out.append(CaseSpec(name=f"v_{m}^({k})", parameters={"kind": "lift", "m": str(m), "k": str(k)}))
        for m in (0, 1):
            out.append(CaseSpec(name=f"spanning set m={m}", parameters={"kind": "spanning", "m": str(m), "depth": str(b.spanning_depth)}))
            out.append(CaseSpec(name=f"Fock identification m={m}", parameters={"kind": "identification", "m": str(m), "depth": str(b.spanning_depth)}))
        return out

    def run_case(self, case: CaseSpec) -> List[Check]:
        p = case.parameters
        kind = p["kind"]
        if kind == "convention":
            chosen, checks = lift_mode_convention()
            return checks + [check_equal("J_(-2m-4k-1) reading", "formal", chosen)]
        if kind == "ej":
            J = j_lattice()
            e2j = e_zero(J, 2)
            c = proportionality(e2j, exponential(2)) if e2j else None
            return [
                check_true("E^2 J is a nonzero multiple of e^(2 gamma)", c not in (None, ZERO), note=f"factor {c}"),
                check_true("E^3 J = 0", not e_zero(J, 3)),
            ]
        if kind == "brackets":
            return sl2_bracket_checks(int(p["weight"]))
        if kind == "identification":
            return identification_checks(int(p["m"]), int(p["depth"]))
        if kind == "lift":
            report = verify_lift_identity(int(p["m"]), int(p["k"]))
            return report.checks
        rows = spanning_check(int(p["m"]), int(p["depth"]))
        return [
            check_equal(f"rank at depth {row.depth}", row.dimension, row.rank, (("depth", str(row.depth)),))
            for row in rows
        ]
