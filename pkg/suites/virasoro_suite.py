"""
FreeField Bench Virasoro Suite

J is a Virasoro singular vector, [L_m, J_n] = (3(m+1) - n) J_(m+n) on
low-depth states, central charges, and the L(0) grading of Weyl parity
sectors.
"""

from fractions import Fraction
from typing import List

from freefield.checks import Check, check_equal, check_true
from freefield.fields import ModeIndex, vertex_mode
from freefield.states import SpaceDescriptor, State, basis, weight_of
from freefield.virasoro import central_charge, commutator_mode, conformal_vector, j_vector, virasoro_mode
from freefield.weyl import weyl_parity

from .base_suite import BaseSuite, CaseSpec

HEIS = SpaceDescriptor.heisenberg()


def commutator_failures(m: int, n_range: int, depth: int) -> List[str]:
    """Basis states and n where [L_m, J_n] v != (3(m+1) - n) J_(m+n) v."""
    omega, J = conformal_vector(HEIS), j_vector(HEIS)
    bad = []
    for d in range(depth + 1):
        for mono in basis(HEIS, d):
            v = State(HEIS, {mono: Fraction(1)})
            for n in range(-n_range, n_range + 1):
                lhs = commutator_mode(omega, m + 1, J, ModeIndex.weighted(n), v)
                rhs = vertex_mode(J, ModeIndex.weighted(m + n), v).scale(Fraction(3 * (m + 1) - n))
                if lhs != rhs:
                    bad.append(f"n={n} on {v}")
    return bad


class VirasoroSuite(BaseSuite):
    name = "virasoro"
    description = "singular vector J, [L_m, J_n], central charges, Weyl L(0) sectors"

    def cases(self) -> List[CaseSpec]:
        b = self.budgets
        out = [
            CaseSpec(name="L(1) J = 0", parameters={"k": "1"}),
            CaseSpec(name="L(2) J = 0", parameters={"k": "2"}),
        ]
        out += [
            CaseSpec(name=f"[L_{m}, J_n]", parameters={"m": str(m), "range": str(b.virasoro_range), "depth": str(b.virasoro_depth)})
            for m in range(-b.virasoro_range, b.virasoro_range + 1)
        ]
        out += [
            CaseSpec(name="c(M(1))", parameters={"space": "heisenberg"}),
            CaseSpec(name="c(V_L)", parameters={"space": "lattice"}),
        ]
        out += [CaseSpec(name=f"c(S({n}))", parameters={"space": "weyl", "n": str(n)}) for n in (1, 2, 3)]
        out += [CaseSpec(name=f"c(S({n - 1}) x M(1))", parameters={"space": "tensor", "n": str(n)}) for n in (2, 3)]
        out += [
            CaseSpec(name=f"L(0) on S({n}) parity sectors", parameters={"n": str(n), "depth": str(b.weyl_depth)})
            for n in (1, 2, 3)
        ]
        return out

    def run_case(self, case: CaseSpec) -> List[Check]:
        p = case.parameters
        if "k" in p:
            return [check_equal(case.name, State.zero(HEIS), virasoro_mode(int(p["k"]), j_vector(HEIS)))]
        if "m" in p:
            bad = commutator_failures(int(p["m"]), int(p["range"]), int(p["depth"]))
            return [check_true(case.name, not bad, note="; ".join(bad[:5]))]
        if "space" in p:
            kind = p["space"]
            if kind == "heisenberg":
                return [check_equal(case.name, Fraction(1), central_charge(HEIS))]
            if kind == "lattice":
                return [check_equal(case.name, Fraction(1), central_charge(SpaceDescriptor.lattice()))]
            n = int(p["n"])
            if kind == "weyl":
                return [check_equal(case.name, Fraction(-n), central_charge(SpaceDescriptor.weyl(n)))]
            return [check_equal(case.name, Fraction(-n + 2), central_charge(SpaceDescriptor.tensor(n - 1)))]
        return self._weyl_sectors(case, int(p["n"]), int(p["depth"]))

    def _weyl_sectors(self, case: CaseSpec, n: int, depth: int) -> List[Check]:
        space = SpaceDescriptor.weyl(n)
        eigen_ok = parity_ok = True
        tested = 0
        for j in range(0, 2 * depth + 1):
            for mono in basis(space, Fraction(j, 2)):
                v = State(space, {mono: Fraction(1)})
                w = weight_of(space, mono)
                tested += 1
                if virasoro_mode(0, v) != v.scale(w):
                    eigen_ok = False
                if (2 * w) % 2 != weyl_parity(mono):
                    parity_ok = False
        note = f"{tested} basis states"
        return [
            check_true("L(0) v = wt(v) v", eigen_ok, note=note),
            check_true("fractional part of wt = parity/2", parity_ok, note=note),
        ]
