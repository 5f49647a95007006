"""
FreeField Bench Oracle Suite

Random triples (u, n, v) on which the normal-ordered field expansion and
the iterate recursion must agree exactly.
"""

import math
import random
from fractions import Fraction
from typing import List, Tuple

from freefield.checks import Check, check_true
from freefield.fields import vertex_mode
from freefield.oracle import vertex_mode_oracle
from freefield.states import SpaceDescriptor, State, basis

from .base_suite import BaseSuite, CaseSpec

ALGEBRAS = ("heisenberg", "lattice", "weyl", "tensor")
BATCH = 25


def _random_monomial_state(rng: random.Random, space: SpaceDescriptor, depth, momentum=Fraction(0), terms: int = 2) -> State:
    monos = basis(space, depth, momentum)
    if not monos:
        return State.zero(space)
    picked = rng.sample(list(monos), min(terms, len(monos)))
    return State(space, {m: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2])) for m in picked})


def random_triple(rng: random.Random, algebra: str, max_weight: int, max_depth: int) -> Tuple[State, int, State]:
    """u of weight <= max_weight, v of depth <= max_depth, and a formal mode n."""
    if algebra == "heisenberg":
        space = SpaceDescriptor.heisenberg()
        wu = rng.randint(0, max_weight)
        u = _random_monomial_state(rng, space, wu, terms=1 + rng.randint(0, 1))
        v = _random_monomial_state(rng, space, rng.randint(0, max_depth), rng.choice([Fraction(0), Fraction(1, 2), Fraction(-1), Fraction(2)]))
        top_u = wu
    elif algebra == "lattice":
        space = SpaceDescriptor.lattice()
        r = rng.choice([-1, 0, 1]) if max_weight >= 1 else 0
        du = rng.randint(0, max(0, max_weight - r * r))
        u = _random_monomial_state(rng, space, du, Fraction(r), terms=1)
        v = _random_monomial_state(rng, space, rng.randint(0, max_depth), rng.choice([Fraction(k, 2) for k in range(-2, 3)]))
        top_u = r * r + du
    else:
        rank = rng.randint(1, 3 if algebra == "weyl" else 2)
        space = SpaceDescriptor.weyl(rank) if algebra == "weyl" else SpaceDescriptor.tensor(rank)
        wu = Fraction(rng.randint(0, 2 * max_weight), 2)
        u = _random_monomial_state(rng, space, wu, terms=1 + rng.randint(0, 1))
        v = _random_monomial_state(rng, space, Fraction(rng.randint(0, 2 * max_depth), 2))
        top_u = math.ceil(wu)
    if not u:
        u = State.vacuum(space)
    if not v:
        v = State.vacuum(space)
    n = rng.randint(-2, int(top_u) + max_depth)
    return u, n, v


class OracleSuite(BaseSuite):
    name = "oracle"
    description = "field expansion against the iterate recursion on random triples"

    def cases(self) -> List[CaseSpec]:
        b = self.budgets
        batches = max(1, -(-b.oracle_cases // BATCH))
        return [
            CaseSpec(
                name=f"{algebra} batch {i}",
                parameters={"algebra": algebra, "batch": str(i), "seed": str(self.seed)},
            )
            for algebra in ALGEBRAS
            for i in range(batches)
        ]

    def run_case(self, case: CaseSpec) -> List[Check]:
        b = self.budgets
        algebra = case.parameters["algebra"]
        batch = int(case.parameters["batch"])
        rng = random.Random(f"{case.parameters['seed']}:{algebra}:{batch}")
        count = min(BATCH, b.oracle_cases - batch * BATCH)
        mismatches: List[str] = []
        for _ in range(count):
            u, n, v = random_triple(rng, algebra, b.oracle_weight, b.oracle_depth)
            fast = vertex_mode(u, n, v)
            slow = vertex_mode_oracle(u, n, v)
            if fast != slow:
                mismatches.append(f"({u})_({n}) ({v})")
        return [check_true(f"{algebra} expansion = recursion on {count} triples", not mismatches, note="; ".join(mismatches[:3]))]
