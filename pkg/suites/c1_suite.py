"""
FreeField Bench C1 Suite

Rank evidence for the C_1 subspaces of M(1)^+-modules: generic ranks of
M(1, x) with specialization coherence, codimension scans at atypical
momenta m/sqrt 2, and the exclusion of twisted tops from C_1.
"""

import random
from typing import List

from freefield.c1 import (
    C1Module,
    atypical_codim_scan,
    c1_component,
    rank_analysis,
    saturation_check,
    twisted_top_exclusion,
)
from freefield.checks import Check, check_equal, check_true
from freefield.linalg import bareiss_rank
from freefield.printing import format_value

from .base_suite import BaseSuite, CaseSpec


class C1Suite(BaseSuite):
    name = "c1"
    description = "C1 ranks of M(1,x), atypical codimension scans, twisted-top exclusion"

    def cases(self) -> List[CaseSpec]:
        b = self.budgets
        out = [
            CaseSpec(name=f"M(1,x) depth {d}", parameters={"kind": "parametric", "depth": str(d), "samples": str(b.c1_samples)})
            for d in range(1, b.c1_depth + 1)
        ]
        out += [
            CaseSpec(name=f"M(1,{m}/s2) scan", parameters={"kind": "atypical", "m": str(m), "depth": str(b.atypical_depth)})
            for m in (0, 1)
        ]
        out += [
            CaseSpec(name=f"twisted {'+' if sign == 1 else '-'} tops", parameters={"kind": "twisted", "sign": str(sign), "i": str(b.twisted_top_i)})
            for sign in (1, -1)
        ]
        return out

    def run_case(self, case: CaseSpec) -> List[Check]:
        p = case.parameters
        kind = p["kind"]
        if kind == "parametric":
            return self._parametric(int(p["depth"]), int(p["samples"]))
        if kind == "atypical":
            scan = atypical_codim_scan(int(p["m"]), int(p["depth"]), row_budget=self.budgets.c1_row_budget)
            table = ", ".join(f"d={d}: {dim - rk}" for d, dim, rk in scan.rows)
            threshold = scan.threshold
            return [
                check_true("scan complete", not scan.partial, note=table),
                check_true(
                    "codimension 0 reached",
                    threshold is not None and threshold <= int(p["depth"]),
                    note=f"threshold {threshold}; codimensions {table}",
                ),
            ]
        sign = int(p["sign"])
        return [
            check_true(
                f"top i={row.i} not in C1",
                row.excluded,
                (("i", str(row.i)), ("depth", format_value(row.depth))),
                note=f"quotient dimension {row.quotient_dim}",
            )
            for row in twisted_top_exclusion(sign, int(p["i"]))
        ]

    def _parametric(self, depth: int, samples: int) -> List[Check]:
        module = C1Module.parametric()
        mat = c1_component(module, depth)
        report = rank_analysis(mat, samples=samples, seed=self.seed + depth)
        note = (
            f"generic rank {report.generic_rank} of {report.ambient_dim}, codimension {report.codimension}; "
            f"exceptional candidates {report.exceptional_candidates or 'none'}"
        )
        specs = ", ".join(f"x={format_value(x)}: {r}" for x, r in report.specializations)
        shuffled = mat.shuffled(random.Random(self.seed + 100 * depth))
        base, saturated = saturation_check(module, depth)
        return [
            check_true("specializations agree with the generic rank", report.coherent, note=f"{note}; {specs}"),
            check_equal("rank invariant under row order", report.generic_rank, bareiss_rank(shuffled.rows)),
            check_equal("higher modes and iterated products stay in the span", base, saturated),
        ]
