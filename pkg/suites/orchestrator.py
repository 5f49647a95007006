"""
FreeField Bench Suite Orchestrator

This module coordinates the verification suites: the suite registry, the
workflow definitions behind `verify <name>`, dispatch of cases to a worker
pool and deterministic report assembly.
"""

import asyncio
import logging
import sys
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Type

import orjson
from pydantic import BaseModel, Field
from tqdm import tqdm

from config import Budgets
from freefield import __version__
from freefield.errors import UnknownSuiteError
from freefield.weyl import CHARGE_SIGN

from .base_suite import BaseSuite, CaseResult, CaseSpec
from .c1_suite import C1Suite
from .characters_suite import CharactersSuite
from .fixed_point_suite import FixedPointSuite
from .oracle_suite import OracleSuite
from .sl2_lattice_suite import Sl2LatticeSuite
from .top_values_suite import TopValuesSuite
from .twisted_suite import TwistedSuite
from .virasoro_suite import VirasoroSuite

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

SUITES: Dict[str, Type[BaseSuite]] = {
    suite.name: suite
    for suite in (
        TopValuesSuite,
        VirasoroSuite,
        OracleSuite,
        Sl2LatticeSuite,
        FixedPointSuite,
        C1Suite,
        TwistedSuite,
        CharactersSuite,
    )
}


class Conventions(BaseModel):
    """Convention choices every report records in its header."""

    mode_convention: str = "formal"
    charge_sign: int = CHARGE_SIGN
    cocycle: str = "trivial (L = Z gamma, (gamma, gamma) = 2)"


class ReportSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    errors: int = 0
    skipped: int = 0


class SuiteReport(BaseModel):
    """Result of one `verify` run."""

    schema_version: str = SCHEMA_VERSION
    suite: str
    engine_version: str = __version__
    conventions: Conventions = Field(default_factory=Conventions)
    budgets: Dict[str, Any] = Field(default_factory=dict)
    seed: int = 0
    cases: List[CaseResult] = Field(default_factory=list)
    summary: ReportSummary = Field(default_factory=ReportSummary)
    timing: Dict[str, float] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0 and self.summary.errors == 0

    def to_structured(self, include_timing: bool = True) -> bytes:
        data = self.model_dump(mode="json")
        if not include_timing:
            data.pop("timing")
        return orjson.dumps(data, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2) + b"\n"

    def to_tsv(self) -> str:
        lines = ["\t".join(("suite", "case", "status", "expected", "computed", "parameters"))]
        for r in self.cases:
            params = ";".join(f"{k}={v}" for k, v in sorted(r.parameters.items()))
            row = (r.suite, r.case, r.status, r.expected, r.computed, params)
            lines.append("\t".join(field.replace("\t", " ").replace("\n", " ") for field in row))
        return "\n".join(lines) + "\n"


def summarize(results: List[CaseResult]) -> ReportSummary:
    summary = ReportSummary(total=len(results))
    for r in results:
        if r.status == "pass":
            summary.passed += 1
        elif r.status == "fail":
            summary.failed += 1
        elif r.status == "error":
            summary.errors += 1
        else:
            summary.skipped += 1
    return summary


def run_case_in_worker(suite_name: str, budgets: Dict[str, Any], seed: int, case: Dict[str, Any]) -> List[Dict[str, Any]]:
    """Rebuild a suite and a case from plain data and run it; the pool entry point."""
    suite = SUITES[suite_name](Budgets.model_validate(budgets), seed)
    results = suite._safe_run(CaseSpec.model_validate(case))
    return [r.model_dump() for r in results]


class SuiteOrchestrator:
    """
    Central coordinator for all verification suites.

    Expands a workflow name into its suites, fans their cases out to a
    worker pool and assembles results in definition order.
    """

    def __init__(self):
        self.suites = dict(SUITES)
        self.workflow_definitions = self._define_workflows()

    def _define_workflows(self) -> Dict[str, List[str]]:
        """The suites each `verify` name runs."""
        workflows = {name: [name] for name in self.suites}
        workflows["all"] = [
            "table1",
            "virasoro",
            "oracle",
            "appendix-a",
            "appendix-b",
            "c1",
            "twisted",
            "characters",
        ]
        return workflows

    def available(self) -> List[str]:
        return list(self.workflow_definitions)

    def plan(self, workflow: str, budgets: Budgets, seed: int) -> List[tuple]:
        """(suite name, case) pairs in report order."""
        if workflow not in self.workflow_definitions:
            raise UnknownSuiteError(f"unknown suite {workflow!r}; choose from {', '.join(self.available())}")
        planned = []
        for suite_name in self.workflow_definitions[workflow]:
            suite = self.suites[suite_name](budgets, seed)
            planned.extend((suite_name, case) for case in suite.cases())
        return planned

    async def run_workflow(
        self,
        workflow: str,
        budgets: Optional[Budgets] = None,
        seed: int = 0,
        jobs: int = 1,
        progress: Optional[bool] = None,
    ) -> SuiteReport:
        budgets = budgets or Budgets()
        planned = self.plan(workflow, budgets, seed)
        logger.info(f"Starting workflow {workflow}: {len(planned)} cases on {jobs} worker(s)")
        started = time.perf_counter()
        if progress is None:
            progress = sys.stderr.isatty()
        bar = tqdm(total=len(planned), desc=workflow, unit="case", disable=not progress, file=sys.stderr)
        budgets_data = budgets.model_dump()

        try:
            if jobs == 1:
                chunks = []
                for suite_name, case in planned:
                    chunks.append(run_case_in_worker(suite_name, budgets_data, seed, case.model_dump()))
                    bar.update(1)
            else:
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    chunks = await self._dispatch(pool, planned, budgets_data, seed, bar)
        finally:
            bar.close()

        results = [CaseResult.model_validate(r) for chunk in chunks for r in chunk]
        elapsed = time.perf_counter() - started
        report = SuiteReport(
            suite=workflow,
            budgets=budgets_data,
            seed=seed,
            cases=results,
            summary=summarize(results),
            timing={"seconds": round(elapsed, 3)},
        )
        logger.info(
            f"Completed workflow {workflow}: {report.summary.passed}/{report.summary.total} passed in {elapsed:.1f}s"
        )
        return report

    async def _dispatch(self, pool: Executor, planned, budgets_data, seed: int, bar) -> List[List[Dict[str, Any]]]:
        loop = asyncio.get_running_loop()
        futures = []
        for suite_name, case in planned:
            future = loop.run_in_executor(pool, run_case_in_worker, suite_name, budgets_data, seed, case.model_dump())
            future.add_done_callback(lambda _: bar.update(1))
            futures.append(future)
        # gather keeps submission order
        return await asyncio.gather(*futures)

    def get_suite_status(self) -> Dict[str, Any]:
        budgets = Budgets()
        return {name: suite(budgets).get_status() for name, suite in self.suites.items()}


# Global orchestrator instance
orchestrator = SuiteOrchestrator()


def get_orchestrator() -> SuiteOrchestrator:
    """Get the global orchestrator instance."""
    return orchestrator
