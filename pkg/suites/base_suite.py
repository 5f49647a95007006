"""
Base Suite Class for FreeField Bench

This module provides the base class that all verification suites inherit
from: case enumeration, safe execution and logging.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from config import Budgets
from freefield.checks import Check


class CaseSpec(BaseModel):
    """One unit of work; rebuilt inside pool workers from its fields."""

    name: str
    parameters: Dict[str, str] = Field(default_factory=dict)


class CaseResult(BaseModel):
    """Outcome of one exact check."""

    suite: str
    case: str
    status: str  # pass, fail, error, skipped
    expected: str = ""
    computed: str = ""
    parameters: Dict[str, str] = Field(default_factory=dict)
    note: str = ""


class BaseSuite(ABC):
    """
    Base class for all verification suites.

    A suite lists its cases up front; each case runs independently and
    yields one or more Checks, which become CaseResults.
    """

    name: str = ""
    description: str = ""

    def __init__(self, budgets: Budgets, seed: int = 0):
        self.suite_name = self.name or self.__class__.__name__.lower()
        self.logger = logging.getLogger(f"suite.{self.suite_name}")
        self.budgets = budgets
        self.seed = seed

    @abstractmethod
    def cases(self) -> List[CaseSpec]:
        """Cases in report order."""

    @abstractmethod
    def run_case(self, case: CaseSpec) -> List[Check]:
        """Execute one case."""

    def _to_results(self, case: CaseSpec, checks: List[Check]) -> List[CaseResult]:
        results = []
        for check in checks:
            params = dict(case.parameters)
            params.update(dict(check.parameters))
            label = check.name if check.name == case.name else f"{case.name}: {check.name}"
            results.append(
                CaseResult(
                    suite=self.suite_name,
                    case=label,
                    status="pass" if check.passed else "fail",
                    expected=check.expected,
                    computed=check.computed,
                    parameters=params,
                    note=check.note,
                )
            )
        return results

    def _log_case_start(self, case: CaseSpec):
        self.logger.info(f"Starting {self.suite_name} case {case.name} {case.parameters}")

    def _log_case_complete(self, case: CaseSpec, results: List[CaseResult]):
        failed = sum(1 for r in results if r.status != "pass")
        self.logger.info(f"Completed {self.suite_name} case {case.name}: {len(results)} checks, {failed} failed")

    def _log_error(self, case: CaseSpec, error: Exception):
        self.logger.error(f"Error in {self.suite_name} case {case.name}: {error}")

    def _safe_run(self, case: CaseSpec) -> List[CaseResult]:
        """Run a case; exceptions become a single error result."""
        try:
            self._log_case_start(case)
            results = self._to_results(case, self.run_case(case))
            if not results:
                results = [CaseResult(suite=self.suite_name, case=case.name, status="skipped", parameters=dict(case.parameters))]
            self._log_case_complete(case, results)
            return results
        except Exception as e:
            self._log_error(case, e)
            return [
                CaseResult(
                    suite=self.suite_name,
                    case=case.name,
                    status="error",
                    computed=f"{type(e).__name__}: {e}",
                    parameters=dict(case.parameters),
                )
            ]

    def get_status(self) -> Dict[str, Any]:
        return {
            "suite_name": self.suite_name,
            "description": self.description,
            "cases": len(self.cases()),
        }
