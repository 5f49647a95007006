"""
FreeField Bench verification suites.
"""

from .base_suite import BaseSuite, CaseResult, CaseSpec
from .orchestrator import SUITES, Conventions, SuiteOrchestrator, SuiteReport, get_orchestrator

__all__ = [
    "BaseSuite",
    "CaseResult",
    "CaseSpec",
    "Conventions",
    "SUITES",
    "SuiteOrchestrator",
    "SuiteReport",
    "get_orchestrator",
]
