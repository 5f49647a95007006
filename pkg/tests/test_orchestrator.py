import math
import os
import random
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import orjson
import pytest

from config import Budgets
from freefield.checks import check_true
from freefield.errors import UnknownSuiteError
from suites.base_suite import BaseSuite, CaseResult, CaseSpec
from suites.oracle_suite import random_triple
from suites.orchestrator import SUITES, SuiteReport, get_orchestrator, run_case_in_worker, summarize

SMALL = Budgets(
    c1_depth=2,
    c1_samples=2,
    atypical_depth=3,
    twisted_top_i=1,
    twisted_depth=2,
    lift_mk=1,
    sl2_weight=2,
    spanning_depth=2,
    virasoro_depth=2,
    virasoro_range=1,
    oracle_cases=25,
    oracle_weight=3,
    oracle_depth=3,
    u_ranks=[2],
    char_order_small=8,
    char_order_tensor=4,
    telescoping_order=8,
)


class _Exploding(BaseSuite):
    name = "exploding"

    def cases(self):
        return [CaseSpec(name="boom"), CaseSpec(name="empty")]

    def run_case(self, case):
        if case.name == "boom":
            raise RuntimeError("kaboom")
        return []


def test_case_parameters_are_isolated():
    a = CaseSpec(name="1")
    b = CaseSpec(name="2")
    a.parameters["key"] = "value"
    assert b.parameters == {}


def test_registry_covers_every_suite():
    orchestrator = get_orchestrator()
    for name in ("table1", "virasoro", "appendix-a", "appendix-b", "c1", "twisted", "characters", "all"):
        assert name in orchestrator.available()
    assert set(orchestrator.workflow_definitions["all"]) == set(SUITES)


def test_safe_run_turns_exceptions_into_errors():
    suite = _Exploding(Budgets())
    boom, empty = (suite._safe_run(c) for c in suite.cases())
    assert boom[0].status == "error"
    assert "kaboom" in boom[0].computed
    assert empty[0].status == "skipped"


def test_check_labels_and_parameters():
    class _One(BaseSuite):
        name = "one"

        def cases(self):
            return [CaseSpec(name="c", parameters={"a": "1"})]

        def run_case(self, case):
            return [check_true("holds", True, (("b", "2"),))]

    results = _One(Budgets())._safe_run(_One(Budgets()).cases()[0])
    assert results[0].case == "c: holds"
    assert results[0].parameters == {"a": "1", "b": "2"}
    assert results[0].status == "pass"


def test_summary_counts():
    results = [
        CaseResult(suite="s", case="a", status="pass"),
        CaseResult(suite="s", case="b", status="fail"),
        CaseResult(suite="s", case="c", status="error"),
        CaseResult(suite="s", case="d", status="skipped"),
    ]
    summary = summarize(results)
    assert (summary.total, summary.passed, summary.failed, summary.errors, summary.skipped) == (4, 1, 1, 1, 1)
    report = SuiteReport(suite="s", cases=results, summary=summary)
    assert not report.ok


def test_worker_entry_point_round_trips_plain_data():
    case = SUITES["table1"](Budgets()).cases()[0]
    out = run_case_in_worker("table1", Budgets().model_dump(), 0, case.model_dump())
    assert out[0]["status"] == "pass"


@pytest.mark.parametrize("algebra", ["weyl", "tensor"])
def test_oracle_modes_reach_the_top_of_half_integral_weights(algebra):
    rng = random.Random(3)
    reached = False
    for _ in range(1500):
        u, n, v = random_triple(rng, algebra, 2, 1)
        w = u.weight()
        if w.denominator == 2 and n == math.ceil(w) + 1:
            reached = True
            break
    assert reached


@pytest.mark.asyncio
async def test_table1_all_pass():
    report = await get_orchestrator().run_workflow("table1", Budgets(), seed=1, progress=False)
    assert report.summary.total == 10
    assert report.ok
    assert report.conventions.charge_sign == -1
    assert report.conventions.mode_convention == "formal"


@pytest.mark.asyncio
async def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        await get_orchestrator().run_workflow("table9", Budgets(), progress=False)


@pytest.mark.asyncio
async def test_structured_report_is_sorted_and_records_budgets():
    report = await get_orchestrator().run_workflow("table1", SMALL, seed=1, progress=False)
    data = orjson.loads(report.to_structured())
    assert list(data) == sorted(data)
    assert data["budgets"]["c1_depth"] == 2
    assert data["schema_version"] == "1"
    assert "timing" not in orjson.loads(report.to_structured(include_timing=False))


@pytest.mark.asyncio
async def test_tsv_view():
    report = await get_orchestrator().run_workflow("table1", SMALL, seed=1, progress=False)
    lines = report.to_tsv().splitlines()
    assert lines[0].split("\t") == ["suite", "case", "status", "expected", "computed", "parameters"]
    assert len(lines) == 11


@pytest.mark.asyncio
@pytest.mark.parametrize("suite", ["virasoro", "appendix-a", "twisted", "characters", "oracle", "appendix-b"])
async def test_small_budget_suites_pass(suite):
    report = await get_orchestrator().run_workflow(suite, SMALL, seed=1, progress=False)
    failing = [r for r in report.cases if r.status != "pass"]
    assert not failing, failing


@pytest.mark.asyncio
async def test_report_independent_of_worker_count():
    one = await get_orchestrator().run_workflow("twisted", SMALL, seed=3, jobs=1, progress=False)
    two = await get_orchestrator().run_workflow("twisted", SMALL, seed=3, jobs=2, progress=False)
    assert one.to_structured(include_timing=False) == two.to_structured(include_timing=False)


@pytest.mark.slow
@pytest.mark.asyncio
async def test_all_with_default_budgets():
    report = await get_orchestrator().run_workflow("all", Budgets(), seed=20240601, jobs=2, progress=False)
    assert report.ok, [r for r in report.cases if r.status != "pass"]
