from fractions import Fraction
import os
import random
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.c1 import (
    C1Module,
    atypical_codim_scan,
    c1_component,
    rank_analysis,
    saturation_check,
    twisted_top_exclusion,
)
from freefield.errors import BudgetExceededError
from freefield.linalg import bareiss_rank, rank


def test_low_depths_of_parametric_module():
    module = C1Module.parametric()
    assert rank(c1_component(module, 0).rows) == 0
    one = c1_component(module, 1)
    assert one.ambient_dim == 1 and rank(one.rows) == 0
    two = c1_component(module, 2)
    assert two.ambient_dim == 2
    assert bareiss_rank(two.rows) == 1


@pytest.mark.parametrize("depth", [2, 3, 4])
def test_specializations_agree_with_generic_rank(depth):
    mat = c1_component(C1Module.parametric(), depth)
    report = rank_analysis(mat, samples=3, seed=depth)
    assert report.coherent
    assert len(report.specializations) == 3
    assert 0 < report.generic_rank <= report.ambient_dim


def test_rank_does_not_depend_on_row_order():
    mat = c1_component(C1Module.parametric(), 3)
    rng = random.Random(7)
    assert bareiss_rank(mat.shuffled(rng).rows) == bareiss_rank(mat.rows)


def test_saturation_does_not_raise_rank():
    base, saturated = saturation_check(C1Module.orbifold(1), 4)
    assert base == saturated


def test_saturation_detects_truncated_generators():
    module = C1Module.orbifold(1)
    truncated = c1_component(module, 4, max_weight=2)
    base, saturated = saturation_check(module, 4, base=truncated)
    full, _ = saturation_check(module, 4)
    assert base < saturated <= full


def test_row_budget():
    with pytest.raises(BudgetExceededError):
        c1_component(C1Module.parametric(), 5, row_budget=3)


@pytest.mark.parametrize("sign", [1, -1])
def test_twisted_tops_are_not_in_c1(sign):
    rows = twisted_top_exclusion(sign, 1)
    assert [r.i for r in rows] == [0, 1]
    assert all(r.excluded for r in rows)
    assert all(r.quotient_dim >= 1 for r in rows)


def test_twisted_top_depths():
    rows = twisted_top_exclusion(-1, 1)
    assert [r.depth for r in rows] == [Fraction(1, 2), Fraction(3, 2)]


def test_atypical_scan_stops_on_budget():
    scan = atypical_codim_scan(0, 6, row_budget=5)
    assert scan.partial
    assert len(scan.rows) < 7


@pytest.mark.slow
@pytest.mark.parametrize("m", [0, 1])
def test_atypical_codimension_reaches_zero(m):
    scan = atypical_codim_scan(m, 6)
    assert not scan.partial
    assert scan.threshold is not None and scan.threshold <= 6


def test_module_descriptions():
    assert C1Module.parametric().describe() == "M(1,x)"
    assert C1Module.atypical(1).describe() == "M(1,1/2 s2)"
    assert C1Module.twisted(-1).describe() == "M(1)(theta)^-"
