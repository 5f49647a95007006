import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from config import Budgets, Settings, ValidationError


def test_budget_defaults():
    b = Budgets()
    assert b.c1_depth == 5
    assert b.atypical_depth == 6
    assert b.u_ranks == [2, 3]
    assert b.lift_mk == 4


def test_override_applies_and_validates():
    b = Budgets().override({"c1_depth": "3", "u_ranks": "2,4"})
    assert b.c1_depth == 3
    assert b.u_ranks == [2, 4]


def test_override_rejects_unknown_key():
    with pytest.raises(ValidationError):
        Budgets().override({"no_such_budget": "1"})


def test_override_rejects_bad_value():
    with pytest.raises(ValidationError):
        Budgets().override({"c1_depth": "deep"})


def test_u_ranks_need_two():
    with pytest.raises(ValidationError):
        Budgets(u_ranks=[1])


def test_override_rejects_non_integer_ranks():
    with pytest.raises(ValidationError):
        Budgets().override({"u_ranks": "a"})
    with pytest.raises(ValidationError):
        Budgets().override({"u_ranks": "2;x"})
    assert Budgets().override({"u_ranks": "2; 5"}).u_ranks == [2, 5]


def test_budget_lists_are_not_shared():
    a, b = Budgets(), Budgets()
    a.u_ranks.append(5)
    assert b.u_ranks == [2, 3]


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("FREEFIELD_REPORT_DIR", str(tmp_path))
    monkeypatch.setenv("FREEFIELD_JOBS", "3")
    monkeypatch.setenv("FREEFIELD_BUDGETS__C1_DEPTH", "2")
    settings = Settings()
    assert settings.report_dir == tmp_path
    assert settings.jobs == 3
    assert settings.budgets.c1_depth == 2


def test_settings_reject_bad_log_format(monkeypatch):
    monkeypatch.setenv("FREEFIELD_LOG_FORMAT", "xml")
    with pytest.raises(ValidationError):
        Settings()
