from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import orjson
import pytest
from click.testing import CliRunner

from app import character_of, cli, module_of, parse_budget_pairs
from freefield.c1 import ModuleKind


@pytest.fixture
def runner():
    return CliRunner()


def test_eval_j_on_lambda(runner):
    result = runner.invoke(cli, ["eval", "|lam>", "--operator", "J", "--mode", "3"])
    assert result.exit_code == 0
    assert result.output.strip() == "(x^4 - 1/2 x^2) |lam>"


def test_eval_weighted_convention(runner):
    result = runner.invoke(cli, ["eval", "|lam>", "--operator", "J", "--mode", "0", "--convention", "weighted"])
    assert result.exit_code == 0
    assert result.output.strip() == "(x^4 - 1/2 x^2) |lam>"


def test_eval_omega_on_vacuum(runner):
    result = runner.invoke(cli, ["eval", "|0>", "--operator", "w", "--mode", "1"])
    assert result.output.strip() == "0"


def test_eval_twisted(runner):
    result = runner.invoke(cli, ["eval", "h(-1/2) |tw>", "--operator", "w", "--mode", "1"])
    assert result.exit_code == 0
    assert result.output.strip() == "9/16 h(-1/2) |tw>"


def test_eval_parse_error_exits_2(runner):
    result = runner.invoke(cli, ["eval", "a(-1 |0>", "--operator", "w", "--mode", "1"])
    assert result.exit_code == 2
    assert "^" in result.output


def test_eval_sector_error_exits_2(runner):
    result = runner.invoke(cli, ["eval", "h(-1/2) |tw>", "--operator", "h(-1)|0>", "--mode", "0"])
    assert result.exit_code == 2


def test_verify_table1_writes_report(runner, tmp_path):
    path = tmp_path / "table1.json"
    result = runner.invoke(cli, ["verify", "table1", "--report", str(path)])
    assert result.exit_code == 0
    data = orjson.loads(path.read_bytes())
    assert data["suite"] == "table1"
    assert data["summary"]["passed"] == 10
    assert data["conventions"]["charge_sign"] == -1


def test_verify_tsv(runner, tmp_path):
    path = tmp_path / "table1.tsv"
    result = runner.invoke(cli, ["verify", "table1", "--format", "tsv", "--report", str(path)])
    assert result.exit_code == 0
    assert path.read_text().startswith("suite\tcase\tstatus")


def test_verify_unknown_suite_exits_2(runner):
    assert runner.invoke(cli, ["verify", "table9"]).exit_code == 2


def test_verify_bad_budget_exits_2(runner):
    assert runner.invoke(cli, ["verify", "table1", "--budget", "nonsense=1"]).exit_code == 2
    assert runner.invoke(cli, ["verify", "table1", "--budget", "c1_depth"]).exit_code == 2
    assert runner.invoke(cli, ["verify", "table1", "--budget", "u_ranks=a"]).exit_code == 2
    assert runner.invoke(cli, ["verify", "table1", "--budget", "u_ranks=1"]).exit_code == 2


def test_verify_failure_exits_1(runner, tmp_path):
    # an atypical scan stopping at depth 2 never reaches codimension 0
    result = runner.invoke(
        cli,
        ["verify", "c1", "--budget", "c1_depth=1", "--budget", "atypical_depth=2", "--report", str(tmp_path / "c1.json")],
    )
    assert result.exit_code == 1


def test_char_fock(runner):
    result = runner.invoke(cli, ["char", "fock", "--order", "4"])
    assert result.exit_code == 0
    assert result.output.strip() == "1 + q + 2 q^2 + 3 q^3 + 5 q^4 + O(q^5)"


def test_char_check_against_enumeration(runner):
    result = runner.invoke(cli, ["char", "twisted-minus", "--order", "3", "--check"])
    assert result.exit_code == 0


def test_char_unknown_module(runner):
    assert runner.invoke(cli, ["char", "moonshine", "--order", "3"]).exit_code == 2


def test_c1_rank_table(runner):
    result = runner.invoke(cli, ["c1-rank", "--module", "lambda", "--depth", "2"])
    assert result.exit_code == 0
    assert "M(1,x)" in result.output


def test_c1_rank_unknown_module(runner):
    assert runner.invoke(cli, ["c1-rank", "--module", "moonshine", "--depth", "2"]).exit_code == 2


def test_helpers():
    assert parse_budget_pairs(("a=1", "b = 2")) == {"a": "1", "b": "2"}
    assert module_of("atypical:1").kind is ModuleKind.MOMENTUM
    assert module_of("mom:1/2").momentum == Fraction(1, 2)
    closed, enumerated = character_of("vir:2", 6)
    assert closed == enumerated
    assert character_of("fock:1/4", 4)[1] is None
