"""
FreeField Bench Main Application

Command-line entry point: evaluate vertex modes on parsed states, run the
verification suites, print q-characters and C_1 rank tables.
"""

import asyncio
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

import click
import structlog
from rich.console import Console
from rich.table import Table

from config import ValidationError, get_settings
from freefield import __version__
from freefield.c1 import C1Module, ModuleKind, c1_component, rank_analysis
from freefield.errors import BudgetExceededError, FreeFieldError, ParseError, UnknownSuiteError
from freefield.fields import ModeIndex, vertex_mode
from freefield.linalg import rank
from freefield.parser import ParseContext, operator_from_text, parse_scalar, state_from_text
from freefield.printing import format_scalar, format_series, format_state
from freefield.qseries import (
    char_fock,
    char_lattice,
    char_orbifold,
    char_virasoro_c1,
    char_weyl,
    enum_fock,
    enum_lattice,
    enum_orbifold,
    enum_virasoro,
    enum_weyl,
)
from freefield.states import SpaceKind
from freefield.twisted import twisted_vertex_mode
from suites.orchestrator import get_orchestrator

logger = logging.getLogger(__name__)

EXIT_FAILURES = 1
EXIT_USAGE = 2

console = Console(stderr=True)


def configure_logging(level: str, fmt: str) -> None:
    """Route stdlib log records through structlog's key/value or JSON renderer."""
    renderer = structlog.processors.JSONRenderer() if fmt == "json" else structlog.processors.KeyValueRenderer(
        key_order=["timestamp", "level", "logger", "event"]
    )
    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=[
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso"),
        ],
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer],
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level.upper())


def fail_usage(message: str) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(EXIT_USAGE)


@click.group()
@click.version_option(__version__, prog_name="freefield-bench")
@click.option("-v", "--verbose", is_flag=True, help="Log at INFO.")
@click.option("--log-format", type=click.Choice(["kv", "json"]), default=None, help="Log line format.")
def cli(verbose: bool, log_format: Optional[str]):
    """Exact verification toolkit for free-field vertex operator algebras."""
    settings = get_settings()
    configure_logging("INFO" if verbose else settings.log_level, log_format or settings.log_format)


# eval


@cli.command("eval")
@click.argument("state")
@click.option("--operator", "operator_text", required=True, help="Operator state, e.g. 'J' or 'a(-1)|0>'.")
@click.option("--mode", "mode_text", required=True, help="Mode index n, e.g. 3 or 1/2.")
@click.option("--convention", type=click.Choice(["formal", "weighted"]), default="formal", show_default=True)
@click.option("--rank", type=int, default=None, help="Weyl rank for b<i>+- generators.")
def eval_command(state: str, operator_text: str, mode_text: str, convention: str, rank: Optional[int]):
    """Print u_(n) v for operator u and state v."""
    try:
        v = state_from_text(state, ParseContext(rank=rank))
        u = operator_from_text(operator_text, v, rank)
        value = Fraction(mode_text)
        n = ModeIndex.formal(value) if convention == "formal" else ModeIndex.weighted(value)
        result = twisted_vertex_mode(u, n, v) if v.space.kind is SpaceKind.TWISTED else vertex_mode(u, n, v)
    except ParseError as e:
        fail_usage(e.render())
    except (FreeFieldError, ValueError, ZeroDivisionError) as e:
        fail_usage(str(e))
    click.echo(format_state(result))


# verify


def parse_budget_pairs(pairs: Tuple[str, ...]) -> dict:
    assignments = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise click.BadParameter(f"expected key=value, got {pair!r}", param_hint="--budget")
        assignments[key.strip()] = value.strip()
    return assignments


def summary_table(report) -> Table:
    table = Table(title=f"{report.suite}: {report.summary.passed}/{report.summary.total} passed")
    table.add_column("suite")
    table.add_column("case")
    table.add_column("status")
    table.add_column("computed", overflow="fold")
    styles = {"pass": "green", "fail": "red", "error": "red", "skipped": "yellow"}
    for r in report.cases:
        if r.status == "pass" and report.summary.total > 40:
            continue
        table.add_row(r.suite, r.case, f"[{styles[r.status]}]{r.status}[/]", r.computed)
    return table


@cli.command()
@click.argument("suite")
@click.option("--report", "report_path", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--format", "fmt", type=click.Choice(["structured", "tsv"]), default="structured", show_default=True)
@click.option("--budget", "budget_pairs", multiple=True, help="Override a budget, key=value.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes.")
def verify(suite: str, report_path: Optional[Path], fmt: str, budget_pairs: Tuple[str, ...], jobs: Optional[int]):
    """Run a verification suite (or 'all') and emit its report."""
    settings = get_settings()
    try:
        budgets = settings.budgets.override(parse_budget_pairs(budget_pairs))
    except ValidationError as e:
        fail_usage(f"invalid budget: {e}")

    orchestrator = get_orchestrator()
    try:
        report = asyncio.run(orchestrator.run_workflow(suite, budgets, settings.seed, jobs or settings.jobs))
    except UnknownSuiteError as e:
        fail_usage(str(e))

    payload = report.to_structured() if fmt == "structured" else report.to_tsv().encode()
    if report_path is None and settings.report_dir is not None:
        report_path = settings.report_dir / f"{suite}.{'json' if fmt == 'structured' else 'tsv'}"
    if report_path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_path.write_bytes(payload)
        logger.info(f"Report written to {report_path}")
    console.print(summary_table(report))
    sys.exit(0 if report.ok else EXIT_FAILURES)


# char


def character_of(module: str, order: int):
    """(closed form, enumeration or None) for a module name."""
    name, _, arg = module.partition(":")
    if name == "fock":
        w = Fraction(arg) if arg else Fraction(0)
        return char_fock(w, order), enum_fock(order) if w == 0 else None
    if name in ("plus", "minus", "twisted-plus", "twisted-minus"):
        sign = -1 if name.endswith("minus") else 1
        twisted = name.startswith("twisted")
        return char_orbifold(sign, twisted, order), enum_orbifold(sign, twisted, order)
    if name == "vir":
        m = int(arg)
        if m < 0:
            raise ValueError("vir:<m> needs m >= 0")
        return char_virasoro_c1(m, order), enum_virasoro(m, order)
    if name in ("weyl-even", "weyl-odd"):
        n = int(arg)
        if n < 1:
            raise ValueError("the Weyl rank must be positive")
        parity = 1 if name == "weyl-odd" else 0
        return char_weyl(n, parity, order), enum_weyl(n, parity, order)
    if name in ("lattice", "half-lattice"):
        half = name == "half-lattice"
        return char_lattice(order, half), enum_lattice(order, half)
    raise ValueError(f"unknown module {module!r}")


@cli.command()
@click.argument("module")
@click.option("--order", type=click.IntRange(min=0), default=None, help="Truncation order N.")
@click.option("--check", is_flag=True, help="Compare against basis enumeration.")
def char(module: str, order: Optional[int], check: bool):
    """Print the q-character of MODULE to order N."""
    order = get_settings().char_order if order is None else order
    try:
        closed, enumerated = character_of(module, order)
    except ValueError as e:
        fail_usage(str(e))
    click.echo(format_series(closed))
    if check:
        if enumerated is None:
            fail_usage(f"no enumeration for {module}")
        if enumerated != closed:
            click.echo(f"enumeration differs: {format_series(enumerated)}", err=True)
            sys.exit(EXIT_FAILURES)
        console.print("[green]closed form matches enumeration[/]")


# c1-rank


def module_of(text: str) -> C1Module:
    name, _, arg = text.partition(":")
    if name == "lambda":
        return C1Module.parametric()
    if name in ("plus", "minus"):
        return C1Module.orbifold(-1 if name == "minus" else 1)
    if name in ("twisted-plus", "twisted-minus"):
        return C1Module.twisted(-1 if name == "twisted-minus" else 1)
    if name == "mom":
        return C1Module.with_momentum(parse_scalar(arg))
    if name == "atypical":
        return C1Module.atypical(int(arg))
    raise ValueError(f"unknown module {text!r}")


@cli.command("c1-rank")
@click.option("--module", "module_spec", required=True, help="lambda, plus, minus, twisted-plus, twisted-minus, mom:<r>, atypical:<m>.")
@click.option("--depth", "depth_text", required=True, help="Largest depth (half-integers for twisted modules).")
def c1_rank(module_spec: str, depth_text: str):
    """Rank of C_1 in each depth of an M(1)^+-module."""
    settings = get_settings()
    try:
        module = module_of(module_spec)
        depth_max = Fraction(depth_text)
    except ParseError as e:
        fail_usage(e.render())
    except (ValueError, ZeroDivisionError) as e:
        fail_usage(str(e))

    table = Table(title=f"C1 of {module.describe()}")
    for column in ("depth", "dim", "rank", "codim", "note"):
        table.add_column(column)
    for d in module.depths(depth_max):
        try:
            mat = c1_component(module, d, row_budget=settings.budgets.c1_row_budget)
        except BudgetExceededError as e:
            table.add_row(format_scalar(d), "", "", "", f"partial: {e}")
            break
        if module.kind is ModuleKind.PARAMETRIC:
            report = rank_analysis(mat, samples=settings.budgets.c1_samples, seed=settings.seed)
            rk = report.generic_rank
            note = "exceptional: " + (", ".join(report.exceptional_candidates) or "none")
        else:
            rk, note = rank(mat.rows), ""
        table.add_row(format_scalar(d), str(mat.ambient_dim), str(rk), str(mat.ambient_dim - rk), note)
    Console().print(table)


if __name__ == "__main__":
    cli()
