"""
Report builders for the command line.

The `get_*` functions collect what a command prints into plain dictionaries;
the `render_*` and `write_*` functions turn them into human readable text or
CSV rows.
"""

import csv
from collections.abc import Iterable
from typing import Any, TextIO

from ..bench.families import BenchCase
from ..bench.registry import FAMILIES
from ..bench.runner import BenchResult
from ..core.closure import closure
from ..core.determinize import UnsupportedFragmentError, select_mode
from ..core.formula import Formula, alternation_depth, is_aconjunctive
from ..core.game import RunStats, Verdict
from ..core.logics import Logic
from ..core.printer import to_text

CSV_HEADER = ("name", "params", "status", "expected", "nodes", "solve_steps", "time_ms")


def get_verdict_data(verdict: Verdict, stats: RunStats) -> dict[str, Any]:
    """Verdict of a solver run and its statistics."""
    return {
        "verdict": verdict.value,
        "nodes": stats.nodes,
        "nodes_expanded": stats.nodes_expanded,
        "solve_steps": stats.solve_steps,
        "time_ms": round(stats.time_ms, 3),
        "pipeline": stats.pipeline,
    }


def get_check_data(f: Formula, logic: Logic, agents: int) -> dict[str, Any]:
    """
    Describe a normalized formula without solving it.

    Returns:
        A dictionary with the printed formula, logic, agent count, closure size,
        alternation depth, aconjunctivity and the determinization
        pipeline (`unsupported` when the formula is outside every pipeline).
    """
    index = closure(f)
    try:
        pipeline = select_mode(index).value
    except UnsupportedFragmentError:
        pipeline = "unsupported"
    return {
        "formula": to_text(f),
        "logic": logic.value,
        "agents": agents,
        "closure_size": index.size,
        "alternation_depth": alternation_depth(f),
        "aconjunctive": is_aconjunctive(f),
        "pipeline": pipeline,
    }


def get_family_data() -> list[dict[str, str]]:
    return [
        {"name": family.name, "params": ",".join(family.params), "summary": family.summary}
        for family in FAMILIES.values()
    ]


def get_case_data(case: BenchCase) -> dict[str, Any]:
    return {
        "name": case.name,
        "logic": case.logic.value,
        "agents": case.agents,
        "expected": case.expected.value,
        "formula": case.text,
    }


def result_row(result: BenchResult) -> tuple[str, ...]:
    return (
        result.name,
        ";".join(str(value) for value in result.params),
        result.outcome.value,
        result.expected.value,
        str(result.nodes),
        str(result.solve_steps),
        f"{result.time_ms:.3f}",
    )


def render_human(data: dict[str, Any], out: TextIO) -> None:
    """Write `key: value` lines; a `verdict` entry goes first on its own line."""
    if "verdict" in data:
        out.write(f"{data['verdict']}\n")
    width = max((len(key) for key in data if key != "verdict"), default=0)
    for key, value in data.items():
        if key == "verdict":
            continue
        if isinstance(value, bool):
            value = "yes" if value else "no"
        out.write(f"{key.replace('_', ' '):<{width}}  {value}\n")


def render_families(families: Iterable[dict[str, str]], out: TextIO) -> None:
    for family in families:
        out.write(f"{family['name']:<16}{family['params']:<8}{family['summary']}\n")


def render_results(results: Iterable[BenchResult], out: TextIO) -> None:
    rows = [result_row(result) for result in results]
    widths = [max(len(cell) for cell in column) for column in zip(CSV_HEADER, *rows, strict=False)]
    for row in (CSV_HEADER, *rows):
        out.write("  ".join(cell.ljust(width) for cell, width in zip(row, widths, strict=True)).rstrip() + "\n")


def write_csv(rows: Iterable[Iterable[Any]], out: TextIO) -> None:
    """Write the header and `rows` as comma separated values."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
