import argparse
import sys
from logging import Logger
from pathlib import Path
from typing import TYPE_CHECKING

from ..bench.registry import build_case, build_cases
from ..bench.runner import BenchRunner, Outcome, SolverSettings
from ..config import AppConfig
from ..core.game import Engine, SatGame, Verdict
from ..core.logics import Logic
from ..core.parser import agent_count, parse
from ..core.solver import Schedule
from .error_handlers import EXIT_OK, EXIT_SAT, EXIT_UNSAT, EXIT_VIOLATION, UsageError
from .reporting import (
    get_case_data,
    get_check_data,
    get_family_data,
    get_verdict_data,
    render_families,
    render_human,
    render_results,
    result_row,
    write_csv,
)

if TYPE_CHECKING:
    from ..app import SolverApp


def _options(config: AppConfig) -> argparse.ArgumentParser:
    """Flags shared by the solving commands, defaulting to the configuration."""
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--logic", choices=[logic.value for logic in Logic], default=config.LOGIC)
    options.add_argument("--agents", type=int, default=config.AGENTS, help="agent count for amc (default: inferred)")
    options.add_argument("--engine", choices=[engine.value for engine in Engine], default=config.ENGINE)
    options.add_argument("--schedule", choices=[schedule.value for schedule in Schedule], default=config.SCHEDULE)
    options.add_argument("--timeout", type=float, default=config.TIMEOUT, help="seconds per run, 0 for no limit")
    options.add_argument("--max-nodes", type=int, default=config.MAX_NODES, help="game nodes per run, 0 for no limit")
    options.add_argument("--format", choices=["human", "csv"], default=config.OUTPUT_FORMAT)
    return options


def _read_formula(args: argparse.Namespace) -> str:
    if args.formula is not None and args.file is not None:
        raise UsageError("give either a formula or --file, not both")
    if args.file is not None:
        return Path(args.file).read_text(encoding="utf-8")
    if args.formula is None:
        raise UsageError("a formula or --file is required")
    text: str = args.formula
    return text


def _parse_input(args: argparse.Namespace) -> tuple[Logic, int, str]:
    logic = Logic.from_id(args.logic)
    return logic, args.agents, _read_formula(args)


def register(app: "SolverApp", logger: Logger, config: AppConfig) -> None:
    options = _options(config)

    def solve(args: argparse.Namespace) -> int:
        logic, agents, text = _parse_input(args)
        f = parse(text, logic, agents)
        agents = agent_count(f, agents) if logic is Logic.AMC else 1
        logger.info(f"Solving a formula of length {len(text)} in logic {logic.value}")
        game = SatGame(
            f,
            logic=logic,
            agents=agents,
            engine=Engine(args.engine),
            schedule=Schedule(args.schedule),
            logger=logger,
            timeout=args.timeout,
            max_nodes=args.max_nodes,
        )
        try:
            verdict = game.run()
        finally:
            if args.dump:
                with open(args.dump, "w", encoding="utf-8") as out:
                    game.dump(out)
                logger.info(f"Wrote {len(game)} game nodes to {args.dump}")

        if args.format == "csv":
            status = Outcome.SAT if verdict is Verdict.SAT else Outcome.UNSAT
            write_csv(
                [("formula", "", status.value, "Unknown", game.stats.nodes, game.stats.solve_steps,
                  f"{game.stats.time_ms:.3f}")],
                sys.stdout,
            )
        else:
            render_human(get_verdict_data(verdict, game.stats), sys.stdout)
        return EXIT_SAT if verdict is Verdict.SAT else EXIT_UNSAT

    def check(args: argparse.Namespace) -> int:
        logic, agents, text = _parse_input(args)
        f = parse(text, logic, agents)
        agents = agent_count(f, agents) if logic is Logic.AMC else 1
        render_human(get_check_data(f, logic, agents), sys.stdout)
        return EXIT_OK

    def bench_list(args: argparse.Namespace) -> int:
        render_families(get_family_data(), sys.stdout)
        return EXIT_OK

    def bench_emit(args: argparse.Namespace) -> int:
        case = build_case(args.family, args.params)
        render_human(get_case_data(case), sys.stdout)
        return EXIT_OK

    def bench_run(args: argparse.Namespace) -> int:
        cases = build_cases(args.family, args.ranges)
        settings = SolverSettings(
            engine=Engine(args.engine),
            schedule=Schedule(args.schedule),
            timeout=args.timeout or None,
            max_nodes=args.max_nodes or None,
        )
        results = BenchRunner(logger, settings, jobs=args.jobs).run(cases)
        if args.format == "csv":
            write_csv((result_row(result) for result in results), sys.stdout)
        else:
            render_results(results, sys.stdout)
        violations = sum(1 for result in results if result.violated)
        if violations:
            logger.error(f"{violations} of {len(results)} cases contradict their expected status")
            return EXIT_VIOLATION
        return EXIT_OK

    for name, help_text, handler in (
        ("solve", "decide satisfiability of a formula", solve),
        ("check", "parse a formula and describe it without solving", check),
    ):
        parser = app.add_command(name, help_text, handler, parents=[options])
        parser.add_argument("formula", nargs="?", help="formula text")
        parser.add_argument("--file", help="read the formula from a file")
        if name == "solve":
            parser.add_argument("--dump", metavar="PATH", help="write the explored game as an edge list")

    bench = app.add_command("bench", "benchmark families")
    bench_commands = bench.add_subparsers(dest="bench_command", metavar="ACTION", required=True)
    app.add_command("list", "list the benchmark families", bench_list, under=bench_commands)
    emit = app.add_command("emit", "print one member of a family", bench_emit, under=bench_commands)
    emit.add_argument("family")
    emit.add_argument("params", type=int, nargs="*")
    run = app.add_command("run", "solve a range of family members", bench_run, parents=[options], under=bench_commands)
    run.add_argument("family")
    run.add_argument("ranges", nargs="+", metavar="RANGE", help="one range per parameter: a..b, a,b,c or n")
    run.add_argument("--jobs", type=int, default=config.JOBS)
