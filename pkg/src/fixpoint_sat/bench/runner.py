from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from ..core.determinize import UnsupportedFragmentError
from ..core.game import Engine, ResourceLimitExceeded, SatGame, Verdict
from ..core.logics import UnsupportedEngineError
from ..core.solver import Schedule
from .families import BenchCase, Status
from .registry import build_case


class Outcome(Enum):
    SAT = "Sat"
    UNSAT = "Unsat"
    TIMEOUT = "Timeout"
    UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class SolverSettings:
    engine: Engine = Engine.ONESTEP
    schedule: Schedule = Schedule.ADAPTIVE
    timeout: float | None = 60.0
    max_nodes: int | None = None


@dataclass(frozen=True)
class BenchResult:
    name: str
    params: tuple[int, ...]
    outcome: Outcome
    expected: Status
    nodes: int = 0
    solve_steps: int = 0
    time_ms: float = 0.0

    @property
    def violated(self) -> bool:
        """A verdict that contradicts a known expected status."""
        if self.expected is Status.UNKNOWN or self.outcome not in (Outcome.SAT, Outcome.UNSAT):
            return False
        return self.outcome.value != self.expected.value


def run_case(case: BenchCase, settings: SolverSettings, logger: logging.Logger | None = None) -> BenchResult:
    """Solve one benchmark case; budget exhaustion and unsupported input become outcomes."""
    logger = logger or logging.getLogger(__name__)
    try:
        game = SatGame(
            case.formula,
            logic=case.logic,
            agents=case.agents,
            engine=settings.engine,
            schedule=settings.schedule,
            logger=logger,
            timeout=settings.timeout,
            max_nodes=settings.max_nodes,
        )
    except (UnsupportedFragmentError, UnsupportedEngineError) as e:
        logger.warning(f"{case.name}: {e}")
        return BenchResult(case.name, case.params, Outcome.UNSUPPORTED, case.expected)
    try:
        verdict = game.run()
    except ResourceLimitExceeded as e:
        logger.warning(f"{case.name}: {e}")
        return BenchResult(
            case.name, case.params, Outcome.TIMEOUT, case.expected,
            game.stats.nodes, game.stats.solve_steps, game.stats.time_ms,
        )
    outcome = Outcome.SAT if verdict is Verdict.SAT else Outcome.UNSAT
    return BenchResult(
        case.name, case.params, outcome, case.expected,
        game.stats.nodes, game.stats.solve_steps, game.stats.time_ms,
    )


def _run_member(family: str, params: tuple[int, ...], settings: SolverSettings) -> BenchResult:
    # worker processes rebuild the case from the registry
    return run_case(build_case(family, params), settings)


@dataclass
class BenchRunner:
    """Runs benchmark cases in order, optionally spread over a process pool."""
    logger: logging.Logger = field(repr=False)
    settings: SolverSettings = field(default_factory=SolverSettings)
    jobs: int = 1

    def run(self, cases: list[BenchCase]) -> list[BenchResult]:
        self.logger.info(f"Running {len(cases)} cases with {self.jobs} job(s)")
        if self.jobs <= 1 or len(cases) <= 1:
            results = [run_case(case, self.settings, self.logger) for case in cases]
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                futures = [pool.submit(_run_member, case.family, case.params, self.settings) for case in cases]
                results = [future.result() for future in futures]
        for result in results:
            if result.violated:
                self.logger.error(f"{result.name}: expected {result.expected.value}, got {result.outcome.value}")
        return results
