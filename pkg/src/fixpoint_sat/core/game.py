"""
Satisfiability games explored by global caching.

Game nodes are macro-states of the deterministic automaton, interned so that
every macro-state is expanded at most once. Cores move along propositional
words to states; states move along modal letters. In the one-step engine the
universal layer of a state is never built: the solver asks the one-step
satisfiability check of the logic directly. In the tableau engine a state is
won when every matching rule application has a clause leading to a won node.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, TextIO

from .automaton import Letter, ModalStep, TrackingAutomaton, letter_text
from .closure import ClosureIndex, closure
from .determinize import Determinizer, MacroState, Mode, Role, classify, make_determinizer
from .formula import Formula
from .logics import (
    Logic,
    OneStepPair,
    UnsupportedEngineError,
    literal_consistent,
    one_step_sat,
    tableau_applications,
)
from .saturation import Saturator, WordSearchSaturator
from .solver import Membership, Schedule, nested_fixpoint, schedule_should_solve, solve_partial
from .utils.cls_utils import InternTable
from .utils.helpers import elapsed_ms
from .utils.log_utils import LoggerSingleton


class ResourceLimitExceeded(RuntimeError):
    """Raise when a run exhausts its time or node budget before reaching a verdict."""


class NodeStatus(Enum):
    UNEXPANDED = "unexpanded"
    UNDECIDED = "undecided"
    SAT = "sat"
    UNSAT = "unsat"


class Engine(Enum):
    ONESTEP = "onestep"
    TABLEAU = "tableau"


class Verdict(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass(frozen=True)
class Move:
    word: tuple[Letter, ...]
    target: int
    priority: int

    @property
    def kappa(self) -> frozenset[int]:
        """Modal nodes kept by a state move."""
        letter = self.word[0]
        if not isinstance(letter, ModalStep):
            raise ValueError("Not a modal move")
        return letter.kappa


@dataclass
class GameNode:
    ident: int
    state: MacroState
    label: frozenset[int]
    role: Role
    consistent: bool
    status: NodeStatus = NodeStatus.UNEXPANDED
    moves: list[Move] = field(default_factory=list)
    applications: list[tuple[int, ...]] = field(default_factory=list)


@dataclass
class RunStats:
    nodes_expanded: int = 0
    solve_steps: int = 0
    nodes: int = 0
    time_ms: float = 0.0
    pipeline: str = ""

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


class SatGame:
    """
    Satisfiability game of one formula.

    Args:
        formula: Closed, clean, guarded formula in negation normal form.
        logic: Logic that interprets the modal operators.
        agents: Agent count for the coalition logic.
        engine: How state nodes are decided.
        schedule: When partial games are solved.
        logger: Logger for progress messages; the shared solver logger by default.
        timeout: Wall clock budget in seconds; None or 0 means unlimited.
        max_nodes: Node budget; None or 0 means unlimited.
        saturator: Propositional back end for core nodes.
        mode: Determinization; chosen from the formula when None.

    Raises:
        UnsupportedEngineError: If the tableau engine is requested for a logic without rules.
        UnsupportedFragmentError: If the formula is outside the supported fragment.
    """

    def __init__(
        self,
        formula: Formula,
        logic: Logic = Logic.K,
        agents: int = 1,
        engine: Engine = Engine.ONESTEP,
        schedule: Schedule = Schedule.ADAPTIVE,
        logger: logging.Logger | None = None,
        timeout: float | None = None,
        max_nodes: int | None = None,
        saturator: Saturator | None = None,
        mode: Mode | None = None,
    ) -> None:
        if engine is Engine.TABLEAU and not logic.has_tableau:
            raise UnsupportedEngineError(f"The tableau engine is not available for the {logic.value} logic")
        self.logger = logger or LoggerSingleton.get_logger()
        self.formula = formula
        self.logic = logic
        self.agents = agents
        self.engine = engine
        self.schedule = schedule
        self.timeout = timeout or None
        self.max_nodes = max_nodes or None
        self.saturator: Saturator = saturator or WordSearchSaturator()
        self.strategy = nested_fixpoint

        self.closure: ClosureIndex = closure(formula)
        self.automaton = TrackingAutomaton(self.closure)
        self.determinizer: Determinizer[Any] = make_determinizer(self.closure, mode)
        self.stats = RunStats(pipeline=self.determinizer.mode.value)

        self._table: InternTable[MacroState, GameNode] = InternTable()
        self.frontier: deque[int] = deque()
        self._started: float | None = None
        self.root = self._intern(self.determinizer.initial())
        self.logger.debug(
            f"Game for closure of size {self.closure.size} and depth {self.closure.depth} "
            f"uses the {self.stats.pipeline} pipeline"
        )

    def __len__(self) -> int:
        return len(self._table)

    def __iter__(self) -> Iterator[GameNode]:
        return iter(self._table)

    def node(self, ident: int) -> GameNode:
        return self._table.value(ident)

    def status(self, ident: int) -> NodeStatus:
        return self._table.value(ident).status

    def _intern(self, state: MacroState) -> int:
        def build(ident: int, key: MacroState) -> GameNode:
            label = self.determinizer.label(key)
            return GameNode(
                ident=ident,
                state=key,
                label=label,
                role=classify(label, self.closure),
                consistent=literal_consistent(self.closure.formulas_of(label)),
            )

        ident, created = self._table.intern(state, build)
        if created:
            self.frontier.append(ident)
        return ident

    def _add_move(self, node: GameNode, word: tuple[Letter, ...], target: MacroState, priority: int) -> int:
        node.moves.append(Move(word, self._intern(target), priority))
        return len(node.moves) - 1

    def expand(self, ident: int) -> None:
        """
        Add the moves of an unexpanded node and queue the new targets.

        Raises:
            ValueError: If the node was expanded before.
        """
        node = self._table.value(ident)
        if node.status is not NodeStatus.UNEXPANDED:
            raise ValueError(f"Node {ident} is already expanded")
        node.status = NodeStatus.UNDECIDED
        self.stats.nodes_expanded += 1
        if not node.consistent:
            return

        if node.role is Role.CORE:
            for found in self.saturator.saturate(node.state, self.determinizer, self.automaton):
                self._add_move(node, found.word, found.target, found.priority)
        elif self.engine is Engine.ONESTEP:
            for letter in self.automaton.modal_letters(node.label):
                step = self.determinizer.step(node.state, letter)
                self._add_move(node, (letter,), step.target, step.priority)
        else:
            clauses: dict[frozenset[int], int] = {}
            for application in tableau_applications(node.label, self.closure, self.logic, self.agents):
                indices = []
                for clause in application.conclusion:
                    if clause not in clauses:
                        letter = ModalStep(clause)
                        step = self.determinizer.step(node.state, letter)
                        clauses[clause] = self._add_move(node, (letter,), step.target, step.priority)
                    indices.append(clauses[clause])
                node.applications.append(tuple(indices))

        self.logger.debug(f"Expanded {node.role.value} {ident} with {len(node.moves)} moves, {len(self)} nodes")

    # solver interface

    def carrier(self) -> frozenset[int]:
        return frozenset(node.ident for node in self._table if node.status is NodeStatus.UNDECIDED)

    def edges(self, node: int) -> Iterable[tuple[int, int]]:
        return ((move.priority, move.target) for move in self._table.value(node).moves)

    def holds(self, node: int, member: Membership) -> bool:
        current = self._table.value(node)
        if not current.consistent:
            return False
        if current.role is Role.CORE:
            return any(member(move.target, move.priority) for move in current.moves)
        if self.engine is Engine.TABLEAU:
            return all(
                any(member(current.moves[i].target, current.moves[i].priority) for i in application)
                for application in current.applications
            )
        gamma = [(self.closure.op(n), n) for n in current.label if self.closure.is_modal(n)]
        theta = [move.kappa for move in current.moves if member(move.target, move.priority)]
        return one_step_sat(OneStepPair.of(gamma, theta), self.logic, self.agents)

    def is_sat(self, node: int) -> bool:
        return self._table.value(node).status is NodeStatus.SAT

    def is_unsat(self, node: int) -> bool:
        return self._table.value(node).status is NodeStatus.UNSAT

    def solve(self) -> tuple[frozenset[int], frozenset[int]]:
        """Solve the current game and mark the newly decided nodes."""
        win_exists, win_forall = solve_partial(self, self.strategy)
        for ident in win_exists:
            self._table.value(ident).status = NodeStatus.SAT
        for ident in win_forall - win_exists:
            self._table.value(ident).status = NodeStatus.UNSAT
        self.stats.solve_steps += 1
        return win_exists, win_forall

    def _check_budget(self) -> None:
        if self.max_nodes is not None and len(self) > self.max_nodes:
            self.logger.warning(f"Node budget of {self.max_nodes} exhausted")
            raise ResourceLimitExceeded(f"More than {self.max_nodes} game nodes")
        if self.timeout is not None and self._started is not None:
            if time.monotonic() - self._started > self.timeout:
                self.logger.warning(f"Time budget of {self.timeout}s exhausted after {len(self)} nodes")
                raise ResourceLimitExceeded(f"Timeout after {self.timeout}s")

    def _decided(self) -> bool:
        return self._table.value(self.root).status in (NodeStatus.SAT, NodeStatus.UNSAT)

    def run(self) -> Verdict:
        """
        Explore and solve the game until the initial node is decided.

        Returns:
            SAT iff the existential player wins from the initial node.

        Raises:
            ResourceLimitExceeded: When the budget runs out first.
        """
        self._started = time.monotonic()
        self.logger.info(f"Solving with the {self.engine.value} engine and {self.schedule.value} schedule")
        last_solve_at: int | None = None
        expansions = 0
        try:
            while self.frontier and not self._decided():
                self._check_budget()
                self.expand(self.frontier.popleft())
                expansions += 1
                if schedule_should_solve(expansions, len(self), last_solve_at, self.schedule):
                    self.solve()
                    last_solve_at = len(self)
            if not self._decided():
                self.solve()
        finally:
            self.stats.nodes = len(self)
            self.stats.time_ms = elapsed_ms(self._started)

        if not self._decided():
            self.logger.error("Fully expanded game left the initial node undecided")
            raise RuntimeError("Initial node undecided in a fully expanded game")
        verdict = Verdict.SAT if self.is_sat(self.root) else Verdict.UNSAT
        self.logger.info(
            f"{verdict.value} after {self.stats.nodes_expanded} expansions, "
            f"{self.stats.solve_steps} solving steps, {self.stats.time_ms:.1f}ms"
        )
        return verdict

    def dump(self, out: TextIO) -> None:
        """Write the explored game as an edge list: node, kind, letters, priority, target."""
        out.write("# node kind letters priority target\n")
        for node in self._table:
            kind = f"{node.role.value}/{node.status.value}"
            if not node.moves:
                out.write(f"{node.ident} {kind} - - -\n")
            for move in node.moves:
                letters = ";".join(letter_text(letter) for letter in move.word)
                out.write(f"{node.ident} {kind} {letters} {move.priority} {move.target}\n")


def solve(
    formula: Formula,
    logic: Logic = Logic.K,
    agents: int = 1,
    engine: Engine = Engine.ONESTEP,
    schedule: Schedule = Schedule.ADAPTIVE,
    logger: logging.Logger | None = None,
    timeout: float | None = None,
    max_nodes: int | None = None,
) -> tuple[Verdict, RunStats]:
    """Decide satisfiability of `formula` and return the verdict with its run statistics."""
    game = SatGame(
        formula,
        logic=logic,
        agents=agents,
        engine=engine,
        schedule=schedule,
        logger=logger,
        timeout=timeout,
        max_nodes=max_nodes,
    )
    return game.run(), game.stats
