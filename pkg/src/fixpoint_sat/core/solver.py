"""
Solving of partially constructed satisfiability games by nested fixpoint iteration.

The existential winning region is

    E = ν X_r. μ X_{r-1}. ... μ X_1. f(X_1, ..., X_r)

where f contains a node when its owner can move into X_p along an edge of
priority p (the one-step solving function), and the universal region is the
dual fixpoint μ Y_r. ν Y_{r-1}. ... ν Y_1. g(Y) of the complemented function. In
a partial game the two regions need not cover all nodes.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from enum import Enum
from typing import Protocol

log = logging.getLogger(__name__)

Membership = Callable[[int, int], bool]
SetFunction = Callable[[Sequence[frozenset[int]]], frozenset[int]]


class Schedule(Enum):
    ONCE = "once"
    ADAPTIVE = "adaptive"


class GameView(Protocol):
    """What the solver needs to know about a (partial) game."""

    def carrier(self) -> frozenset[int]:
        """Expanded nodes without a final verdict."""
        ...

    def edges(self, node: int) -> Iterable[tuple[int, int]]:
        """(priority, target) pairs of the moves of an expanded node."""
        ...

    def holds(self, node: int, member: Membership) -> bool:
        """Whether the existential player can move from `node` so that `member(target, priority)` holds."""
        ...

    def is_sat(self, node: int) -> bool: ...

    def is_unsat(self, node: int) -> bool: ...


def nested_fixpoint(
    rank: int,
    func: SetFunction,
    carrier: frozenset[int],
    least_at_odd: bool = True,
    innermost: SetFunction | None = None,
) -> frozenset[int]:
    """
    Evaluate η_r X_r ... η_1 X_1. func(X_1, ..., X_r) over `carrier`.

    η_i is the least fixpoint for odd i when `least_at_odd` is set, otherwise for
    even i. Inner variables restart from their initial value whenever an outer
    variable changes.

    Args:
        rank: Number of fixpoint variables.
        func: Monotone function of the argument list (index 0 holds X_1).
        carrier: Finite universe; greatest fixpoints start here.
        least_at_odd: Parity of the least-fixpoint levels.
        innermost: Optional replacement for the iteration of X_1; called with
            the current arguments, it must return the fixpoint in X_1 with the
            other arguments fixed.

    Returns:
        The value of the nested fixpoint.
    """
    if rank <= 0:
        return func([])
    args: list[frozenset[int]] = [frozenset()] * rank

    def least(level: int) -> bool:
        return (level % 2 == 1) == least_at_odd

    def solve(level: int) -> frozenset[int]:
        if level == 1 and innermost is not None:
            return innermost(args)
        current = frozenset() if least(level) else carrier
        while True:
            args[level - 1] = current
            value = func(args) if level == 1 else solve(level - 1)
            if value == current:
                return current
            current = value

    return solve(rank)


def compress_priorities(priorities: Iterable[int]) -> dict[int, int]:
    """
    Map priorities onto a dense range starting at 1 or 2, keeping order and parity.

    Consecutive priorities of equal parity collapse into one value.
    """
    mapping: dict[int, int] = {}
    previous: int | None = None
    for priority in sorted(set(priorities)):
        if previous is None:
            value = 1 if priority % 2 == 1 else 2
        elif (previous - priority) % 2 == 0:
            value = mapping[previous]
        else:
            value = mapping[previous] + 1
        mapping[priority] = value
        previous = priority
    return mapping


class SolveContext:
    """
    One solving pass over the current game.

    The carrier contains the expanded undecided nodes only; nodes decided in
    earlier passes enter the computation as constants.
    """

    def __init__(self, view: GameView) -> None:
        self.view = view
        self.carrier = view.carrier()
        edges = {node: list(view.edges(node)) for node in self.carrier}
        self.compressed = compress_priorities(priority for moves in edges.values() for priority, _ in moves)
        top = max(self.compressed.values(), default=2)
        self.rank = top + top % 2
        self.predecessors: dict[int, set[int]] = {}
        for node, moves in edges.items():
            for priority, target in moves:
                if self.compressed[priority] == 1:
                    self.predecessors.setdefault(target, set()).add(node)

    def _index(self, priority: int) -> int:
        return self.compressed.get(priority, 1) - 1

    def f_exists(self, args: Sequence[frozenset[int]]) -> frozenset[int]:
        """The one-step solving function: nodes whose owner can move into X_p along a p-edge."""
        def member(target: int, priority: int) -> bool:
            return self.view.is_sat(target) or target in args[self._index(priority)]

        return frozenset(node for node in self.carrier if self.view.holds(node, member))

    def f_forall(self, args: Sequence[frozenset[int]]) -> frozenset[int]:
        """Nodes from which every existential move ends in a lost node or in Y_p along a p-edge."""
        def member(target: int, priority: int) -> bool:
            return not self.view.is_unsat(target) and target not in args[self._index(priority)]

        return frozenset(node for node in self.carrier if not self.view.holds(node, member))

    def innermost_exists(self, args: Sequence[frozenset[int]]) -> frozenset[int]:
        """Least fixpoint in X_1 by a worklist over predecessors along priority-1 edges."""
        current: set[int] = set()

        def member(target: int, priority: int) -> bool:
            if self.view.is_sat(target):
                return True
            index = self._index(priority)
            return target in current if index == 0 else target in args[index]

        pending = set(self.carrier)
        while pending:
            node = pending.pop()
            if node not in current and self.view.holds(node, member):
                current.add(node)
                pending |= self.predecessors.get(node, set()) - current
        return frozenset(current)

    def innermost_forall(self, args: Sequence[frozenset[int]]) -> frozenset[int]:
        """Greatest fixpoint in Y_1 by a worklist over predecessors along priority-1 edges."""
        current: set[int] = set(self.carrier)

        def member(target: int, priority: int) -> bool:
            if self.view.is_unsat(target):
                return False
            index = self._index(priority)
            return target not in current if index == 0 else target not in args[index]

        pending = set(self.carrier)
        while pending:
            node = pending.pop()
            if node in current and self.view.holds(node, member):
                current.discard(node)
                pending |= self.predecessors.get(node, set()) & current
        return frozenset(current)


def solve_partial(
    view: GameView,
    strategy: Callable[..., frozenset[int]] = nested_fixpoint,
) -> tuple[frozenset[int], frozenset[int]]:
    """
    Compute the winning regions of both players on the current game.

    Args:
        view: The game.
        strategy: Nested fixpoint evaluator with the signature of `nested_fixpoint`.

    Returns:
        The existential and the universal winning region among the carrier nodes.
    """
    ctx = SolveContext(view)
    if not ctx.carrier:
        return frozenset(), frozenset()
    win_exists = strategy(ctx.rank, ctx.f_exists, ctx.carrier, True, ctx.innermost_exists)
    win_forall = strategy(ctx.rank, ctx.f_forall, ctx.carrier, False, ctx.innermost_forall)
    log.debug(
        f"Solved {len(ctx.carrier)} nodes at rank {ctx.rank}: "
        f"{len(win_exists)} existential, {len(win_forall)} universal"
    )
    return win_exists, win_forall


def schedule_should_solve(
    expansions_done: int,
    nodes: int,
    last_solve_at: int | None,
    mode: Schedule,
) -> bool:
    """
    Decide whether to solve the partial game after an expansion step.

    `once` never solves in between; `adaptive` solves after the first expansion
    and then whenever the game has doubled in size since the last solve.
    """
    if mode is Schedule.ONCE or expansions_done <= 0:
        return False
    return last_solve_at is None or nodes >= 2 * last_solve_at
