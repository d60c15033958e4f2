"""
Saturation of core macro-states into game states.

A core is a macro-state whose label still contains propositional structure.
Saturating it means reading propositional letters until the label contains
only modalised formulas, atoms and `true`; every consistent way of doing so is a
move of the existential player.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol

from .automaton import Letter, TrackingAutomaton
from .determinize import Determinizer, MacroState
from .logics import literal_consistent


@dataclass(frozen=True)
class Saturation:
    """A propositional word, the state it leads to and the largest priority emitted on the way."""
    word: tuple[Letter, ...]
    target: MacroState
    priority: int


class Saturator(Protocol):
    def saturate(
        self,
        state: MacroState,
        determinizer: Determinizer[Any],
        automaton: TrackingAutomaton,
    ) -> list[Saturation]: ...


class WordSearchSaturator:
    """
    Depth-first search over propositional letters.

    Each step works on the label node that comes first in the topological order
    of the closure, so every node is decomposed at most once along a word and
    words stay shorter than the closure. Branches whose label contains `false` or
    a complementary pair of atoms are cut, and partial results reached twice with
    the same priority are explored once.
    """

    def saturate(
        self,
        state: MacroState,
        determinizer: Determinizer[Any],
        automaton: TrackingAutomaton,
    ) -> list[Saturation]:
        closure = automaton.closure
        found: dict[tuple[MacroState, int], Saturation] = {}
        seen: set[tuple[MacroState, int]] = set()
        stack: list[tuple[MacroState, tuple[Letter, ...], int]] = [(state, (), 0)]

        while stack:
            current, word, priority = stack.pop()
            if (current, priority) in seen:
                continue
            seen.add((current, priority))
            label = determinizer.label(current)
            if not literal_consistent(closure.formulas_of(label)):
                continue
            pending = [node for node in label if not closure.is_saturated((node,))]
            if not pending:
                found.setdefault((current, priority), Saturation(word, current, priority))
                continue
            node = min(pending, key=closure.order.__getitem__)
            # reversed so that the first branch is explored first
            for letter in reversed(automaton.propositional_letters((node,))):
                step = determinizer.step(current, letter)
                stack.append((step.target, (*word, letter), max(priority, step.priority)))

        return list(found.values())
