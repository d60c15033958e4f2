"""
On-the-fly determinization of the tracking automaton.

Both constructions produce a deterministic parity automaton that accepts a word
iff the tracking automaton rejects it, i.e. iff no trace along the word is
dominated by a least fixpoint. Priorities are attached to transitions and use
the max-parity condition.

- `MiyanoHayashi` handles alternation-free formulas with a breakpoint
  construction (rank 2).
- `PermutationDeterminizer` handles aconjunctive formulas. Traces that might
  be dominated by a least-fixpoint variable X are followed inside the region of
  X, in components ordered by age; the most senior component that dies or
  accepts decides the priority (rank 2m + 2, m the number of (node, variable)
  pairs that can be tracked).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Generic, Protocol, TypeVar

from .automaton import Letter, TrackingAutomaton
from .closure import ClosureIndex
from .formula import is_aconjunctive

log = logging.getLogger(__name__)

ROOT = -1

Pair = tuple[int, int]


class UnsupportedFragmentError(ValueError):
    """Raise when a formula lies outside the fragment supported by the requested determinizer."""


class Mode(Enum):
    MH = "mh"
    PERM = "perm"


class Role(Enum):
    CORE = "core"
    STATE = "state"


@dataclass(frozen=True)
class MHState:
    """Breakpoint pair: all trace heads `S` and the obligations `F ⊆ S` since the last breakpoint."""
    S: frozenset[int]
    F: frozenset[int]


@dataclass(frozen=True)
class Component:
    """
    Tracked (node, binder of a least-fixpoint variable) pairs.

    Attributes:
        parent: Position of the parent component, `ROOT` for a top-level one.
        pairs: The pairs, all inside the region of their variable.
    """
    parent: int
    pairs: frozenset[Pair]


@dataclass(frozen=True)
class PermState:
    """All trace heads plus the tracked components, most senior first."""
    heads: frozenset[int]
    components: tuple[Component, ...]


MacroState = MHState | PermState
S = TypeVar("S", MHState, PermState)


@dataclass(frozen=True)
class StepResult(Generic[S]):
    target: S
    priority: int


class Determinizer(Protocol[S]):
    mode: Mode
    rank: int

    def initial(self) -> S: ...

    def step(self, state: S, letter: Letter) -> StepResult[S]: ...

    def label(self, state: S) -> frozenset[int]: ...


class MiyanoHayashi:
    """
    Breakpoint determinization for alternation-free formulas.

    In an alternation-free formula a trace that stays forever among the nodes in
    which some least-fixpoint variable is active is bad, and every bad trace
    eventually does so. The obligation set follows these traces; a transition
    that empties it is a breakpoint and has priority 2, all others priority 1.
    """
    mode = Mode.MH
    rank = 2

    def __init__(self, automaton: TrackingAutomaton) -> None:
        self.automaton = automaton
        closure = automaton.closure
        region: set[int] = set()
        for nodes in closure.mu_regions.values():
            region |= nodes
        self.region = frozenset(region)

    def initial(self) -> MHState:
        heads = frozenset({self.automaton.initial})
        return MHState(heads, heads & self.region)

    def step(self, state: MHState, letter: Letter) -> StepResult[MHState]:
        heads = self.automaton.delta_set(state.S, letter)
        pending = self.automaton.delta_set(state.F, letter) & self.region
        if pending:
            return StepResult(MHState(heads, pending), 1)
        return StepResult(MHState(heads, heads & self.region), 2)

    def label(self, state: MHState) -> frozenset[int]:
        return state.S


class PermutationDeterminizer:
    """
    Seniority-ordered trace tracking for aconjunctive formulas.

    A trace is bad when, from some point on, it stays in the region of one
    least-fixpoint variable X and passes the binder of X infinitely often. The
    state keeps all trace heads plus an ordered list of components holding
    (node, X) pairs. A component may be the child of an older one; parents come
    before their children and elder siblings before younger ones. The pairs of
    a child also lie in its parent, and siblings are disjoint.

    One step moves every pair along the letter inside its region and opens a
    youngest child for the pairs sitting on their binder. A pair is dropped
    from a component when an elder sibling of the component or of one of its
    ancestors holds it. Empty components die; a component whose pairs are all
    covered by its children accepts and loses its descendants.

    With the first event at (1-based) position i, the step emits 2i for an
    acceptance and 2i - 1 for a death, and 2m + 1 without events (m the number
    of trackable pairs, which bounds the list length); the transition priority
    is 2m + 3 minus that value. Components opened in the same step carry no
    events.
    """
    mode = Mode.PERM

    def __init__(self, automaton: TrackingAutomaton) -> None:
        self.automaton = automaton
        self.regions = automaton.closure.mu_regions
        self.pairs = sum(len(nodes) for nodes in self.regions.values())
        self.rank = 2 * self.pairs + 2

    def available(self, heads: frozenset[int]) -> frozenset[Pair]:
        """Pairs that trace heads can start: every head inside the region of a variable."""
        return frozenset((node, var) for var, region in self.regions.items() for node in heads & region)

    def _move(self, pairs: frozenset[Pair], letter: Letter) -> set[Pair]:
        return {
            (target, var)
            for node, var in pairs
            for target in self.automaton.delta(node, letter)
            if target in self.regions[var]
        }

    def initial(self) -> PermState:
        return PermState(frozenset({self.automaton.initial}), ())

    def step(self, state: PermState, letter: Letter) -> StepResult[PermState]:
        heads = self.automaton.delta_set(state.heads, letter)
        old = len(state.components)
        parents = [component.parent for component in state.components]
        labels = [self._move(component.pairs, letter) for component in state.components]

        on_binder = {(var, var) for var in self.regions if var in heads}
        if on_binder:
            parents.append(ROOT)
            labels.append(on_binder)
        for position in range(old):
            passed = {pair for pair in labels[position] if pair[0] == pair[1]}
            if passed:
                parents.append(position)
                labels.append(passed)

        children: dict[int, list[int]] = {}
        for position, parent in enumerate(parents):
            children.setdefault(parent, []).append(position)

        def claim(parent: int, allowed: set[Pair]) -> None:
            taken: set[Pair] = set()
            for child in children.get(parent, []):
                labels[child] &= allowed
                labels[child] -= taken
                claim(child, labels[child])
                taken |= labels[child]

        claim(ROOT, set(self.available(heads)))

        alive = [bool(label) for label in labels]
        accepted: list[int] = []
        for position, label in enumerate(labels):
            if not alive[position]:
                continue
            kids = [child for child in children.get(position, []) if alive[child]]
            covered: set[Pair] = set()
            for child in kids:
                covered |= labels[child]
            if kids and covered == label:
                accepted.append(position)
                pending = list(kids)
                while pending:
                    child = pending.pop()
                    alive[child] = False
                    pending.extend(children.get(child, []))

        died = [position for position in range(old) if not alive[position]]
        events = [2 * position + 2 for position in accepted] + [2 * position + 1 for position in died]
        value = min(events, default=2 * self.pairs + 1)

        renumber = {ROOT: ROOT}
        survivors: list[Component] = []
        for position, label in enumerate(labels):
            if alive[position]:
                renumber[position] = len(survivors)
                survivors.append(Component(renumber[parents[position]], frozenset(label)))
        return StepResult(PermState(heads, tuple(survivors)), 2 * self.pairs + 3 - value)

    def label(self, state: PermState) -> frozenset[int]:
        return state.heads


def select_mode(closure: ClosureIndex) -> Mode:
    """
    Pick the determinization for a closure.

    Raises:
        UnsupportedFragmentError: If the formula is neither alternation-free nor
            aconjunctive.
    """
    if closure.depth <= 1:
        return Mode.MH
    if is_aconjunctive(closure.formulas[closure.root]):
        return Mode.PERM
    raise UnsupportedFragmentError(f"Formula with alternation depth {closure.depth} is not aconjunctive")


def make_determinizer(
    closure: ClosureIndex,
    mode: Mode | None = None,
) -> Determinizer[Any]:
    """
    Build the determinizer for `closure`, choosing the mode when none is given.

    Raises:
        UnsupportedFragmentError: If the formula is outside the fragment of `mode`.
    """
    automaton = TrackingAutomaton(closure)
    if mode is None:
        mode = select_mode(closure)
    if mode is Mode.MH:
        if closure.depth > 1:
            raise UnsupportedFragmentError(
                f"Breakpoint construction needs alternation depth <= 1, got {closure.depth}"
            )
        log.debug(f"Using breakpoint construction over {closure.size} nodes")
        return MiyanoHayashi(automaton)
    if closure.depth > 1 and not is_aconjunctive(closure.formulas[closure.root]):
        raise UnsupportedFragmentError("Permutation construction needs an aconjunctive formula")
    determinizer = PermutationDeterminizer(automaton)
    log.debug(f"Using permutation construction over {closure.size} nodes, rank {determinizer.rank}")
    return determinizer


def classify(label: frozenset[int], closure: ClosureIndex) -> Role:
    """Saturated labels are states, all others cores; atoms count as modalised."""
    return Role.STATE if closure.is_saturated(label) else Role.CORE
