"""
Per-logic semantic engines.

Each supported logic contributes a one-step satisfiability check over a
one-step pair (γ, Θ): γ is a set of modal operators applied to variables from a
finite set V and Θ is a family of subsets of V. The relational and coalition
logics additionally provide modal tableau rules. All functions here are pure.
"""

from __future__ import annotations

from collections.abc import Collection, Hashable, Iterable
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING

from .formula import Bottom, Formula, ModalOp, OpKind, Prop

if TYPE_CHECKING:
    from .closure import ClosureIndex


class UnsupportedEngineError(ValueError):
    """Raise when the tableau engine is requested for a logic without a complete rule set."""


class Logic(Enum):
    K = "k"
    KD = "kd"
    GRADED = "graded"
    AMC = "amc"

    @classmethod
    def from_id(cls, ident: str | Logic) -> Logic:
        if isinstance(ident, Logic):
            return ident
        try:
            return cls(ident.lower())
        except ValueError as e:
            choices = ", ".join(logic.value for logic in cls)
            raise ValueError(f"Unknown logic '{ident}', expected one of: {choices}") from e

    @property
    def serial(self) -> bool:
        return self is Logic.KD

    @property
    def relational(self) -> bool:
        return self in (Logic.K, Logic.KD)

    @property
    def has_tableau(self) -> bool:
        return self is not Logic.GRADED

    @property
    def op_kinds(self) -> frozenset[OpKind]:
        if self.relational:
            return frozenset({OpKind.DIAMOND, OpKind.BOX})
        if self is Logic.GRADED:
            return frozenset({OpKind.MORE_THAN, OpKind.ALL_BUT})
        return frozenset({OpKind.ENFORCE, OpKind.CANNOT_PREVENT})


Literal = tuple[ModalOp, Hashable]


@dataclass(frozen=True)
class OneStepPair:
    """γ as (operator, variable) pairs and Θ as a family of variable sets."""
    gamma: frozenset[Literal]
    theta: frozenset[frozenset[Hashable]]

    @classmethod
    def of(cls, gamma: Iterable[Literal], theta: Iterable[Iterable[Hashable]]) -> OneStepPair:
        return cls(frozenset(gamma), frozenset(frozenset(u) for u in theta))


@dataclass(frozen=True)
class RuleApplication:
    """
    One matching of a modal rule.

    `premiss` and every clause of `conclusion` are sets of modal closure nodes;
    a clause κ stands for the conjunction of the arguments of its members, i.e.
    the successor macro-state reached by the modal letter κ.
    """
    premiss: frozenset[int]
    conclusion: tuple[frozenset[int], ...] = field(default=())


def literal_consistent(formulas: Iterable[Formula]) -> bool:
    """False iff the set contains `false` or some atom together with its negation."""
    polarity: dict[str, bool] = {}
    for f in formulas:
        if isinstance(f, Bottom):
            return False
        if isinstance(f, Prop):
            if polarity.setdefault(f.name, f.positive) != f.positive:
                return False
    return True


def _maximal(theta: Collection[frozenset[Hashable]]) -> list[frozenset[Hashable]]:
    # all one-step checks are monotone in Θ, so dominated members never matter
    ordered = sorted(theta, key=len, reverse=True)
    kept: list[frozenset[Hashable]] = []
    for u in ordered:
        if not any(u <= v for v in kept):
            kept.append(u)
    return kept


@lru_cache(maxsize=1 << 16)
def one_step_sat_relational(pair: OneStepPair, serial: bool = False) -> bool:
    boxes = frozenset(arg for op, arg in pair.gamma if op.kind is OpKind.BOX)
    diamonds = [arg for op, arg in pair.gamma if op.kind is OpKind.DIAMOND]
    candidates = [u for u in pair.theta if boxes <= u]
    if not all(any(arg in u for u in candidates) for arg in diamonds):
        return False
    if serial and not diamonds:
        return bool(candidates)
    return True


@lru_cache(maxsize=1 << 16)
def one_step_sat_graded(pair: OneStepPair) -> bool:
    """
    Decide a graded one-step pair by depth-first search over multiplicities.

    A multiplicity β(u) ∈ {0..m+1} is guessed for each maximal u ∈ Θ, where m is
    the largest grade of a diamond. `<g>a` needs more than g successors in sets
    containing a, `[g]a` allows at most g successors in sets missing a. The last
    set gets the smallest multiplicity that closes every remaining deficit
    instead of being enumerated.
    """
    more = [(arg, op.grade) for op, arg in pair.gamma if op.kind is OpKind.MORE_THAN]
    allbut = [(arg, op.grade) for op, arg in pair.gamma if op.kind is OpKind.ALL_BUT]
    if not more:
        return True
    cap = max(grade for _, grade in more) + 1
    helpful = [u for u in _maximal(pair.theta) if any(arg in u for arg, _ in more)]
    helpful.sort(key=lambda u: sum(1 for arg, _ in more if arg in u), reverse=True)

    need = [grade + 1 for _, grade in more]
    room = [grade for _, grade in allbut]
    covers = [[i for i, (arg, _) in enumerate(more) if arg in u] for u in helpful]
    misses = [[j for j, (arg, _) in enumerate(allbut) if arg not in u] for u in helpful]
    # suffix reach: which diamonds can still gain weight from sets at or after index i
    reach = [set[int]() for _ in range(len(helpful) + 1)]
    for i in range(len(helpful) - 1, -1, -1):
        reach[i] = reach[i + 1] | set(covers[i])

    def search(i: int) -> bool:
        if all(n <= 0 for n in need):
            return True
        if i == len(helpful):
            return False
        if any(n > 0 and d not in reach[i] for d, n in enumerate(need)):
            return False
        limit = min((room[j] for j in misses[i]), default=cap)
        limit = min(limit, cap)
        if i == len(helpful) - 1:
            value = max((need[d] for d in covers[i]), default=0)
            value = max(value, 0)
            covered = set(covers[i])
            return value <= limit and all(n <= 0 for d, n in enumerate(need) if d not in covered)
        for value in range(limit, -1, -1):
            for d in covers[i]:
                need[d] -= value
            for j in misses[i]:
                room[j] -= value
            found = search(i + 1)
            for d in covers[i]:
                need[d] += value
            for j in misses[i]:
                room[j] += value
            if found:
                return True
        return False

    return search(0)


def _coalition_witnesses(
    pair: OneStepPair,
    agents: int,
) -> list[tuple[Literal | None, tuple[Literal, ...]]]:
    """
    Enumerate the joint-enforcement obligations of a coalition one-step pair.

    An obligation chooses one cannot-prevent literal `[D]b` (or none, standing for
    the grand coalition) and a maximal family of enforcing literals `<C>a` whose
    coalitions are pairwise disjoint and contained in D. The pair is satisfiable
    iff for every obligation some u ∈ Θ holds all of its arguments together with
    the arguments that hold in every outcome.
    """
    everyone = frozenset(range(1, agents + 1))
    enforcing = sorted(
        (lit for lit in pair.gamma if lit[0].kind is OpKind.ENFORCE and lit[0].coalition),
        key=repr,
    )
    preventing = sorted(
        (lit for lit in pair.gamma if lit[0].kind is OpKind.CANNOT_PREVENT and lit[0].coalition != everyone),
        key=repr,
    )
    choices: list[tuple[Literal | None, frozenset[int]]] = [(None, everyone)]
    choices.extend((lit, lit[0].coalition) for lit in preventing)

    witnesses: list[tuple[Literal | None, tuple[Literal, ...]]] = []
    for chosen, allowed in choices:
        inside = [lit for lit in enforcing if lit[0].coalition <= allowed]
        families: list[tuple[Literal, ...]] = []
        for size in range(len(inside), -1, -1):
            for family in combinations(inside, size):
                coalitions = [lit[0].coalition for lit in family]
                if any(a & b for a, b in combinations(coalitions, 2)):
                    continue
                if any(set(family) < set(bigger) for bigger in families):
                    continue
                families.append(family)
        witnesses.extend((chosen, family) for family in families)
    return witnesses


def _always(pair: OneStepPair, agents: int) -> frozenset[Hashable]:
    return frozenset(arg for op, arg in pair.gamma if _literal_is_always(op, agents))


@lru_cache(maxsize=1 << 16)
def one_step_sat_coalition(pair: OneStepPair, agents: int) -> bool:
    """
    Decide a coalition one-step pair over `agents` agents.

    Every agent can be given the moves "commit to enforcing literal i" plus a
    counter that lets the opponents of a cannot-prevent literal steer the
    outcome, so the pair is satisfiable exactly when every joint-enforcement
    obligation (see `_coalition_witnesses`) fits inside a single u ∈ Θ.
    """
    if not pair.theta:
        return False
    always = _always(pair, agents)
    maximal = _maximal(pair.theta)
    for chosen, family in _coalition_witnesses(pair, agents):
        wanted = set(always) | {arg for _, arg in family}
        if chosen is not None:
            wanted.add(chosen[1])
        if not any(wanted <= u for u in maximal):
            return False
    return True


def one_step_sat(pair: OneStepPair, logic: Logic, agents: int = 1) -> bool:
    """Dispatch a one-step pair to the solver of `logic`."""
    if logic.relational:
        return one_step_sat_relational(pair, logic.serial)
    if logic is Logic.GRADED:
        return one_step_sat_graded(pair)
    return one_step_sat_coalition(pair, agents)


def tableau_applications(
    label: Collection[int],
    closure: ClosureIndex,
    logic: Logic,
    agents: int = 1,
) -> list[RuleApplication]:
    """
    Compute all modal rule applications matching a saturated label.

    Relational logics get one application per diamond, whose single clause is the
    diamond together with every box; the serial variant adds one application with
    the boxes alone when no diamond is present. The coalition logic gets one
    application per joint-enforcement obligation, with the obligation as clause.

    Raises:
        UnsupportedEngineError: For the graded logic.
    """
    if not logic.has_tableau:
        raise UnsupportedEngineError(f"No complete tableau rules for the {logic.value} logic")
    modal = sorted(node for node in label if closure.is_modal(node))
    premiss = frozenset(modal)

    if logic.relational:
        boxes = frozenset(node for node in modal if closure.op(node).kind is OpKind.BOX)
        diamonds = [node for node in modal if closure.op(node).kind is OpKind.DIAMOND]
        applications = [RuleApplication(premiss, (boxes | {node},)) for node in diamonds]
        if logic.serial and not diamonds:
            applications.append(RuleApplication(premiss, (boxes,)))
        return applications

    literals: dict[Literal, int] = {(closure.op(node), closure.child(node)): node for node in modal}
    pair = OneStepPair.of(literals, ())
    always = {node for lit, node in literals.items() if _literal_is_always(lit[0], agents)}
    applications = []
    for chosen, family in _coalition_witnesses(pair, agents):
        clause = always | {literals[lit] for lit in family}
        if chosen is not None:
            clause.add(literals[chosen])
        applications.append(RuleApplication(premiss, (frozenset(clause),)))
    return applications


def _literal_is_always(op: ModalOp, agents: int) -> bool:
    if op.kind is OpKind.ENFORCE:
        return not op.coalition
    return op.kind is OpKind.CANNOT_PREVENT and op.coalition == frozenset(range(1, agents + 1))
