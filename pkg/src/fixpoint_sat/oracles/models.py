"""
Explicit finite models and a direct model checker.

Kripke frames and multigraphs are `networkx.DiGraph` objects whose nodes carry an
`atoms` attribute (the set of true atoms); multigraph edges carry a `weight`
multiplicity. Concurrent game structures list per-state move counts and a total
outcome table.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import product
from typing import Any

import networkx as nx

from ..core.formula import And, Bottom, FixKind, Fixpoint, Formula, Modal, OpKind, Or, Prop, Top, Var


class ModelKindError(ValueError):
    """Raise when a formula uses modal operators that the model kind cannot interpret."""


def kripke(valuation: Iterable[Iterable[str]], edges: Iterable[tuple[int, int]]) -> nx.DiGraph:
    """Kripke frame over states 0..n-1 with the given atoms per state."""
    graph = nx.DiGraph(kind="kripke")
    for state, atoms in enumerate(valuation):
        graph.add_node(state, atoms=frozenset(atoms))
    graph.add_edges_from(edges)
    return graph


def multigraph(valuation: Iterable[Iterable[str]], weights: dict[tuple[int, int], int]) -> nx.DiGraph:
    """Multigraph over states 0..n-1; zero multiplicities are left out."""
    graph = nx.DiGraph(kind="multigraph")
    for state, atoms in enumerate(valuation):
        graph.add_node(state, atoms=frozenset(atoms))
    for (source, target), weight in weights.items():
        if weight > 0:
            graph.add_edge(source, target, weight=weight)
    return graph


@dataclass(frozen=True)
class ConcurrentGameStructure:
    """
    Concurrent game structure.

    Attributes:
        valuation: True atoms per state.
        agents: Number of agents, named 1..agents.
        moves: Per state, the number of moves of each agent (all at least 1).
        outcome: Successor state per state and joint move profile.
    """
    valuation: tuple[frozenset[str], ...]
    agents: int
    moves: tuple[tuple[int, ...], ...]
    outcome: dict[tuple[int, tuple[int, ...]], int]

    @property
    def states(self) -> range:
        return range(len(self.valuation))

    def profiles(self, state: int) -> list[tuple[int, ...]]:
        return list(product(*(range(count) for count in self.moves[state])))


ExplicitModel = nx.DiGraph | ConcurrentGameStructure


def _kind(model: Any) -> str:
    if isinstance(model, ConcurrentGameStructure):
        return "cgs"
    return str(model.graph.get("kind", "kripke"))


_KINDS = {
    "kripke": {OpKind.DIAMOND, OpKind.BOX},
    "multigraph": {OpKind.MORE_THAN, OpKind.ALL_BUT},
    "cgs": {OpKind.ENFORCE, OpKind.CANNOT_PREVENT},
}


def _states(model: Any) -> frozenset[int]:
    if isinstance(model, ConcurrentGameStructure):
        return frozenset(model.states)
    return frozenset(model.nodes)


def _atoms(model: Any, state: int) -> frozenset[str]:
    if isinstance(model, ConcurrentGameStructure):
        return model.valuation[state]
    atoms: frozenset[str] = model.nodes[state]["atoms"]
    return atoms


def _can_enforce(model: ConcurrentGameStructure, state: int, coalition: frozenset[int], target: frozenset[int]) -> bool:
    inside = [agent - 1 for agent in sorted(coalition)]
    outside = [agent for agent in range(model.agents) if agent + 1 not in coalition]
    counts = model.moves[state]
    for ours in product(*(range(counts[agent]) for agent in inside)):
        forced = True
        for theirs in product(*(range(counts[agent]) for agent in outside)):
            profile = [0] * model.agents
            for agent, move in zip(inside, ours, strict=True):
                profile[agent] = move
            for agent, move in zip(outside, theirs, strict=True):
                profile[agent] = move
            if model.outcome[(state, tuple(profile))] not in target:
                forced = False
                break
        if forced:
            return True
    return False


def _modal(
    model: Any,
    op_kind: OpKind,
    grade: int,
    coalition: frozenset[int],
    target: frozenset[int],
) -> frozenset[int]:
    states = _states(model)
    match op_kind:
        case OpKind.DIAMOND:
            return frozenset(s for s in states if any(t in target for t in model.successors(s)))
        case OpKind.BOX:
            return frozenset(s for s in states if all(t in target for t in model.successors(s)))
        case OpKind.MORE_THAN:
            return frozenset(
                s for s in states
                if sum(model.edges[s, t]["weight"] for t in model.successors(s) if t in target) > grade
            )
        case OpKind.ALL_BUT:
            return frozenset(
                s for s in states
                if sum(model.edges[s, t]["weight"] for t in model.successors(s) if t not in target) <= grade
            )
        case OpKind.ENFORCE:
            return frozenset(s for s in states if _can_enforce(model, s, coalition, target))
        case OpKind.CANNOT_PREVENT:
            return frozenset(s for s in states if not _can_enforce(model, s, coalition, states - target))
    raise ModelKindError(f"Unknown operator kind {op_kind}")


def evaluate(model: ExplicitModel, f: Formula) -> frozenset[int]:
    """
    States of `model` satisfying the closed formula `f`.

    Fixpoints are computed by Knaster-Tarski iteration from the empty set (least)
    or the full state set (greatest).

    Raises:
        ModelKindError: If `f` contains operators the model kind does not interpret.
    """
    kind = _kind(model)
    allowed = _KINDS[kind]
    states = _states(model)

    def walk(g: Formula, env: dict[str, frozenset[int]]) -> frozenset[int]:
        match g:
            case Bottom():
                return frozenset()
            case Top():
                return states
            case Prop(name, positive):
                return frozenset(s for s in states if (name in _atoms(model, s)) == positive)
            case And(left, right):
                return walk(left, env) & walk(right, env)
            case Or(left, right):
                return walk(left, env) | walk(right, env)
            case Var(name):
                return env[name]
            case Modal(op, arg):
                if op.kind not in allowed:
                    raise ModelKindError(f"Operator {op} cannot be interpreted over a {kind} model")
                return _modal(model, op.kind, op.grade, op.coalition, walk(arg, env))
            case Fixpoint(fix_kind, var, body):
                current = frozenset() if fix_kind is FixKind.MU else states
                while True:
                    value = walk(body, {**env, var: current})
                    if value == current:
                        return current
                    current = value
        raise TypeError(f"Not a formula: {g!r}")

    return walk(f, {})
