"""
Acceptance of ultimately periodic words by the tracking automaton and by its
determinization.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from typing import Any

import networkx as nx

from ..core.automaton import Letter, ModalStep, TrackingAutomaton
from ..core.closure import ClosureIndex
from ..core.determinize import Determinizer


def _nondeterministic_accepts(automaton: TrackingAutomaton, prefix: Sequence[Letter], loop: Sequence[Letter]) -> bool:
    """
    Search the product of the automaton with the loop positions for a reachable
    cycle whose largest state priority is even.
    """
    heads = frozenset({automaton.initial})
    for letter in prefix:
        heads = automaton.delta_set(heads, letter)

    product = nx.DiGraph()
    start = [(node, 0) for node in heads]
    product.add_nodes_from(start)
    pending = list(start)
    while pending:
        node, position = pending.pop()
        for succ in automaton.delta(node, loop[position]):
            target = (succ, (position + 1) % len(loop))
            if target not in product:
                product.add_node(target)
                pending.append(target)
            product.add_edge((node, position), target)

    for bound in sorted({automaton.priority(node) for node, _ in product.nodes}, reverse=True):
        if bound % 2 == 1:
            continue
        sub = product.subgraph(v for v in product.nodes if automaton.priority(v[0]) <= bound)
        for component in nx.strongly_connected_components(sub):
            if not any(automaton.priority(v[0]) == bound for v in component):
                continue
            member = next(iter(component))
            if len(component) == 1 and not sub.has_edge(member, member):
                continue
            return True
    return False


def _deterministic_accepts(determinizer: Determinizer[Any], prefix: Sequence[Letter], loop: Sequence[Letter]) -> bool:
    """Run the unique run until a loop boundary repeats and inspect the priorities on the cycle."""
    state = determinizer.initial()
    for letter in prefix:
        state = determinizer.step(state, letter).target
    seen: dict[Any, int] = {}
    priorities: list[int] = []
    while state not in seen:
        seen[state] = len(priorities)
        lap = 0
        for letter in loop:
            result = determinizer.step(state, letter)
            lap = max(lap, result.priority)
            state = result.target
        priorities.append(lap)
    return max(priorities[seen[state]:]) % 2 == 0


def lasso_accepts(
    automaton: TrackingAutomaton | Determinizer[Any],
    prefix: Sequence[Letter],
    loop: Sequence[Letter],
) -> bool:
    """
    Decide acceptance of `prefix · loop^ω` under the max-parity condition.

    Raises:
        ValueError: If the loop is empty.
    """
    if not loop:
        raise ValueError("The loop of a lasso must not be empty")
    if isinstance(automaton, TrackingAutomaton):
        return _nondeterministic_accepts(automaton, prefix, loop)
    return _deterministic_accepts(automaton, prefix, loop)


def letters(closure: ClosureIndex) -> list[Letter]:
    """Every propositional letter of the closure plus the modal letters over single modal nodes and all of them."""
    result: list[Letter] = list(TrackingAutomaton(closure).propositional_letters(range(closure.size)))
    modal = frozenset(node for node in range(closure.size) if closure.is_modal(node))
    result.extend(ModalStep(frozenset({node})) for node in sorted(modal))
    result.append(ModalStep(modal))
    return result


def random_lasso(
    closure: ClosureIndex,
    rng: random.Random,
    max_prefix: int = 8,
    max_loop: int = 8,
) -> tuple[list[Letter], list[Letter]]:
    """A random lasso over the closure whose loop contains at least one modal letter."""
    alphabet = letters(closure)
    modal = [letter for letter in alphabet if isinstance(letter, ModalStep)]
    prefix = [rng.choice(alphabet) for _ in range(rng.randint(0, max_prefix))]
    loop = [rng.choice(alphabet) for _ in range(rng.randint(0, max_loop - 1))]
    loop.insert(rng.randint(0, len(loop)), rng.choice(modal))
    return prefix, loop
