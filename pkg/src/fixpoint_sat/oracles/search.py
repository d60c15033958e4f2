"""
Brute-force searches over small models and one-step structures.

Both searches enumerate candidates and check them against the direct
semantics, so they share no decision code with the solver. The model search
switches to seeded random sampling when a size has more candidates than its
budget.
"""

from __future__ import annotations

import random
from collections.abc import Hashable, Iterable, Iterator
from itertools import chain, combinations, product

import networkx as nx

from ..core.formula import Formula, OpKind, atoms, modal_ops
from ..core.logics import Logic, OneStepPair
from .models import ConcurrentGameStructure, ExplicitModel, evaluate, kripke, multigraph


def _valuations(names: list[str], size: int) -> Iterator[tuple[frozenset[str], ...]]:
    subsets = [frozenset(c) for c in chain.from_iterable(combinations(names, k) for k in range(len(names) + 1))]
    return product(subsets, repeat=size)


def _kripke_models(names: list[str], size: int, serial: bool) -> Iterator[nx.DiGraph]:
    pairs = [(s, t) for s in range(size) for t in range(size)]
    for valuation in _valuations(names, size):
        for mask in range(1 << len(pairs)):
            edges = [pair for i, pair in enumerate(pairs) if mask >> i & 1]
            if serial and {s for s, _ in edges} != set(range(size)):
                continue
            yield kripke(valuation, edges)


def _multigraphs(names: list[str], size: int, cap: int) -> Iterator[nx.DiGraph]:
    pairs = [(s, t) for s in range(size) for t in range(size)]
    for valuation in _valuations(names, size):
        for weights in product(range(cap + 1), repeat=len(pairs)):
            yield multigraph(valuation, dict(zip(pairs, weights, strict=True)))


def _game_structures(names: list[str], size: int, agents: int, max_moves: int) -> Iterator[ConcurrentGameStructure]:
    for valuation in _valuations(names, size):
        for moves in product(product(range(1, max_moves + 1), repeat=agents), repeat=size):
            keys = [
                (state, profile)
                for state in range(size)
                for profile in product(*(range(count) for count in moves[state]))
            ]
            for targets in product(range(size), repeat=len(keys)):
                yield ConcurrentGameStructure(valuation, agents, moves, dict(zip(keys, targets, strict=True)))


def _candidate_count(names: list[str], size: int, logic: Logic, cap: int, agents: int, max_moves: int) -> int:
    """Number of candidates of one size; an upper bound for serial frames and game structures."""
    valuations = 2 ** (len(names) * size)
    pairs = size * size
    if logic.relational:
        return valuations * 2 ** pairs
    if logic is Logic.GRADED:
        return valuations * (cap + 1) ** pairs
    profiles = max_moves ** agents
    return valuations * profiles ** size * size ** (size * profiles)


def _random_model(
    names: list[str],
    size: int,
    logic: Logic,
    cap: int,
    agents: int,
    max_moves: int,
    rng: random.Random,
) -> ExplicitModel:
    valuation = [frozenset(name for name in names if rng.random() < 0.5) for _ in range(size)]
    pairs = [(s, t) for s in range(size) for t in range(size)]
    if logic.relational:
        edges = [pair for pair in pairs if rng.random() < 0.5]
        if logic.serial:
            sources = {s for s, _ in edges}
            edges += [(s, rng.randrange(size)) for s in range(size) if s not in sources]
        return kripke(valuation, edges)
    if logic is Logic.GRADED:
        return multigraph(valuation, {pair: rng.randint(0, cap) for pair in pairs})
    moves = tuple(tuple(rng.randint(1, max_moves) for _ in range(agents)) for _ in range(size))
    outcome = {
        (state, profile): rng.randrange(size)
        for state in range(size)
        for profile in product(*(range(count) for count in moves[state]))
    }
    return ConcurrentGameStructure(tuple(valuation), agents, moves, outcome)


def bounded_model_search(
    f: Formula,
    logic: Logic,
    max_states: int,
    agents: int = 1,
    max_moves: int = 2,
    budget: int | None = None,
    rng: random.Random | None = None,
) -> ExplicitModel | None:
    """
    Find a model with at most `max_states` states in which `f` holds somewhere.

    Models are tried by increasing size. Multigraph multiplicities are capped at
    the largest grade plus one, and coalition move counts at `max_moves`. A size
    with more than `budget` candidates is sampled `budget` times instead of
    enumerated, so a None result is then only evidence, not proof.

    Returns:
        A satisfying model, or None when none was found within the bounds.
    """
    names = sorted(atoms(f))
    cap = max((op.grade for op in modal_ops(f)), default=0) + 1
    rng = rng or random.Random(0)
    for size in range(1, max_states + 1):
        candidates: Iterable[ExplicitModel]
        if budget is not None and _candidate_count(names, size, logic, cap, agents, max_moves) > budget:
            candidates = (_random_model(names, size, logic, cap, agents, max_moves, rng) for _ in range(budget))
        elif logic.relational:
            candidates = _kripke_models(names, size, logic.serial)
        elif logic is Logic.GRADED:
            candidates = _multigraphs(names, size, cap)
        else:
            candidates = _game_structures(names, size, agents, max_moves)
        for model in candidates:
            if evaluate(model, f):
                return model
    return None


def brute_one_step(
    pair: OneStepPair,
    logic: Logic,
    agents: int = 1,
    max_moves: int | None = None,
) -> bool:
    """
    Decide a one-step pair by enumerating one-step structures over Θ.

    Relational: every subset of Θ as the successor set. Graded: every multiset
    over Θ with multiplicities up to the largest diamond grade plus one.
    Coalition: every move table with at most `max_moves` moves per agent and
    every outcome function into Θ; the default bound is
    `(u + 1) * max(1, v)` for u enforcing literals and v cannot-prevent literals
    of proper coalitions.
    """
    theta = sorted(pair.theta, key=lambda u: sorted(map(repr, u)))
    gamma = list(pair.gamma)

    if logic.relational:
        for size in range(len(theta) + 1):
            for chosen in combinations(theta, size):
                if logic.serial and not chosen:
                    continue
                if all(
                    any(arg in u for u in chosen) if op.kind is OpKind.DIAMOND else all(arg in u for u in chosen)
                    for op, arg in gamma
                ):
                    return True
        return False

    if logic is Logic.GRADED:
        top = max((op.grade for op, _ in gamma if op.kind is OpKind.MORE_THAN), default=0) + 1
        for beta in product(range(top + 1), repeat=len(theta)):
            def weight(arg: Hashable, inside: bool, beta: tuple[int, ...] = beta) -> int:
                return sum(b for u, b in zip(theta, beta, strict=True) if (arg in u) == inside)

            if all(
                weight(arg, True) > op.grade if op.kind is OpKind.MORE_THAN else weight(arg, False) <= op.grade
                for op, arg in gamma
            ):
                return True
        return False

    if not theta:
        return False
    if max_moves is None:
        everyone = frozenset(range(1, agents + 1))
        enforcing = sum(1 for op, _ in gamma if op.kind is OpKind.ENFORCE)
        preventing = sum(1 for op, _ in gamma if op.kind is OpKind.CANNOT_PREVENT and op.coalition != everyone)
        max_moves = (enforcing + 1) * max(1, preventing)
    for counts in product(range(1, max_moves + 1), repeat=agents):
        profiles = list(product(*(range(c) for c in counts)))
        for outcome in product(range(len(theta)), repeat=len(profiles)):
            table = dict(zip(profiles, outcome, strict=True))
            if all(_coalition_holds(table, counts, theta, op.kind, op.coalition, arg) for op, arg in gamma):
                return True
    return False


def _coalition_holds(
    table: dict[tuple[int, ...], int],
    counts: tuple[int, ...],
    theta: list[frozenset[Hashable]],
    kind: OpKind,
    coalition: frozenset[int],
    arg: Hashable,
) -> bool:
    agents = len(counts)
    inside = [a - 1 for a in sorted(coalition)]
    outside = [a for a in range(agents) if a + 1 not in coalition]

    def forced(ours: tuple[int, ...], goal: bool) -> bool:
        for theirs in product(*(range(counts[a]) for a in outside)):
            profile = [0] * agents
            for a, m in zip(inside, ours, strict=True):
                profile[a] = m
            for a, m in zip(outside, theirs, strict=True):
                profile[a] = m
            if (arg in theta[table[tuple(profile)]]) != goal:
                return False
        return True

    choices = list(product(*(range(counts[a]) for a in inside)))
    if kind is OpKind.ENFORCE:
        return any(forced(ours, True) for ours in choices)
    return not any(forced(ours, False) for ours in choices)
