"""
Explicit parity games and a recursive reference solver.

A game is a `networkx.MultiDiGraph` whose nodes carry an `owner` attribute
(EXISTS or FORALL) and whose edges carry a `priority`. The existential player
wins a play when the largest priority seen infinitely often is even; a player
who cannot move loses.
"""

from __future__ import annotations

import random
from collections.abc import Hashable, Iterable
from itertools import chain, combinations

import networkx as nx

from ..core.determinize import Role
from ..core.game import Engine, SatGame
from ..core.logics import OneStepPair, one_step_sat
from ..core.solver import Membership

EXISTS = 0
FORALL = 1


def _attractor(graph: nx.DiGraph, player: int, target: set[Hashable]) -> set[Hashable]:
    region = set(target)
    pending = list(region)
    while pending:
        node = pending.pop()
        for pred in graph.predecessors(node):
            if pred in region:
                continue
            if graph.nodes[pred]["owner"] == player or all(s in region for s in graph.successors(pred)):
                region.add(pred)
                pending.append(pred)
    return region


def _solve(graph: nx.DiGraph) -> tuple[set[Hashable], set[Hashable]]:
    if graph.number_of_nodes() == 0:
        return set(), set()
    top = max(priority for _, priority in graph.nodes(data="priority"))
    player = top % 2
    attracted = _attractor(graph, player, {v for v, p in graph.nodes(data="priority") if p == top})
    regions = _solve(graph.subgraph(set(graph.nodes) - attracted))
    if not regions[1 - player]:
        won = set(graph.nodes)
        return (won, set()) if player == EXISTS else (set(), won)
    lost = _attractor(graph, 1 - player, regions[1 - player])
    rest = _solve(graph.subgraph(set(graph.nodes) - lost))
    if player == EXISTS:
        return rest[0], rest[1] | lost
    return rest[0] | lost, rest[1]


def zielonka(game: nx.MultiDiGraph) -> tuple[frozenset[Hashable], frozenset[Hashable]]:
    """
    Winning regions of both players.

    Edges are subdivided by nodes carrying the edge priority, and dead ends move
    to a sink that is lost by their owner, so the recursion runs on a total game
    with node priorities.

    Returns:
        The existential and the universal winning region over the nodes of `game`.
    """
    total = nx.DiGraph()
    floor = min((p for _, _, p in game.edges(data="priority")), default=0)
    for node, owner in game.nodes(data="owner"):
        total.add_node(("node", node), owner=owner, priority=floor)
    for index, (source, target, priority) in enumerate(game.edges(data="priority")):
        middle = ("edge", index)
        total.add_node(middle, owner=EXISTS, priority=priority)
        total.add_edge(("node", source), middle)
        total.add_edge(middle, ("node", target))
    for owner in (EXISTS, FORALL):
        # the sink of a player carries a priority of the opposite parity
        sink = ("sink", owner)
        total.add_node(sink, owner=owner, priority=2 * max(floor, 0) + 2 + (1 - owner))
        total.add_edge(sink, sink)
    for node, owner in game.nodes(data="owner"):
        if game.out_degree(node) == 0:
            total.add_edge(("node", node), ("sink", owner))

    won, lost = _solve(total)
    return (
        frozenset(v[1] for v in won if v[0] == "node"),
        frozenset(v[1] for v in lost if v[0] == "node"),
    )


class ExplicitGameView:
    """Solver view of an explicit game: existential nodes need one good move, universal nodes all."""

    def __init__(self, game: nx.MultiDiGraph) -> None:
        self.game = game
        self._ids = {node: ident for ident, node in enumerate(game.nodes)}
        self._nodes = list(game.nodes)

    def ident(self, node: Hashable) -> int:
        return self._ids[node]

    def nodes(self, idents: Iterable[int]) -> frozenset[Hashable]:
        return frozenset(self._nodes[ident] for ident in idents)

    def carrier(self) -> frozenset[int]:
        return frozenset(self._ids.values())

    def edges(self, node: int) -> Iterable[tuple[int, int]]:
        return [
            (priority, self._ids[target])
            for _, target, priority in self.game.out_edges(self._nodes[node], data="priority")
        ]

    def holds(self, node: int, member: Membership) -> bool:
        moves = (member(target, priority) for priority, target in self.edges(node))
        if self.game.nodes[self._nodes[node]]["owner"] == EXISTS:
            return any(moves)
        return all(moves)

    def is_sat(self, node: int) -> bool:
        return False

    def is_unsat(self, node: int) -> bool:
        return False


def explicit_game(game: SatGame, max_moves: int = 10) -> nx.MultiDiGraph:
    """
    Materialize a satisfiability game as an explicit parity game.

    The game is expanded completely first. One-step states become existential
    nodes choosing a one-step satisfiable set of their modal moves, followed by a
    universal choice of one move from that set. Tableau states become universal
    nodes choosing a rule application, followed by an existential choice of a
    clause. Edges into these intermediate nodes have the lowest priority 0.

    Raises:
        ValueError: If a one-step state has more than `max_moves` moves.
    """
    while game.frontier:
        game.expand(game.frontier.popleft())

    explicit = nx.MultiDiGraph()
    for node in game:
        universal = node.consistent and node.role is Role.STATE and game.engine is Engine.TABLEAU
        explicit.add_node(node.ident, owner=FORALL if universal else EXISTS)

    for node in game:
        if not node.consistent:
            continue
        if node.role is Role.CORE:
            for move in node.moves:
                explicit.add_edge(node.ident, move.target, priority=move.priority)
        elif game.engine is Engine.TABLEAU:
            for index, application in enumerate(node.applications):
                choice = ("application", node.ident, index)
                explicit.add_node(choice, owner=EXISTS)
                explicit.add_edge(node.ident, choice, priority=0)
                for i in application:
                    explicit.add_edge(choice, node.moves[i].target, priority=node.moves[i].priority)
        else:
            if len(node.moves) > max_moves:
                raise ValueError(f"State {node.ident} has {len(node.moves)} moves, more than {max_moves}")
            gamma = [(game.closure.op(n), n) for n in node.label if game.closure.is_modal(n)]
            subsets = chain.from_iterable(combinations(node.moves, k) for k in range(len(node.moves) + 1))
            for index, chosen in enumerate(subsets):
                if not one_step_sat(OneStepPair.of(gamma, [m.kappa for m in chosen]), game.logic, game.agents):
                    continue
                choice = ("structure", node.ident, index)
                explicit.add_node(choice, owner=FORALL)
                explicit.add_edge(node.ident, choice, priority=0)
                for move in chosen:
                    explicit.add_edge(choice, move.target, priority=move.priority)
    return explicit


def random_game(rng: random.Random, size: int, priorities: int, max_out: int = 3) -> nx.MultiDiGraph:
    """A random game over nodes 0..size-1 with edge priorities in 1..priorities; some nodes may be dead ends."""
    game = nx.MultiDiGraph()
    for node in range(size):
        game.add_node(node, owner=rng.choice((EXISTS, FORALL)))
    for node in range(size):
        for _ in range(rng.randint(0, max_out)):
            game.add_edge(node, rng.randrange(size), priority=rng.randint(1, priorities))
    return game
