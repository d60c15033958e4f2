"""
Fischer-Ladner closure of a clean formula as an indexed decomposition graph.

Nodes are the non-variable subterms of the formula; a variable occurrence is
identified with its binding fixpoint, which realizes fixpoint unfolding. Equal
subterms share one node (hash-consing), and node ids are dense integers with
the root at id 0.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

from .formula import (
    And,
    Bottom,
    FixKind,
    Fixpoint,
    Formula,
    Modal,
    ModalOp,
    Or,
    Prop,
    Top,
    Var,
    active_vars,
    binders,
    fixpoint_levels,
)


class NodeKind(Enum):
    BOTTOM = "bottom"
    TOP = "top"
    PROP = "prop"
    AND = "and"
    OR = "or"
    MODAL = "modal"
    MU = "mu"
    NU = "nu"


class SaturationClass(Enum):
    MODALISED = "modalised"
    TOP = "top"
    OTHER = "other"


@dataclass(frozen=True)
class ClosureIndex:
    """
    Indexed closure of a clean NNF formula.

    Attributes:
        formulas: Closure formulas by node id (id 0 is the root).
        kinds: Node kind by id.
        successors: Decomposition successors by id (conjuncts, disjuncts,
            modal argument, fixpoint unfolding).
        priorities: Tracking automaton priority by id.
        levels: Alternation level of fixpoint nodes, 0 for other nodes.
        mu_regions: For every least-fixpoint variable (keyed by its binder node),
            the nodes where that variable is active, plus the binder itself.
        order: Topological position of each node along propositional edges,
            parents first.
        depth: Alternation depth k of the root formula.
    """
    formulas: tuple[Formula, ...]
    kinds: tuple[NodeKind, ...]
    successors: tuple[tuple[int, ...], ...]
    priorities: tuple[int, ...]
    levels: tuple[int, ...]
    mu_regions: dict[int, frozenset[int]]
    order: tuple[int, ...]
    depth: int

    @property
    def root(self) -> int:
        return 0

    @property
    def size(self) -> int:
        return len(self.formulas)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(node, succ) for node, succs in enumerate(self.successors) for succ in succs]

    def id_of(self, f: Formula) -> int:
        return self.formulas.index(f)

    def kind(self, node: int) -> NodeKind:
        return self.kinds[node]

    def is_modal(self, node: int) -> bool:
        return self.kinds[node] is NodeKind.MODAL

    def is_fixpoint(self, node: int) -> bool:
        return self.kinds[node] in (NodeKind.MU, NodeKind.NU)

    def op(self, node: int) -> ModalOp:
        f = self.formulas[node]
        if not isinstance(f, Modal):
            raise ValueError(f"Node {node} is not modal")
        return f.op

    def child(self, node: int) -> int:
        return self.successors[node][0]

    def prop(self, node: int) -> Prop:
        f = self.formulas[node]
        if not isinstance(f, Prop):
            raise ValueError(f"Node {node} is not an atom literal")
        return f

    def saturation_class(self, node: int) -> SaturationClass:
        kind = self.kinds[node]
        if kind in (NodeKind.MODAL, NodeKind.PROP):
            return SaturationClass.MODALISED
        if kind is NodeKind.TOP:
            return SaturationClass.TOP
        return SaturationClass.OTHER

    def is_saturated(self, label: Iterable[int]) -> bool:
        return all(self.saturation_class(node) is not SaturationClass.OTHER for node in label)

    def formulas_of(self, nodes: Iterable[int]) -> list[Formula]:
        return [self.formulas[node] for node in nodes]

    def describe(self, node: int) -> str:
        from .printer import to_text

        return to_text(self.formulas[node])


def _priority(kind: FixKind, level: int) -> int:
    if kind is FixKind.MU:
        return level if level % 2 == 0 else level + 1
    return level if level % 2 == 1 else level + 1


def closure(f: Formula) -> ClosureIndex:
    """
    Build the closure of a closed, clean formula in negation normal form.

    Args:
        f: Root formula.

    Returns:
        The closure index with the root at id 0.
    """
    bound = binders(f)
    ids: dict[Formula, int] = {}
    formulas: list[Formula] = []
    raw_succ: list[list[Formula]] = []

    def resolve(g: Formula) -> Formula:
        return bound[g.name] if isinstance(g, Var) else g

    queue: deque[Formula] = deque([resolve(f)])
    ids[resolve(f)] = 0
    formulas.append(resolve(f))
    while queue:
        g = queue.popleft()
        match g:
            case And(left, right) | Or(left, right):
                succ = [resolve(left), resolve(right)]
            case Modal(_, arg):
                succ = [resolve(arg)]
            case Fixpoint(_, _, body):
                succ = [resolve(body)]
            case _:
                succ = []
        raw_succ.append(succ)
        for s in succ:
            if s not in ids:
                ids[s] = len(formulas)
                formulas.append(s)
                queue.append(s)

    kinds = tuple(_kind(g) for g in formulas)
    successors = tuple(tuple(dict.fromkeys(ids[s] for s in succ)) for succ in raw_succ)

    by_var = fixpoint_levels(f)
    levels = tuple(by_var[g.var] if isinstance(g, Fixpoint) else 0 for g in formulas)
    priorities = tuple(
        _priority(g.kind, levels[i]) if isinstance(g, Fixpoint) else 0
        for i, g in enumerate(formulas)
    )

    mu_regions: dict[int, frozenset[int]] = {}
    for var, binder in bound.items():
        if binder.kind is FixKind.MU:
            binder_id = ids[binder]
            region = {i for i, g in enumerate(formulas) if var in active_vars(g, bound)}
            region.add(binder_id)
            mu_regions[binder_id] = frozenset(region)

    return ClosureIndex(
        formulas=tuple(formulas),
        kinds=kinds,
        successors=successors,
        priorities=priorities,
        levels=levels,
        mu_regions=mu_regions,
        order=_topological(kinds, successors),
        depth=max(by_var.values(), default=0),
    )


def _kind(g: Formula) -> NodeKind:
    match g:
        case Bottom():
            return NodeKind.BOTTOM
        case Top():
            return NodeKind.TOP
        case Prop():
            return NodeKind.PROP
        case And():
            return NodeKind.AND
        case Or():
            return NodeKind.OR
        case Modal():
            return NodeKind.MODAL
        case Fixpoint(kind, _, _):
            return NodeKind.MU if kind is FixKind.MU else NodeKind.NU
    raise TypeError(f"Unexpected closure formula {g!r}")


def _topological(kinds: tuple[NodeKind, ...], successors: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Kahn order over propositional edges; guardedness makes this graph acyclic."""
    propositional = [
        () if kinds[node] is NodeKind.MODAL else succs
        for node, succs in enumerate(successors)
    ]
    indegree = [0] * len(kinds)
    for succs in propositional:
        for s in succs:
            indegree[s] += 1
    ready = deque(node for node, deg in enumerate(indegree) if deg == 0)
    position = [0] * len(kinds)
    placed = 0
    while ready:
        node = ready.popleft()
        position[node] = placed
        placed += 1
        for s in propositional[node]:
            indegree[s] -= 1
            if indegree[s] == 0:
                ready.append(s)
    if placed != len(kinds):
        raise ValueError("Closure has a propositional cycle; the formula is not guarded")
    return tuple(position)
