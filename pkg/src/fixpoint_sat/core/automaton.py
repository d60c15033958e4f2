"""
Nondeterministic parity automaton tracing formula evaluations over the closure.

States are closure nodes. Letters name the propositional manipulation they
perform on one specific node (choosing a disjunct, splitting a conjunction,
unfolding a fixpoint) or a modal step that keeps the arguments of a chosen set
of modal nodes. A run accepts when the largest priority seen infinitely often
is even, which happens exactly when the outermost fixpoint unfolded infinitely
often along the trace is a least fixpoint.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import chain, combinations

from .closure import ClosureIndex, NodeKind


@dataclass(frozen=True, slots=True)
class Choose:
    node: int
    branch: int

    def __post_init__(self) -> None:
        if self.branch not in (1, 2):
            raise ValueError(f"Branch must be 1 or 2, got {self.branch}")


@dataclass(frozen=True, slots=True)
class Split:
    node: int


@dataclass(frozen=True, slots=True)
class Unfold:
    node: int


@dataclass(frozen=True, slots=True)
class ModalStep:
    """Modal letter κ: the set of modal nodes whose arguments survive the step."""
    kappa: frozenset[int]


Letter = Choose | Split | Unfold | ModalStep
PropositionalLetter = Choose | Split | Unfold


def letter_text(letter: Letter) -> str:
    match letter:
        case Choose(node, branch):
            return f"choose({node},{branch})"
        case Split(node):
            return f"split({node})"
        case Unfold(node):
            return f"unfold({node})"
        case ModalStep(kappa):
            return "modal{" + ",".join(str(node) for node in sorted(kappa)) + "}"
    raise TypeError(f"Not a letter: {letter!r}")


class TrackingAutomaton:
    """
    The tracking automaton of a closure.

    Propositional letters act as the identity on every node other than the one
    they address; a modal letter maps each of its modal nodes to the argument
    and every other node to the empty set.
    """

    def __init__(self, closure: ClosureIndex) -> None:
        self.closure = closure

    @property
    def initial(self) -> int:
        return self.closure.root

    def priority(self, node: int) -> int:
        return self.closure.priorities[node]

    def delta(self, node: int, letter: Letter) -> frozenset[int]:
        kind = self.closure.kind(node)
        succs = self.closure.successors[node]
        match letter:
            case ModalStep(kappa):
                if node in kappa and kind is NodeKind.MODAL:
                    return frozenset(succs)
                return frozenset()
            case Choose(target, branch) if target == node and kind is NodeKind.OR:
                # equal disjuncts share one successor
                return frozenset({succs[min(branch, len(succs)) - 1]})
            case Split(target) if target == node and kind is NodeKind.AND:
                return frozenset(succs)
            case Unfold(target) if target == node and kind in (NodeKind.MU, NodeKind.NU):
                return frozenset(succs)
        return frozenset({node})

    def delta_set(self, nodes: Iterable[int], letter: Letter) -> frozenset[int]:
        result: set[int] = set()
        for node in nodes:
            result |= self.delta(node, letter)
        return frozenset(result)

    def propositional_letters(self, label: Iterable[int]) -> list[PropositionalLetter]:
        """Letters that change some member of `label`, in node order."""
        letters: list[PropositionalLetter] = []
        for node in sorted(label):
            kind = self.closure.kind(node)
            if kind is NodeKind.OR:
                letters.extend((Choose(node, 1), Choose(node, 2)))
            elif kind is NodeKind.AND:
                letters.append(Split(node))
            elif kind in (NodeKind.MU, NodeKind.NU):
                letters.append(Unfold(node))
        return letters

    def modal_letters(self, label: Iterable[int]) -> Iterator[ModalStep]:
        """Every modal letter κ ⊆ modal part of `label`, smallest sets first."""
        modal = sorted(node for node in label if self.closure.is_modal(node))
        subsets = chain.from_iterable(combinations(modal, size) for size in range(len(modal) + 1))
        for subset in subsets:
            yield ModalStep(frozenset(subset))
