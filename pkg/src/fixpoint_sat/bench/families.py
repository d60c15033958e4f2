"""
Graded benchmark families with known satisfiability status.

The automaton and game families state valid implications; the generators emit
their negations, which the solver must report unsatisfiable.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum

from ..core.formula import (
    And,
    Formula,
    Modal,
    Or,
    Prop,
    Var,
    all_but,
    conj,
    disj,
    more_than,
    mu,
    negate,
    nu,
)
from ..core.logics import Logic
from ..core.parser import agent_count, normalize
from ..core.printer import to_text

OneStep = Callable[[Formula], Formula]


class Status(Enum):
    SAT = "Sat"
    UNSAT = "Unsat"
    UNKNOWN = "Unknown"


class RabinVariant(Enum):
    TO_BUECHI = "rabinToBuechi"
    TO_RPAIR = "rabinToRPair"
    GAME = "rabinGame"


@dataclass(frozen=True)
class BenchCase:
    family: str
    params: tuple[int, ...]
    formula: Formula
    logic: Logic
    expected: Status
    agents: int = 1

    @property
    def name(self) -> str:
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    @property
    def text(self) -> str:
        return to_text(self.formula)


def make_case(
    family: str,
    params: Sequence[int],
    formula: Formula,
    logic: Logic,
    expected: Status,
) -> BenchCase:
    """Normalize `formula` for `logic` and wrap it as a benchmark case."""
    formula = normalize(formula, logic)
    agents = agent_count(formula) if logic is Logic.AMC else 1
    return BenchCase(family, tuple(params), formula, logic, expected, agents)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def p(name: str) -> Prop:
    return Prop(name)


def np(name: str) -> Prop:
    return Prop(name, positive=False)


def diamond(grade: int) -> OneStep:
    """The one-step property `<grade> X`: more than `grade` successors satisfy X."""
    return lambda target: Modal(more_than(grade), target)


def cardinality(n: int) -> BenchCase:
    """At least 2n successors with q and !q each holding in at most n of them."""
    _require(n >= 1, "cardinality needs n >= 1")
    f = conj(
        Modal(more_than(n - 1), np("p")),
        Modal(more_than(n - 1), p("p")),
        Modal(all_but(n), np("q")),
        Modal(all_but(n), p("q")),
    )
    return make_case("cardinality", (n,), f, Logic.GRADED, Status.SAT)


def cardinality_u(n: int) -> BenchCase:
    _require(n >= 1, "cardinalityU needs n >= 1")
    f = conj(
        Modal(more_than(n - 1), np("p")),
        Modal(more_than(n - 1), p("p")),
        Modal(all_but(n), np("q")),
        Modal(all_but(n - 1), p("q")),
    )
    return make_case("cardinalityU", (n,), f, Logic.GRADED, Status.UNSAT)


def tree_u(n: int) -> BenchCase:
    """An (n+1)-branching p-tree that also contains a state with n+2 p-successors."""
    _require(n >= 1, "treeU needs n >= 1")
    tree = nu("X", And(Modal(more_than(n), And(p("p"), Var("X"))), Modal(all_but(n + 1), np("p"))))
    wide = mu("Y", Or(Modal(more_than(n + 1), p("p")), Modal(more_than(n), And(p("p"), Var("Y")))))
    return make_case("treeU", (n,), And(tree, wide), Logic.GRADED, Status.UNSAT)


def parity(n: int, k: int) -> Formula:
    """Every path of an (n+1)-branching tree satisfies the parity condition on p1..pk."""
    body = disj(*(And(p(f"p{i}"), Modal(more_than(n), Var(f"X{i}"))) for i in range(1, k + 1)))
    for i in range(1, k + 1):
        body = mu(f"X{i}", body) if i % 2 == 1 else nu(f"X{i}", body)
    return body


def buechi(n: int, k: int) -> Formula:
    """Eventually every path settles on an even priority that recurs while larger ones stay away."""
    guesses = []
    for i in range(2, k + 1, 2):
        larger = conj(*(np(f"p{j}") for j in range(i + 1, k + 1)))
        step = Or(And(p(f"p{i}"), Modal(more_than(n), Var(f"Y{i}"))), Modal(more_than(n), Var(f"Z{i}")))
        guesses.append(nu(f"Y{i}", mu(f"Z{i}", And(larger, step))))
    return mu("X", disj(Modal(more_than(n), Var("X")), *guesses))


def parity_to_buechi(n: int, k: int) -> BenchCase:
    _require(n >= 1 and k >= 1, "parityToBuechi needs n >= 1 and k >= 1")
    f = And(parity(n, k), negate(buechi(n, k)))
    return make_case("parityToBuechi", (n, k), f, Logic.GRADED, Status.UNSAT)


def _var(prefix: Sequence[int], c: int) -> Var:
    return Var("X" + "_".join(str(j) for j in prefix) + f"_{c}")


def rabin(k: int, psi: OneStep) -> Formula:
    """
    Rabin acceptance with pairs (i_j, f_j), j = 1..k, over the one-step property `psi`.

    Alternating greatest/least fixpoints are nested along every partial
    permutation of the pairs; at the bottom the permutation is complete and each
    prefix selects the pair whose infinite set is being waited for.
    """
    outer = Var(f"X{2 * k + 1}")

    def layer(c: int, perm: tuple[int, ...]) -> Formula:
        if c == 0:
            return bottom(perm)
        branches = []
        for j in range(1, k + 1):
            if j in perm:
                continue
            extended = (*perm, j)
            inner = layer(c - 2, extended)
            branches.append(nu(_var(extended, c).name, mu(_var(extended, c - 1).name, inner)))
        return disj(*branches)

    def bottom(perm: tuple[int, ...]) -> Formula:
        parts: list[Formula] = [And(conj(*(p(f"f{j}") for j in range(1, k + 1))), psi(outer))]
        for j in range(1, k + 1):
            finite = conj(*(np(f"f{perm[i]}") for i in range(j)))
            seen = p(f"i{perm[j - 1]}")
            prefix = perm[:j]
            parts.append(Or(
                conj(finite, seen, psi(_var(prefix, 2 * (k - j) + 2))),
                conj(finite, negate(seen), psi(_var(prefix, 2 * (k - j) + 1))),
            ))
        return disj(*parts)

    return mu(outer.name, layer(2 * k, ()))


def buechi_condition(f: Formula, psi: OneStep) -> Formula:
    """Paths visit `f` infinitely often."""
    return nu("X", mu("Y", Or(And(f, psi(Var("X"))), And(negate(f), psi(Var("Y"))))))


def co_buechi_condition(f: Formula, psi: OneStep) -> Formula:
    """Paths visit `f` only finitely often; with `psi` the dual one-step property this negates `buechi_condition`."""
    return mu("X", nu("Y", And(Or(negate(f), psi(Var("X"))), Or(f, psi(Var("Y"))))))


def rabin_pair(i: Formula, f: Formula, psi: OneStep) -> Formula:
    """Paths visit `i` infinitely often and `f` only finitely often."""
    nf = negate(f)
    return mu("X", nu("Y", mu("Z", disj(
        And(f, psi(Var("X"))),
        conj(nf, i, psi(Var("Y"))),
        conj(nf, negate(i), psi(Var("Z"))),
    ))))


def globally(f: Formula) -> Formula:
    """`f` holds in every reachable state."""
    return nu("T", And(f, Modal(all_but(0), Var("T"))))


def ownership() -> Formula:
    """Every node belongs to exactly one of the two players."""
    return globally(Or(And(p("ve"), np("va")), And(np("ve"), p("va"))))


def cpre(n: int) -> OneStep:
    """The existential player can force the next position with n-fold redundancy."""
    return lambda target: Or(
        And(p("ve"), Modal(more_than(n), target)),
        And(p("va"), Modal(all_but(n), target)),
    )


def cpre_refuted(n: int) -> OneStep:
    """The universal player can force the next position; the dual of `cpre` where ownership holds."""
    return lambda target: Or(
        And(p("ve"), Modal(all_but(n), target)),
        And(p("va"), Modal(more_than(n), target)),
    )


def rabin_families(k: int, n: int, which: RabinVariant) -> BenchCase:
    """Negation of the Rabin-to-Buechi, Rabin-to-pair or Rabin game implication."""
    _require(k >= 1 and n >= 1, f"{which.value} needs k >= 1 and n >= 1")
    infinite = disj(*(p(f"i{j}") for j in range(1, k + 1)))
    if which is RabinVariant.TO_BUECHI:
        f = And(rabin(k, diamond(n)), negate(buechi_condition(infinite, diamond(0))))
    elif which is RabinVariant.TO_RPAIR:
        pairs = disj(*(rabin_pair(p(f"i{j}"), p(f"f{j}"), diamond(0)) for j in range(1, k + 1)))
        f = And(rabin(k, diamond(n)), negate(pairs))
    else:
        game = And(ownership(), rabin(k, cpre(n)))
        f = And(game, co_buechi_condition(infinite, cpre_refuted(n)))
    return make_case(which.value, (k, n), f, Logic.GRADED, Status.UNSAT)


def rabin_to_buechi(k: int, n: int) -> BenchCase:
    return rabin_families(k, n, RabinVariant.TO_BUECHI)


def rabin_to_rpair(k: int, n: int) -> BenchCase:
    return rabin_families(k, n, RabinVariant.TO_RPAIR)


def rabin_game(k: int, n: int) -> BenchCase:
    return rabin_families(k, n, RabinVariant.GAME)
