"""
Alternating-time benchmarks.

ATL path quantifiers are expanded into fixpoints over the coalition modalities
at generation time:

    <<D>> X f    = <D> f
    <<D>> G f    = nu X. (f & <D> X)
    <<D>> F f    = mu X. (f | <D> X)
    <<D>> f U g  = mu X. (g | (f & <D> X))

Eventualities include the present state.
"""

from __future__ import annotations

from collections.abc import Callable

from ..core.formula import And, Formula, Modal, Or, Prop, Var, conj, enforce, implies, mu, negate, nu
from ..core.logics import Logic
from .families import BenchCase, Status, make_case


def next_(coalition: tuple[int, ...], f: Formula) -> Formula:
    return Modal(enforce(*coalition), f)


def always(coalition: tuple[int, ...], f: Formula) -> Formula:
    return nu("G", And(f, Modal(enforce(*coalition), Var("G"))))


def eventually(coalition: tuple[int, ...], f: Formula) -> Formula:
    return mu("F", Or(f, Modal(enforce(*coalition), Var("F"))))


def until(coalition: tuple[int, ...], f: Formula, g: Formula) -> Formula:
    return mu("U", Or(g, And(f, Modal(enforce(*coalition), Var("U")))))


p, q, r = Prop("p"), Prop("q"), Prop("r")
neg = negate
X, F, G, U = next_, eventually, always, until


def nest_chi(n: int) -> Formula:
    chi: Formula = p
    for _ in range(n):
        chi = neg(F((2,), G((1,), chi)))
    return chi


def atl_nest(n: int) -> BenchCase:
    """`<<1>>G p` together with n alternations of `!<<2>>F <<1>>G`; satisfiable exactly for even n."""
    if n < 0:
        raise ValueError("nest needs n >= 0")
    expected = Status.SAT if n % 2 == 0 else Status.UNSAT
    return make_case("nest", (n,), And(G((1,), p), nest_chi(n)), Logic.AMC, expected)


def atl_nested_u(n: int) -> BenchCase:
    """Negated untils nested n deep, alternating between agents 1 and 2."""
    if n < 0:
        raise ValueError("nestedU needs n >= 0")
    psi = neg(U((2,), q, r))
    for i in range(n):
        psi = neg(U(((i % 2) + 1,), Prop(f"p{i % 2}"), psi))
    return make_case("nestedU", (n,), psi, Logic.AMC, Status.UNKNOWN)


SUITE: tuple[Callable[[], Formula], ...] = (
    lambda: p,
    lambda: And(p, q),
    lambda: Or(p, q),
    lambda: implies(p, q),
    lambda: X((1,), p),
    lambda: F((1,), p),
    lambda: G((1,), p),
    lambda: U((1,), p, q),
    lambda: neg(U((1,), p, q)),
    lambda: neg(F((1,), p)),
    lambda: And(U((1, 2), p, q), X((1, 2), r)),
    lambda: And(U((1, 2), p, q), X((3, 4), r)),
    lambda: And(U((1, 2), p, q), X((2, 3), r)),
    lambda: And(U((2, 1), p, q), X((3, 2), r)),
    lambda: And(U((), p, q), X((1, 2), r)),
    lambda: And(neg(X((1, 2), p)), G((1,), p)),
    lambda: And(neg(X((1, 2), p)), G((1, 2, 3), p)),
    lambda: Or(neg(p), F((1,), p)),
    lambda: And(p, neg(p)),
    lambda: And(And(p, q), G((1,), neg(And(p, q)))),
    lambda: And(G((1,), p), neg(F((2,), G((1,), p)))),
    lambda: And(X((1,), p), neg(X((1,), p))),
    lambda: Or(U((1,), p, q), neg(G((1,), q))),
    lambda: U((1, 2), p, neg(G((1,), p))),
    lambda: U((1,), neg(G((1, 2), p)), q),
    lambda: G((), U((), p, q)),
    lambda: conj(neg(G((1,), p)), X((1, 2), p), neg(X((2,), neg(p)))),
    lambda: conj(X((1,), p), X((2,), q), X((1, 2), r), neg(X((1,), r)), neg(X((3,), q))),
    lambda: conj(neg(X((1,), r)), neg(X((3,), q)), X((1,), p), X((2,), q), X((1, 2), r)),
    lambda: conj(neg(X((1,), r)), X((1,), p), X((2,), q), neg(X((3,), q)), X((1, 2), r)),
    lambda: G((1, 2, 3), G((2, 3, 4), And(p, q))),
    lambda: And(G((1, 2, 3), G((2, 3), And(p, q))), X((4,), neg(p))),
    lambda: neg(neg(U((1,), p, q))),
    lambda: neg(Or(G((1,), p), G((1,), neg(p)))),
    lambda: neg(And(G((1,), p), G((1,), neg(p)))),
    lambda: neg(U((1,), p, neg(U((2,), q, r)))),
    lambda: And(G((1,), neg(q)), U((2,), p, q)),
    lambda: And(G((1,), p), neg(G((1, 2), p))),
    lambda: And(neg(X((1,), p)), X((2,), neg(p))),
    lambda: And(X((1,), p), X((2,), neg(p))),
    lambda: conj(U((1,), p, q), U((2,), q, r), G((2,), neg(r))),
    lambda: conj(U((1,), p, q), U((2,), q, r), G((1,), neg(r))),
)


def atl_case(index: int) -> BenchCase:
    """Suite formula number `index` (1-based), posed over as many agents as it mentions."""
    if not 1 <= index <= len(SUITE):
        raise ValueError(f"ATL suite index must be in 1..{len(SUITE)}, got {index}")
    return make_case("atl", (index,), SUITE[index - 1](), Logic.AMC, Status.UNKNOWN)


def atl_suite() -> list[BenchCase]:
    return [atl_case(index) for index in range(1, len(SUITE) + 1)]
