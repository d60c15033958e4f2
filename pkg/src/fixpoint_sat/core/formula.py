"""
Formula representation for coalgebraic modal fixpoint logics.

Formulas are immutable trees in negation normal form. Negation is pushed to
atoms (`Prop` with `positive=False`), every modal operator has a dual in the
same similarity type, and fixpoint variables are plain names that are bound
by `Fixpoint` nodes. After normalization a formula is closed (no free
variables) and clean (every variable is bound at most once).
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from functools import cache
from itertools import count


class FormulaError(ValueError):
    """Raise when a formula is well-formed text but violates a structural requirement."""


class OpKind(Enum):
    DIAMOND = "diamond"
    BOX = "box"
    MORE_THAN = "more_than"
    ALL_BUT = "all_but"
    ENFORCE = "enforce"
    CANNOT_PREVENT = "cannot_prevent"


_DUAL_KIND = {
    OpKind.DIAMOND: OpKind.BOX,
    OpKind.BOX: OpKind.DIAMOND,
    OpKind.MORE_THAN: OpKind.ALL_BUT,
    OpKind.ALL_BUT: OpKind.MORE_THAN,
    OpKind.ENFORCE: OpKind.CANNOT_PREVENT,
    OpKind.CANNOT_PREVENT: OpKind.ENFORCE,
}

EXISTENTIAL_KINDS = frozenset({OpKind.DIAMOND, OpKind.MORE_THAN, OpKind.ENFORCE})


@dataclass(frozen=True, slots=True)
class ModalOp:
    """
    A unary modal operator.

    `grade` is used by the graded operators (`<n>` means "more than n successors",
    `[n]` means "all but at most n successors"), `coalition` by the coalition
    operators (`<D>` means "D can enforce", `[D]` means "D cannot prevent").
    """
    kind: OpKind
    grade: int = 0
    coalition: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.grade < 0:
            raise FormulaError(f"Negative grade {self.grade}")
        if any(agent < 1 for agent in self.coalition):
            raise FormulaError(f"Agent indices start at 1, got {sorted(self.coalition)}")

    def dual(self) -> ModalOp:
        return ModalOp(_DUAL_KIND[self.kind], self.grade, self.coalition)

    @property
    def existential(self) -> bool:
        return self.kind in EXISTENTIAL_KINDS

    def __str__(self) -> str:
        left, right = ("<", ">") if self.existential else ("[", "]")
        if self.kind in (OpKind.DIAMOND, OpKind.BOX):
            return left + right
        if self.kind in (OpKind.MORE_THAN, OpKind.ALL_BUT):
            return f"{left}{self.grade}{right}"
        return left + "{" + ",".join(str(a) for a in sorted(self.coalition)) + "}" + right


DIAMOND = ModalOp(OpKind.DIAMOND)
BOX = ModalOp(OpKind.BOX)


def more_than(grade: int) -> ModalOp:
    return ModalOp(OpKind.MORE_THAN, grade=grade)


def all_but(grade: int) -> ModalOp:
    return ModalOp(OpKind.ALL_BUT, grade=grade)


def enforce(*agents: int) -> ModalOp:
    return ModalOp(OpKind.ENFORCE, coalition=frozenset(agents))


def cannot_prevent(*agents: int) -> ModalOp:
    return ModalOp(OpKind.CANNOT_PREVENT, coalition=frozenset(agents))


class FixKind(Enum):
    MU = "mu"
    NU = "nu"

    def dual(self) -> FixKind:
        return FixKind.NU if self is FixKind.MU else FixKind.MU


@dataclass(frozen=True, slots=True)
class Bottom:
    pass


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Prop:
    name: str
    positive: bool = True


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Modal:
    op: ModalOp
    arg: Formula


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Fixpoint:
    kind: FixKind
    var: str
    body: Formula


Formula = Bottom | Top | Prop | And | Or | Modal | Var | Fixpoint

TRUE = Top()
FALSE = Bottom()


def mu(var: str, body: Formula) -> Fixpoint:
    return Fixpoint(FixKind.MU, var, body)


def nu(var: str, body: Formula) -> Fixpoint:
    return Fixpoint(FixKind.NU, var, body)


def conj(*parts: Formula) -> Formula:
    """Right-nested conjunction; the empty conjunction is `true`."""
    if not parts:
        return TRUE
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = And(part, result)
    return result


def disj(*parts: Formula) -> Formula:
    """Right-nested disjunction; the empty disjunction is `false`."""
    if not parts:
        return FALSE
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Or(part, result)
    return result


def implies(left: Formula, right: Formula) -> Formula:
    return Or(negate(left), right)


def children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case And(left, right) | Or(left, right):
            return (left, right)
        case Modal(_, arg):
            return (arg,)
        case Fixpoint(_, _, body):
            return (body,)
        case _:
            return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Yield every syntactic subterm of `f` in pre-order, without unfolding fixpoints."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def negate(f: Formula) -> Formula:
    """
    Return the negation of `f` in negation normal form.

    Variables are kept as they are, which realizes the substitution of `!X`
    for `X` under a negated binder. The operation is an exact involution.
    """
    match f:
        case Bottom():
            return TRUE
        case Top():
            return FALSE
        case Prop(name, positive):
            return Prop(name, not positive)
        case And(left, right):
            return Or(negate(left), negate(right))
        case Or(left, right):
            return And(negate(left), negate(right))
        case Modal(op, arg):
            return Modal(op.dual(), negate(arg))
        case Var():
            return f
        case Fixpoint(kind, var, body):
            return Fixpoint(kind.dual(), var, negate(body))
    raise TypeError(f"Not a formula: {f!r}")


@cache
def free_vars(f: Formula) -> frozenset[str]:
    match f:
        case Var(name):
            return frozenset({name})
        case Fixpoint(_, var, body):
            return free_vars(body) - {var}
        case _:
            result: frozenset[str] = frozenset()
            for child in children(f):
                result |= free_vars(child)
            return result


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def is_clean(f: Formula) -> bool:
    seen: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Fixpoint):
            if g.var in seen:
                return False
            seen.add(g.var)
    return True


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Prop))


def modal_ops(f: Formula) -> frozenset[ModalOp]:
    return frozenset(g.op for g in subformulas(f) if isinstance(g, Modal))


def max_agent(f: Formula) -> int:
    """Largest agent index mentioned by a coalition operator of `f`, 0 if none."""
    return max((max(op.coalition, default=0) for op in modal_ops(f)), default=0)


def clean(f: Formula) -> Formula:
    """
    Rename bound variables so that every variable is bound at most once.

    The first binder of a name keeps it; later binders of the same name get a
    primed variant that does not clash with any name in the formula.
    """
    used = {g.var for g in subformulas(f) if isinstance(g, Fixpoint)} | free_vars(f)
    bound: set[str] = set()
    fresh_ids = count(1)

    def fresh(name: str) -> str:
        while True:
            candidate = f"{name}_{next(fresh_ids)}"
            if candidate not in used:
                used.add(candidate)
                return candidate

    def walk(g: Formula, env: dict[str, str]) -> Formula:
        match g:
            case Var(name):
                return Var(env.get(name, name))
            case Fixpoint(kind, var, body):
                new_name = var if var not in bound else fresh(var)
                bound.add(new_name)
                return Fixpoint(kind, new_name, walk(body, {**env, var: new_name}))
            case And(left, right):
                return And(walk(left, env), walk(right, env))
            case Or(left, right):
                return Or(walk(left, env), walk(right, env))
            case Modal(op, arg):
                return Modal(op, walk(arg, env))
            case _:
                return g

    return walk(f, {})


def substitute(f: Formula, var: str, by: Formula) -> Formula:
    """Replace the free occurrences of `var` in the clean formula `f` by `by`."""
    if var not in free_vars(f):
        return f
    match f:
        case Var():
            return by
        case And(left, right):
            return And(substitute(left, var, by), substitute(right, var, by))
        case Or(left, right):
            return Or(substitute(left, var, by), substitute(right, var, by))
        case Modal(op, arg):
            return Modal(op, substitute(arg, var, by))
        case Fixpoint(kind, bound, body):
            return Fixpoint(kind, bound, substitute(body, var, by))
    return f


def unguarded_vars(f: Formula) -> frozenset[str]:
    """Free variables of `f` with an occurrence that is not under a modal operator."""
    match f:
        case Var(name):
            return frozenset({name})
        case Modal():
            return frozenset()
        case Fixpoint(_, var, body):
            return unguarded_vars(body) - {var}
        case _:
            result: frozenset[str] = frozenset()
            for child in children(f):
                result |= unguarded_vars(child)
            return result


def is_guarded(f: Formula) -> bool:
    """True iff every variable occurrence lies under a modal operator inside the body of its binder."""
    return all(g.var not in unguarded_vars(g.body) for g in subformulas(f) if isinstance(g, Fixpoint))


def _and(left: Formula, right: Formula) -> Formula:
    if left == FALSE or right == FALSE:
        return FALSE
    if left == TRUE:
        return right
    return left if right == TRUE else And(left, right)


def _or(left: Formula, right: Formula) -> Formula:
    if left == TRUE or right == TRUE:
        return TRUE
    if left == FALSE:
        return right
    return left if right == FALSE else Or(left, right)


def guard(f: Formula) -> Formula:
    """
    Rewrite a clean formula into an equivalent guarded one.

    Binders are processed innermost first. Inside `ηX.ψ`, every fixpoint `ηY.φ`
    of `ψ` with an unguarded `X` is replaced by its unfolding `φ[ηY.φ/Y]`; the
    remaining unguarded occurrences of `X` become `false` under `μ` and `true`
    under `ν`. Binders left without occurrences are dropped. Unfolding copies
    binders, so the result is cleaned again.
    """
    def release(g: Formula, var: str, unit: Formula) -> Formula:
        if var not in unguarded_vars(g):
            return g
        match g:
            case Var():
                return unit
            case And(left, right):
                return _and(release(left, var, unit), release(right, var, unit))
            case Or(left, right):
                return _or(release(left, var, unit), release(right, var, unit))
            case Fixpoint(_, inner, body):
                return release(substitute(body, inner, g), var, unit)
        return g

    def walk(g: Formula) -> Formula:
        match g:
            case And(left, right):
                return _and(walk(left), walk(right))
            case Or(left, right):
                return _or(walk(left), walk(right))
            case Modal(op, arg):
                return Modal(op, walk(arg))
            case Fixpoint(kind, var, body):
                unit = FALSE if kind is FixKind.MU else TRUE
                body = release(walk(body), var, unit)
                return Fixpoint(kind, var, body) if var in free_vars(body) else body
        return g

    if is_guarded(f):
        return f
    return clean(walk(f))


def binders(f: Formula) -> dict[str, Fixpoint]:
    """Map each bound variable of a clean formula to its binding fixpoint."""
    return {g.var: g for g in subformulas(f) if isinstance(g, Fixpoint)}


def active_vars(g: Formula, bound: dict[str, Fixpoint]) -> frozenset[str]:
    """
    Variables active in `g`: the free variables of `g`, closed under the free
    variables of their binders in `bound`.

    These are exactly the variables that become free at some stage of
    repeatedly replacing free variables of `g` by their binding fixpoints.
    """
    result = set(free_vars(g))
    pending = list(result)
    while pending:
        binder = bound.get(pending.pop())
        if binder is None:
            continue
        for outer in free_vars(binder):
            if outer not in result:
                result.add(outer)
                pending.append(outer)
    return frozenset(result)


def alternation_depth(f: Formula) -> int:
    """Maximal depth of dependent alternating fixpoint nestings, 0 for fixpoint-free formulas."""
    return max(fixpoint_levels(f).values(), default=0)


def fixpoint_levels(f: Formula) -> dict[str, int]:
    """
    Alternation level of every bound variable of a clean formula.

    A fixpoint `ηX.ψ` has level one more than the deepest fixpoint of opposite
    kind nested in `ψ` in which `X` is active, and level 1 when there is none.
    """
    bound = binders(f)
    depth: dict[str, int] = {}

    def level(fix: Fixpoint) -> int:
        if fix.var in depth:
            return depth[fix.var]
        best = 1
        for g in subformulas(fix.body):
            if isinstance(g, Fixpoint) and g.kind is not fix.kind and fix.var in active_vars(g, bound):
                best = max(best, 1 + level(g))
        depth[fix.var] = best
        return best

    return {var: level(fix) for var, fix in bound.items()}


def _mu_vars(f: Formula) -> frozenset[str]:
    return frozenset(g.var for g in subformulas(f) if isinstance(g, Fixpoint) and g.kind is FixKind.MU)


def is_aconjunctive(f: Formula) -> bool:
    """True iff no conjunction has a free least-fixpoint variable in both conjuncts."""
    least = _mu_vars(f)
    for g in subformulas(f):
        if isinstance(g, And):
            holders = sum(1 for part in (g.left, g.right) if free_vars(part) & least)
            if holders > 1:
                return False
    return True
