"""
Text front end for formulas.

Grammar, from weakest to strongest binding:

    formula   := disj | disj "->" formula
    disj      := conj | disj "|" conj
    conj      := unary | conj "&" unary
    unary     := "!" unary | MODAL unary | ("mu" | "nu") NAME "." formula
               | "true" | "false" | NAME | "(" formula ")"

MODAL is one of `<>`, `[]`, `<n>`, `[n]`, `<{1,2}>`, `[{1,2}]`. A fixpoint body
extends as far to the right as possible. Identifiers bound by `mu`/`nu` are
variables; unbound identifiers starting with a lower-case letter are atoms and
unbound capitalized identifiers are reported as unbound variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

import lark as L

from .formula import (
    FALSE,
    TRUE,
    And,
    FixKind,
    Fixpoint,
    Formula,
    FormulaError,
    Modal,
    ModalOp,
    OpKind,
    Or,
    Prop,
    Var,
    all_but,
    clean,
    free_vars,
    guard,
    is_closed,
    max_agent,
    more_than,
    negate,
)
from .logics import Logic

GRAMMAR = r"""
?start: formula

?formula: disj
        | disj "->" formula             -> implies

?disj: conj
     | disj "|" conj                    -> or_

?conj: unary
     | conj "&" unary                   -> and_

?unary: "!" unary                       -> not_
      | MODAL unary                     -> modal
      | "mu" NAME "." formula           -> mu
      | "nu" NAME "." formula           -> nu
      | "true"                          -> true
      | "false"                         -> false
      | NAME                            -> name
      | "(" formula ")"

MODAL: /<>|\[\]|<\d+>|\[\d+\]|<\{[\d\s,]*\}>|\[\{[\d\s,]*\}\]/
NAME: /[A-Za-z_][A-Za-z0-9_']*/

%import common.WS
%ignore WS
"""


class FormulaSyntaxError(FormulaError):
    """Raise when the input text does not match the formula grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


@dataclass(frozen=True, slots=True)
class _Not:
    operand: Any


@dataclass(frozen=True, slots=True)
class _Implies:
    left: Any
    right: Any


@dataclass(frozen=True, slots=True)
class _Name:
    name: str


_COALITION = re.compile(r"[<\[]\{([\d\s,]*)\}[>\]]")
_GRADE = re.compile(r"[<\[](\d+)[>\]]")


def _modal_op(token: str) -> ModalOp:
    existential = token.startswith("<")
    if token in ("<>", "[]"):
        return ModalOp(OpKind.DIAMOND if existential else OpKind.BOX)
    if match := _COALITION.fullmatch(token):
        agents = frozenset(int(part) for part in match.group(1).replace(" ", "").split(",") if part)
        return ModalOp(OpKind.ENFORCE if existential else OpKind.CANNOT_PREVENT, coalition=agents)
    match = _GRADE.fullmatch(token)
    if match is None:
        raise FormulaSyntaxError(f"Malformed modal operator '{token}'")
    grade = int(match.group(1))
    return more_than(grade) if existential else all_but(grade)


@L.v_args(inline=True)
class _TreeBuilder(L.Transformer[Any, Any]):
    def implies(self, left: Any, right: Any) -> Any:
        return _Implies(left, right)

    def or_(self, left: Any, right: Any) -> Any:
        return Or(left, right)

    def and_(self, left: Any, right: Any) -> Any:
        return And(left, right)

    def not_(self, operand: Any) -> Any:
        return _Not(operand)

    def modal(self, token: L.Token, operand: Any) -> Any:
        return Modal(_modal_op(str(token)), operand)

    def mu(self, name: L.Token, body: Any) -> Any:
        return Fixpoint(FixKind.MU, str(name), body)

    def nu(self, name: L.Token, body: Any) -> Any:
        return Fixpoint(FixKind.NU, str(name), body)

    def true(self) -> Any:
        return TRUE

    def false(self) -> Any:
        return FALSE

    def name(self, token: L.Token) -> Any:
        return _Name(str(token))


_PARSER = L.Lark(GRAMMAR, parser="lalr", maybe_placeholders=False)


def _resolve(raw: Any, bound: frozenset[str]) -> Formula:
    """Turn the raw tree into NNF, classifying names and eliminating `!` and `->`."""
    match raw:
        case _Name(name):
            if name in bound:
                return Var(name)
            if name[0].isupper():
                raise FormulaError(f"Unbound variable {name}")
            return Prop(name)
        case _Not(operand):
            inner = _resolve(operand, bound)
            if _mentions_bound_var(inner, bound):
                raise FormulaError("Negation may not be applied to a formula with free fixpoint variables")
            return negate(inner)
        case _Implies(left, right):
            lhs = _resolve(left, bound)
            if _mentions_bound_var(lhs, bound):
                raise FormulaError("The premise of an implication may not contain free fixpoint variables")
            return Or(negate(lhs), _resolve(right, bound))
        case And(left, right):
            return And(_resolve(left, bound), _resolve(right, bound))
        case Or(left, right):
            return Or(_resolve(left, bound), _resolve(right, bound))
        case Modal(op, arg):
            return Modal(op, _resolve(arg, bound))
        case Fixpoint(kind, var, body):
            return Fixpoint(kind, var, _resolve(body, bound | {var}))
        case _:
            return raw  # type: ignore[no-any-return]


def _mentions_bound_var(f: Formula, bound: frozenset[str]) -> bool:
    return bool(free_vars(f) & bound)


def _adapt_ops(f: Formula, logic: Logic) -> Formula:
    """Check that every operator belongs to `logic`, reading `<>`/`[]` as `<0>`/`[0]` for graded input."""
    match f:
        case Modal(op, arg):
            if logic is Logic.GRADED and op.kind in (OpKind.DIAMOND, OpKind.BOX):
                op = more_than(0) if op.existential else all_but(0)
            if op.kind not in logic.op_kinds:
                raise FormulaError(f"Operator {op} is not part of the {logic.value} logic")
            return Modal(op, _adapt_ops(arg, logic))
        case And(left, right):
            return And(_adapt_ops(left, logic), _adapt_ops(right, logic))
        case Or(left, right):
            return Or(_adapt_ops(left, logic), _adapt_ops(right, logic))
        case Fixpoint(kind, var, body):
            return Fixpoint(kind, var, _adapt_ops(body, logic))
        case _:
            return f


def normalize(f: Formula, logic: Logic | str, agents: int | None = None) -> Formula:
    """
    Validate and clean a formula built in code.

    Checks the operators against `logic`, closedness and agent indices, then
    renames binders so the result is clean and rewrites unguarded variable
    occurrences (see `guard`).

    Raises:
        FormulaError: On any violated requirement.
    """
    logic = Logic.from_id(logic)
    f = _adapt_ops(f, logic)
    if not is_closed(f):
        raise FormulaError(f"Unbound variable {sorted(free_vars(f))[0]}")
    if logic is Logic.AMC and agents is not None:
        top = max_agent(f)
        if top > agents:
            raise FormulaError(f"Agent index {top} out of range 1..{agents}")
    return guard(clean(f))


def parse(text: str, logic: Logic | str = Logic.K, agents: int | None = None) -> Formula:
    """
    Parse `text` into a closed, clean formula in negation normal form.

    Args:
        text: Formula in the input grammar.
        logic: Logic whose modal operators are admissible.
        agents: Agent count for the coalition logic; inferred when None.

    Returns:
        The normalized formula.

    Raises:
        FormulaSyntaxError: When the text does not parse.
        FormulaError: On operators outside the logic, unbound variables or
            out-of-range agents.
    """
    try:
        tree = _PARSER.parse(text)
    except L.exceptions.UnexpectedInput as e:
        raise FormulaSyntaxError(f"Unexpected input {e.__class__.__name__}", e.line, e.column) from e
    except L.exceptions.LarkError as e:
        raise FormulaSyntaxError(str(e)) from e
    try:
        raw = _TreeBuilder().transform(tree)
    except L.exceptions.VisitError as e:
        if isinstance(e.orig_exc, FormulaError):
            raise e.orig_exc from e
        raise
    return normalize(_resolve(raw, frozenset()), logic, agents)


def agent_count(f: Formula, agents: int | None = None) -> int:
    """Agent count to use for `f`: the explicit value, else the largest index mentioned (at least 1)."""
    if agents is not None:
        return agents
    return max(1, max_agent(f))

