"""
Text rendering of formulas with minimal parentheses, readable back by `parser.parse`.

`&` binds tighter than `|` and both associate to the left, so a right operand of
the same operator is parenthesized. A fixpoint body extends as far to the right
as possible, so a fixpoint is parenthesized unless nothing follows it.
"""

from .formula import And, Bottom, Fixpoint, Formula, Modal, Or, Prop, Top, Var

_OR, _AND, _UNARY = 1, 2, 3


def _render(f: Formula, level: int, last: bool) -> str:
    match f:
        case Bottom():
            return "false"
        case Top():
            return "true"
        case Prop(name, positive):
            return name if positive else f"!{name}"
        case Var(name):
            return name
        case And(left, right):
            wrap = level > _AND
            text = f"{_render(left, _AND, False)} & {_render(right, _UNARY, wrap or last)}"
            return f"({text})" if wrap else text
        case Or(left, right):
            wrap = level > _OR
            text = f"{_render(left, _OR, False)} | {_render(right, _AND, wrap or last)}"
            return f"({text})" if wrap else text
        case Modal(op, arg):
            sep = " " if isinstance(arg, Fixpoint) and last else ""
            return f"{op}{sep}{_render(arg, _UNARY, last)}"
        case Fixpoint(kind, var, body):
            text = f"{kind.value} {var}. {_render(body, 0, True)}"
            return text if last else f"({text})"
    raise TypeError(f"Not a formula: {f!r}")


def to_text(f: Formula) -> str:
    return _render(f, 0, True)
