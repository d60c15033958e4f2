import logging
import random
from collections.abc import Callable, Iterator

import pytest

from fixpoint_sat.core.closure import closure
from fixpoint_sat.core.determinize import UnsupportedFragmentError, select_mode
from fixpoint_sat.core.formula import (
    BOX,
    DIAMOND,
    FALSE,
    TRUE,
    And,
    FixKind,
    Fixpoint,
    Formula,
    Modal,
    ModalOp,
    Or,
    Prop,
    Var,
    all_but,
    cannot_prevent,
    enforce,
    more_than,
)
from fixpoint_sat.core.logics import Logic
from fixpoint_sat.core.parser import normalize
from fixpoint_sat.core.utils.cls_utils import Singleton
from fixpoint_sat.core.utils.log_utils import LoggerSingleton

FormulaFactory = Callable[..., Formula]


def random_op(rng: random.Random, logic: Logic) -> ModalOp:
    if logic.relational:
        return rng.choice((DIAMOND, BOX))
    if logic is Logic.GRADED:
        grade = rng.randint(0, 1)
        return more_than(grade) if rng.random() < 0.5 else all_but(grade)
    coalition = rng.choice(((), (1,), (2,), (1, 2)))
    return enforce(*coalition) if rng.random() < 0.5 else cannot_prevent(*coalition)


def random_raw_formula(
    rng: random.Random,
    logic: Logic = Logic.K,
    depth: int = 4,
    names: tuple[str, ...] = ("p", "q"),
    guarded: bool = True,
) -> Formula:
    """
    A random closed formula in negation normal form, not yet normalized.

    With `guarded` a variable is only emitted once a modal operator separates
    it from its binder; otherwise any variable in scope may appear. Binder
    names repeat across sibling subformulas.
    """
    def build(d: int, env: tuple[str, ...], visible: tuple[str, ...]) -> Formula:
        kinds = ["atom", "atom", "const"]
        if d > 0:
            kinds += ["and", "or", "modal", "modal", "fix"]
        if visible:
            kinds += ["var", "var"]
        match rng.choice(kinds):
            case "atom":
                return Prop(rng.choice(names), rng.random() < 0.5)
            case "const":
                return rng.choice((TRUE, FALSE))
            case "and":
                return And(build(d - 1, env, visible), build(d - 1, env, visible))
            case "or":
                return Or(build(d - 1, env, visible), build(d - 1, env, visible))
            case "modal":
                return Modal(random_op(rng, logic), build(d - 1, env, env))
            case "fix":
                name = f"X{len(env)}"
                kind = FixKind.MU if rng.random() < 0.5 else FixKind.NU
                scope = (*env, name)
                return Fixpoint(kind, name, build(d - 1, scope, visible if guarded else scope))
            case _:
                return Var(rng.choice(visible))

    return build(depth, (), ())


def random_formula(
    rng: random.Random,
    logic: Logic = Logic.K,
    depth: int = 4,
    names: tuple[str, ...] = ("p", "q"),
) -> Formula:
    """A random closed, clean, guarded formula in negation normal form."""
    return normalize(random_raw_formula(rng, logic, depth, names), logic, 2 if logic is Logic.AMC else None)


def supported_formulas(
    rng: random.Random,
    logic: Logic,
    count: int,
    max_closure: int = 12,
    depth: int = 4,
) -> Iterator[Formula]:
    """Random formulas with a bounded closure that some determinization pipeline accepts."""
    produced = 0
    while produced < count:
        f = random_formula(rng, logic, depth)
        index = closure(f)
        if index.size > max_closure:
            continue
        try:
            select_mode(index)
        except UnsupportedFragmentError:
            continue
        produced += 1
        yield f


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


@pytest.fixture
def make_formula() -> FormulaFactory:
    return random_formula


@pytest.fixture
def make_raw_formula() -> FormulaFactory:
    return random_raw_formula


@pytest.fixture
def make_supported() -> Callable[..., Iterator[Formula]]:
    return supported_formulas


@pytest.fixture
def logger() -> logging.Logger:
    test_logger = logging.getLogger("fixpoint_sat.tests")
    test_logger.setLevel(logging.DEBUG)
    return test_logger


@pytest.fixture
def fresh_logger_singleton() -> Iterator[None]:
    """Forget the configured solver logger before and after the test."""
    Singleton.drop(LoggerSingleton)
    LoggerSingleton._initialized = False
    yield
    Singleton.drop(LoggerSingleton)
    LoggerSingleton._initialized = False
