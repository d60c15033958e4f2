import sys
from logging import Logger
from typing import TYPE_CHECKING

from ..bench.registry import UnknownFamilyError
from ..core.determinize import UnsupportedFragmentError
from ..core.formula import FormulaError
from ..core.game import ResourceLimitExceeded
from ..core.logics import UnsupportedEngineError

if TYPE_CHECKING:
    from ..app import SolverApp

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2
EXIT_VIOLATION = 3
EXIT_SAT = 10
EXIT_UNSAT = 20


class UsageError(Exception):
    """Raise when the command line does not match the expected arguments."""


def register(app: "SolverApp", logger: Logger) -> None:
    @app.errorhandler(UsageError)
    def usage_error(error: UsageError) -> int:
        logger.debug(f"Usage error: {error}")
        app.parser.print_usage(sys.stderr)
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR

    @app.errorhandler(FormulaError)
    def formula_error(error: FormulaError) -> int:
        logger.error(f"Invalid formula: {error}")
        print(f"error: invalid formula: {error}", file=sys.stderr)
        return EXIT_ERROR

    @app.errorhandler(UnsupportedFragmentError)
    def unsupported_fragment(error: UnsupportedFragmentError) -> int:
        logger.error(f"Unsupported formula: {error}")
        print(f"error: unsupported formula: {error}", file=sys.stderr)
        return EXIT_ERROR

    @app.errorhandler(UnsupportedEngineError)
    def unsupported_engine(error: UnsupportedEngineError) -> int:
        logger.error(f"Unsupported configuration: {error}")
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR

    @app.errorhandler(UnknownFamilyError)
    def unknown_family(error: UnknownFamilyError) -> int:
        logger.error(str(error))
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR

    @app.errorhandler(ValueError)
    def bad_value(error: ValueError) -> int:
        logger.error(f"Invalid value: {error}")
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR

    @app.errorhandler(OSError)
    def io_error(error: OSError) -> int:
        logger.error(f"I/O error: {error}")
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR

    @app.errorhandler(ResourceLimitExceeded)
    def budget_exhausted(error: ResourceLimitExceeded) -> int:
        logger.warning(f"Budget exhausted: {error}")
        print(f"TIMEOUT: {error}", file=sys.stderr)
        return EXIT_BUDGET
