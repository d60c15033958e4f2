import argparse
import sys
from collections.abc import Callable, Sequence
from logging import Logger
from typing import NoReturn, TypeVar

from .cli import commands, error_handlers
from .cli.error_handlers import UsageError
from .config import AppConfig
from .core.utils.log_utils import LoggerSingleton

Handler = Callable[[argparse.Namespace], int]
ErrorHandler = Callable[[BaseException], int]
E = TypeVar("E", bound=BaseException)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


class SolverApp:
    """
    Command-line application: a tree of subcommands plus exception handlers.

    Subcommands are registered with `add_command`; each one gets an argparse
    parser and a handler returning the exit code. Exceptions escaping a handler
    are passed to the handler registered for the closest exception class.
    """

    def __init__(self, config: AppConfig, logger: Logger) -> None:
        self.config = config
        self.logger = logger
        self.parser = _ArgumentParser(
            prog="fixpoint-sat",
            description="Satisfiability checking for coalgebraic modal fixpoint logics",
        )
        self.parser.add_argument("--log-level", default=None, help="override LOG_LEVEL for this run")
        self._commands = self.parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
        self._error_handlers: dict[type[BaseException], ErrorHandler] = {}

    def add_command(
        self,
        name: str,
        help_text: str,
        handler: Handler | None = None,
        parents: Sequence[argparse.ArgumentParser] = (),
        under: "argparse._SubParsersAction[argparse.ArgumentParser] | None" = None,
    ) -> argparse.ArgumentParser:
        target = under if under is not None else self._commands
        parser = target.add_parser(name, help=help_text, description=help_text, parents=list(parents))
        if handler is not None:
            parser.set_defaults(handler=handler)
        return parser

    def errorhandler(self, exc_type: type[E]) -> Callable[[Callable[[E], int]], Callable[[E], int]]:
        def decorator(func: Callable[[E], int]) -> Callable[[E], int]:
            self._error_handlers[exc_type] = func  # type: ignore[assignment]
            return func
        return decorator

    def _handle(self, error: BaseException) -> int:
        for cls in type(error).__mro__:
            handler = self._error_handlers.get(cls)
            if handler is not None:
                return handler(error)
        self.logger.error(f"Unhandled {type(error).__name__}: {error}", exc_info=True)
        raise error

    def run(self, argv: Sequence[str] | None = None) -> int:
        """Parse `argv`, run the selected command and return its exit code."""
        try:
            args = self.parser.parse_args(argv)
            if args.log_level:
                LoggerSingleton.set_level(args.log_level)
            self.logger.debug(f"Running command {args.command}")
            handler: Handler = args.handler
            return handler(args)
        except Exception as e:
            return self._handle(e)


def create_app(config: AppConfig | None = None) -> SolverApp:
    if config is None:
        config = AppConfig.from_env()

    logger = LoggerSingleton(
        log_dir=config.LOGS_PATH,
        log_file=config.LOG_FILENAME,
        level=config.LOG_LEVEL,
        msg_format=config.LOG_MSG_FORMAT,
        date_format=config.LOG_DATETIME_FORMAT,
        colored=True,
    ).get_logger()
    logger.info("Logger initialized")

    app = SolverApp(config, logger)

    commands.register(app, logger, config)
    error_handlers.register(app, logger)

    return app


def main() -> None:
    app = create_app()
    try:
        sys.exit(app.run(sys.argv[1:]))
    except KeyboardInterrupt:
        print("Stopped", file=sys.stderr)
        sys.exit(130)
