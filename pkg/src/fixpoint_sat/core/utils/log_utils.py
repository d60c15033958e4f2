import logging
import logging.handlers
import sys
from logging import Logger, LogRecord
from pathlib import Path
from typing import ClassVar

from colorama import Fore, Style

from .cls_utils import Singleton


class CustomColoredFormatter(logging.Formatter):
    """
    Logging formatter that wraps every record in the ANSI color of its level.

    Class Attributes:
        LEVEL_COLORS (dict): Mapping of log level numbers to colorama color codes.
    """
    LEVEL_COLORS: ClassVar[dict[int, str]] = {
        logging.DEBUG: Fore.LIGHTBLUE_EX,
        logging.INFO: Fore.LIGHTGREEN_EX,
        logging.WARNING: Fore.LIGHTYELLOW_EX,
        logging.ERROR: Fore.LIGHTRED_EX,
        logging.CRITICAL: Fore.LIGHTRED_EX + Style.BRIGHT,
    }

    def __init__(self, fmt: str | None = None, datefmt: str | None = None) -> None:
        super().__init__(fmt=fmt, datefmt=datefmt)
        self._plain = logging.Formatter(fmt=fmt, datefmt=datefmt)

    def format(self, record: LogRecord) -> str:
        """
        Format the record with the plain formatter and color the whole line.

        Args:
            record (LogRecord): The log record to format.

        Returns:
            str: The formatted message, colored when the level has a color.
        """
        text = self._plain.format(record)
        color = self.LEVEL_COLORS.get(record.levelno)
        return f"{color}{text}{Style.RESET_ALL}" if color else text


class LoggerSingleton(metaclass=Singleton):
    """
    Process-wide solver logger with a stderr console handler and an optional rotating file.

    The first construction configures the `fixpoint_sat` logger; later
    constructions return the same instance untouched. The console handler writes
    to stderr so that verdict lines and CSV rows on stdout stay machine readable.
    """
    _logger: Logger = logging.getLogger('fixpoint_sat')
    _initialized: bool = False

    DEFAULT_FORMAT = '%(asctime)s | %(levelname)s | %(module)s | %(funcName)s | %(message)s'
    DEFAULT_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

    def __init__(
        self,
        log_dir: Path | str | None = None,
        log_file: str | None = None,
        level: str | None = None,
        msg_format: str | None = None,
        date_format: str | None = None,
        colored: bool = False,
        max_size_mb: int = 10,
        keep: int = 5,
    ) -> None:
        """
        Configure the logger on first use.

        Args:
            log_dir (Path | str | None): Directory for log files (if None, no file logging).
            log_file (str | None): Log file name.
            level (str | None): Logging level name. Defaults to 'WARNING'.
            msg_format (str | None): Message format. Defaults to DEFAULT_FORMAT.
            date_format (str | None): Date format. Defaults to DEFAULT_DATE_FORMAT.
            colored (bool): Color console output when stderr is a terminal.
            max_size_mb (int): Maximum file size in MB before rotation.
            keep (int): Number of rotated files to keep.
        """
        if type(self)._initialized:
            return
        level = (level or "WARNING").upper()
        msg_format = msg_format or self.DEFAULT_FORMAT
        date_format = date_format or self.DEFAULT_DATE_FORMAT

        logger = type(self)._logger
        logger.setLevel(level)
        logger.handlers.clear()
        logger.propagate = False

        console = logging.StreamHandler(sys.stderr)
        console.setLevel(level)
        if colored and sys.stderr.isatty():
            console.setFormatter(CustomColoredFormatter(fmt=msg_format, datefmt=date_format))
        else:
            console.setFormatter(logging.Formatter(fmt=msg_format, datefmt=date_format))
        logger.addHandler(console)

        if log_dir is not None and log_file:
            self._add_file_handler(Path(log_dir), log_file, level, msg_format, date_format, max_size_mb, keep)
        type(self)._initialized = True

    def _add_file_handler(
        self,
        log_dir: Path,
        log_file: str,
        level: str,
        msg_format: str,
        date_format: str,
        max_size_mb: int,
        keep: int,
    ) -> None:
        """
        Add a rotating file handler.

        Raises:
            OSError: If the directory cannot be created or the file cannot be opened.
        """
        try:
            log_dir.mkdir(parents=True, exist_ok=True)
            file_handler = logging.handlers.RotatingFileHandler(
                log_dir / log_file,
                maxBytes=max_size_mb * 1024 * 1024,
                backupCount=keep,
                encoding="utf-8",
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(logging.Formatter(fmt=msg_format, datefmt=date_format))
            type(self)._logger.addHandler(file_handler)
        except OSError as e:
            type(self)._logger.error(f"Failed to initialize file handler: {e}", exc_info=True)
            raise

    @classmethod
    def get_logger(cls) -> Logger:
        """
        Return the configured logger, configuring it with defaults if nobody did yet.

        Returns:
            Logger: The shared `fixpoint_sat` logger.
        """
        if not cls._initialized:
            cls()
        return cls._logger

    @classmethod
    def set_level(cls, level: str) -> None:
        """Change the level of the logger and all of its handlers."""
        logger = cls.get_logger()
        logger.setLevel(level.upper())
        for handler in logger.handlers:
            handler.setLevel(level.upper())
