# modules/utils/logger.py

import logging
import os
import sys
from typing import Optional

# names of every logger created through CustomLogger
_registered = set()


class CustomLogger:
    """A custom logging class that provides standardized logging for leibniz_lab."""

    def __init__(self, name: str, log_level: Optional[str] = None, log_file: Optional[str] = None):
        """
        Initialize the CustomLogger.

        Args:
            name (str): The name of the logger
            log_level (str, optional): Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
                Falls back to the configured level when omitted.
            log_file (str, optional): Path to the log file. Falls back to the configured
                log file; if that is None too, logs go to the console only.
        """
        # Imported here so config can itself log without a circular import
        from modules.core import config

        level_name = (log_level or config.log_level or "INFO").upper()
        log_file = log_file or config.log_file

        self.logger = logging.getLogger(name)
        _registered.add(name)
        self.logger.setLevel(getattr(logging, level_name, logging.INFO))
        self.logger.propagate = False

        formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(name)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        # Handlers are attached once per logger name; stdout is reserved for CLI reports
        if not any(getattr(h, "_leibniz_console", False) for h in self.logger.handlers):
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            console_handler._leibniz_console = True
            self.logger.addHandler(console_handler)

        if log_file and not any(
            isinstance(h, logging.FileHandler) and h.baseFilename == os.path.abspath(log_file)
            for h in self.logger.handlers
        ):
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

    def set_level(self, log_level: str) -> None:
        """Change the level of the wrapped logger."""
        self.logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))

    def info(self, message: str) -> None:
        """Log an info message."""
        self.logger.info(message)

    def warning(self, message: str) -> None:
        """Log a warning message."""
        self.logger.warning(message)

    def error(self, message: str) -> None:
        """Log an error message."""
        self.logger.error(message)

    def debug(self, message: str) -> None:
        """Log a debug message."""
        self.logger.debug(message)


def apply_logging_settings(log_level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Re-apply level and file handler to every logger created so far."""
    for name in sorted(_registered):
        CustomLogger(name, log_level, log_file)
