"""Structured logger shared by every sftflow module."""

import logging
import sys
from os import environ

import structlog

from sftflow.entities.constants import DEFAULT_LOG_LEVEL, LOG_LEVEL_ENV


def _resolve_level() -> int:
    """Map the configured level name onto a logging level number."""
    name = environ.get(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL).upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.WARNING


class StructuredLogger:
    """JSON-lines logger writing to stderr.

    Call it as ``structured_logger.info(message="...", **fields)``; stdout
    stays free for command reports.
    """

    def __init__(self, name: str) -> None:
        self.name = name
        self.configure()

    def configure(self) -> None:
        """(Re)build the underlying structlog logger from the environment."""
        self.logger = structlog.wrap_logger(
            structlog.PrintLogger(file=sys.stderr),
            wrapper_class=structlog.make_filtering_bound_logger(_resolve_level()),
            processors=[
                structlog.processors.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.JSONRenderer(sort_keys=True),
            ],
        ).bind(logger=self.name)

    def debug(self, message: str, **fields) -> None:
        """Logs at debug level with extra structured fields."""
        self.logger.debug(message, **fields)

    def info(self, message: str, **fields) -> None:
        """Logs at info level with extra structured fields."""
        self.logger.info(message, **fields)

    def warning(self, message: str, **fields) -> None:
        """Logs at warning level with extra structured fields."""
        self.logger.warning(message, **fields)

    def error(self, message: str, **fields) -> None:
        """Logs at error level with extra structured fields."""
        self.logger.error(message, **fields)


structured_logger = StructuredLogger("sftflow")
