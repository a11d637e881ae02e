"""
Structured logging for the box-ball toolkit
Records are JSON lines on stderr; stdout belongs to command output
"""

import logging
import sys
from typing import TextIO

import structlog

_PROCESSORS = [
    structlog.stdlib.filter_by_level,
    structlog.stdlib.add_logger_name,
    structlog.stdlib.add_log_level,
    structlog.processors.TimeStamper(fmt="iso"),
    structlog.processors.format_exc_info,
    structlog.processors.JSONRenderer(),
]


def _level_number(level: str) -> int:
    number = logging.getLevelName(level.upper())
    if not isinstance(number, int):
        raise ValueError(f"unknown log level: {level}")
    return number


def setup_logging(level: str = "WARNING", stream: TextIO = sys.stderr) -> structlog.stdlib.BoundLogger:
    """
    Route structlog through stdlib logging at the given level.

    Safe to call more than once; the last call wins.

    Args:
        level: DEBUG, INFO, WARNING or ERROR (case-insensitive)
        stream: destination of the rendered records

    Returns:
        The "pbbs" logger
    """
    logging.basicConfig(format="%(message)s", stream=stream, level=_level_number(level), force=True)
    structlog.configure(
        processors=_PROCESSORS,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )
    return structlog.get_logger("pbbs")


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)


logger = setup_logging()
