"""Module for logging run info to a file or stderr."""

from typing import Optional
import logging
import sys


def start_logging_info(log_file: Optional[str] = None, verbose: bool = False) -> None:
    """Start logging info.

    Args:
        log_file (Optional[str]): Log file path; stderr when None.
        verbose (bool): Log debug lines when True, warnings only otherwise.
    """
    level = logging.DEBUG if verbose else logging.WARNING
    if log_file:
        logging.basicConfig(
            filename=log_file,
            filemode="w",
            format="%(asctime)s %(message)s",
            level=level,
            force=True,
        )
    else:
        logging.basicConfig(
            stream=sys.stderr,
            format="%(asctime)s %(message)s",
            level=level,
            force=True,
        )


def stop_logging() -> None:
    """Close and detach the handlers installed by start_logging_info."""
    logger = logging.getLogger()
    handlers = logger.handlers[:]
    for handler in handlers:
        handler.close()
        logger.removeHandler(handler)
