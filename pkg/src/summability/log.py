"""Logging setup for the command line."""

from __future__ import annotations

import logging

_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity: int = 0) -> None:
    """Send package logs to stderr; ``-v`` shows INFO, ``-vv`` DEBUG."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(_FORMAT))
    root = logging.getLogger("summability")
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False
