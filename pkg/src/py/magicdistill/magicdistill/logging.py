"""Console logging for the ``magicdistill`` logger tree.

Records go to standard error so the JSON reports on standard output are unaffected by
the log level. Debug mode lowers the level and adds the module name to each line.
"""

import logging
import sys
from logging.config import dictConfig

from colorlog import ColoredFormatter

from magicdistill.config import MAGICDISTILL_DEBUG_MODE

LOG_FORMAT = "%(asctime)s | %(log_color)s%(levelname)s%(reset)s | %(message)s"
DEBUG_LOG_FORMAT = (
    "%(asctime)s | %(log_color)s%(levelname)s%(reset)s | %(name)s | %(message)s"
)
DATE_FORMAT = r"%Y-%m-%dT%H:%M:%S%z"
LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "bold_red",
}

dictConfig(
    {
        "version": 1,
        "disable_existing_loggers": False,
        "loggers": {
            "magicdistill": {"handlers": ["stderr"]},
        },
        "handlers": {
            "stderr": {
                "class": "logging.StreamHandler",
                "formatter": "colored",
                "stream": sys.stderr,
            }
        },
        "formatters": {
            "colored": {
                "()": ColoredFormatter,
                "fmt": LOG_FORMAT,
                "datefmt": DATE_FORMAT,
                "log_colors": LOG_COLORS,
            }
        },
    }
)


ROOT_LOGGER = logging.getLogger("magicdistill")
"""Parent of every module logger in the package"""


def _console_handler() -> logging.Handler:
    return next(h for h in ROOT_LOGGER.handlers if isinstance(h, logging.StreamHandler))


@MAGICDISTILL_DEBUG_MODE.subscribe
def _set_debug_level(debug: bool) -> None:
    fmt = DEBUG_LOG_FORMAT if debug else LOG_FORMAT
    _console_handler().setFormatter(
        ColoredFormatter(fmt, datefmt=DATE_FORMAT, log_colors=LOG_COLORS)
    )
    ROOT_LOGGER.setLevel("DEBUG" if debug else "INFO")
    ROOT_LOGGER.debug("Debug logging enabled")
