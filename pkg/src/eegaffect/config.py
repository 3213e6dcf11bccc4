"""Application-wide configuration.

Defaults are read once from the environment:

- ``EEGAFFECT_THREADS``: worker count for parallel stages (default 1).
- ``EEGAFFECT_LOG_LEVEL``: log level name for the CLI (default INFO).
- ``EEGAFFECT_SEED``: master seed used when ``--seed`` is not given (default 42).
"""

import logging
import os
from typing import Final

logger = logging.getLogger(__name__)


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name, "")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer)", name, raw)
        return default
    if value < minimum:
        logger.warning("Ignoring %s=%r (must be >= %d)", name, raw, minimum)
        return default
    return value


DEFAULT_THREADS: Final[int] = _int_from_env("EEGAFFECT_THREADS", 1, 1)
DEFAULT_SEED: Final[int] = _int_from_env("EEGAFFECT_SEED", 42, 0)
DEFAULT_LOG_LEVEL: Final[str] = os.environ.get("EEGAFFECT_LOG_LEVEL", "INFO").upper()


def setup_logging(level: int | str = logging.INFO) -> None:
    """Configure the eegaffect logger hierarchy with a console handler.

    Idempotent: handlers are only added once.

    Args:
        level: Logging level (number or name) for the eegaffect root logger.
    """
    root = logging.getLogger("eegaffect")
    if root.handlers:
        root.setLevel(level)
        return
    handler = logging.StreamHandler()
    handler.setFormatter(
        logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s")
    )
    root.addHandler(handler)
    root.setLevel(level)
