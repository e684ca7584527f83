"""
Exit-code decorators for command handlers.

Library code raises ``ChainLensError`` subclasses; command handlers are
wrapped so each error family becomes the documented process exit code.
"""

import logging
import sys
from enum import IntEnum
from functools import wraps
from typing import Any, Callable

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    DATA = 2
    SCENARIO = 3
    USAGE = 64


def exits_on(
    code: ExitCode, *errors: type[BaseException]
) -> Callable[[Callable[..., int]], Callable[..., int]]:
    """
    Decorator turning the given exceptions into an exit code.

    The error is logged and printed to stderr; the handler then returns
    ``code`` instead of raising.

    Args:
        code: Exit code returned when one of ``errors`` escapes the handler
        *errors: Exception classes to catch

    Usage:
        @exits_on(ExitCode.DATA, WireError, GraphError)
        def cmd_ingest(app: ChainLens, config: RunConfig) -> int:
            ...
    """

    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> int:
            try:
                return func(*args, **kwargs)
            except errors as e:
                logger.error(f"{func.__name__} failed: {e}")
                print(f"error: {e}", file=sys.stderr)
                return int(code)

        return wrapper

    return decorator
