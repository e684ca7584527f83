"""
chainlens Entry Point

Parses raw block files into a chain graph and runs the flow, dwell,
extranonce and degree analyses from the command line. Logging is set up by
``chainlens.cli.main``, which the ``chainlens`` console script also calls.
"""

import logging
import sys

from chainlens.cli import main

logger = logging.getLogger(__name__)

# Shell convention for a run ended by Ctrl-C
INTERRUPTED = 130


def run() -> int:
    """Run the command line, turning Ctrl-C into a logged exit."""
    try:
        return main()
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        return INTERRUPTED


if __name__ == "__main__":
    sys.exit(run())
