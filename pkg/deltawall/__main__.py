#!/usr/bin/env python3
"""
The deltawall command-line entry point.

Functions:
    main: Configures logging and runs the command line.

Environment Variables:
    LOGLEVEL: The level of logs to output.
"""

from typing import Optional, Sequence
import logging
import os
import sys

from . import cli


def main(argv: Optional[Sequence[str]] = None) -> int:
    """The command-line entry point; returns the exit status."""
    logging.basicConfig(
        level=os.environ.get("LOGLEVEL", "INFO").upper(),
        format="[%(levelname)s] %(message)s",
        stream=sys.stderr,
    )
    return cli.main(argv)


if __name__ == "__main__":
    sys.exit(main())
