"""Entry point for dualtree."""
from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .cli.commands import apply_overrides, build_parser, run
from .core import settings


def configure_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments and run the command."""
    args = build_parser().parse_args(list(argv) if argv is not None else None)
    configure_logging(args.verbose)
    user_settings = settings.load_settings(Path(args.settings) if args.settings else None)
    return run(args, apply_overrides(user_settings, args))


if __name__ == "__main__":
    sys.exit(main())
