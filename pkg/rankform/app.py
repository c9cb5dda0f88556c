# rankform/app.py
import argparse
import sys
from typing import Callable, List, Optional

from loguru import logger

from .config.config import Config
from .templates.messages import Messages
from . import handlers


class RankForm:
    """Command-line application: one argparse subcommand per handler."""
    parser: argparse.ArgumentParser

    def __init__(self):
        self.parser = argparse.ArgumentParser(
            prog="rankform",
            description=Messages.DESCRIPTION.format(version=Config.VERSION),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        self.parser.add_argument("--version", action="version", version=f"rankform {Config.VERSION}")
        self._commands = self.parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
        self.register_handlers()

    def register_handlers(self) -> None:
        handlers.register_all_handlers(self)

    def add_command(self, name: str, handler: Callable, add_args: Callable, help_text: str) -> None:
        sub = self._commands.add_parser(name, help=help_text, description=help_text)
        add_args(sub)
        sub.set_defaults(handler=handler)

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse argv, dispatch to the handler and return the exit code"""
        if not Config.validate():
            print(Messages.INVALID_CONFIG, file=sys.stderr)
            return 2

        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2

        logger.debug(f"Configuration:\n{Config.debug_info()}")
        logger.info(f"Running {args.command}")
        return args.handler(args)
