import argparse
import importlib
import logging
import pkgutil
import sys

# Local imports
import commands
import utils
from config_manager import ConfigManager
from tangent.errors import DimensionMismatch, TangentError
from tangent.ring import Ring, ring_from_name

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad command-line usage (unknown flag, missing argument, ...)."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --- App Setup ---

class TangentApp:
    """Holds the parser, the loaded configuration and the ring the commands compute in."""

    def __init__(self):
        self.parser = ArgumentParser(
            prog="tangent",
            description="Tangent algebras, slopes, derivatives and hypercubic matrices, exactly.",
        )
        self.parser.add_argument("--ring", choices=["rational", "float"], default=None,
                                 help="scalar ring (default: config, TANGENT_RING, then rational)")
        self.parser.add_argument("--config", default=None, help="path of the JSON config file")
        self.parser.add_argument("-v", "--verbose", action="count", default=0,
                                 help="-v for INFO, -vv for DEBUG logging on stderr")
        self.subparsers = self.parser.add_subparsers(dest="command", metavar="COMMAND")
        self.subparsers.required = True
        self.config: ConfigManager | None = None
        self._ring: Ring | None = None

    def add_command(self, name: str, handler, help: str) -> argparse.ArgumentParser:
        sub = self.subparsers.add_parser(name, help=help, description=help)
        sub.set_defaults(handler=handler)
        return sub

    def load_commands(self):
        for module_info in pkgutil.iter_modules(commands.__path__):
            if module_info.name.startswith("_"):
                continue
            module = importlib.import_module(f"{commands.__name__}.{module_info.name}")
            module.setup(self)
            logger.debug(f"Loaded command module: {module_info.name}")

    @property
    def ring(self) -> Ring:
        if self._ring is None:
            cfg = self.config
            self._ring = ring_from_name(cfg["ring"], cfg["float_epsilon"], cfg["float_tolerance"])
        return self._ring

    def check_dim(self, n: int):
        max_dim = self.config["max_dim"]
        if n > max_dim:
            raise DimensionMismatch(f"order {n} exceeds the configured max_dim {max_dim}")

    def run(self, argv=None) -> int:
        try:
            args = self.parser.parse_args(argv)
            self.config = ConfigManager(args.config)
            self.config.override(ring=args.ring)
            setup_logging(self.config["log_level"], args.verbose)
            logger.debug(f"Running '{args.command}' over the {self.config['ring']} ring")
            code = args.handler(self, args)
            return EXIT_OK if code is None else code
        except Exception as error:
            return self.on_command_error(error)

    def on_command_error(self, error: Exception) -> int:
        """Global error handler: one JSON error document on stdout, the message on stderr."""
        if isinstance(error, UsageError):
            message = str(error)
        elif isinstance(error, TangentError):
            message = str(error)
            logger.info(f"{type(error).__name__}: {message}")
        elif isinstance(error, (ValueError, TypeError)):
            message = str(error)
            logger.info(f"Invalid input: {message}")
        else:
            logger.error(f"Unexpected error: {error}", exc_info=error)
            message = f"unexpected error: {error}"
        utils.emit({"error": message})
        utils.say(f"error: {message}")
        return EXIT_USAGE


def setup_logging(level_name: str, verbosity: int = 0):
    level = getattr(logging, level_name.upper(), logging.WARNING)
    if verbosity >= 2:
        level = min(level, logging.DEBUG)
    elif verbosity == 1:
        level = min(level, logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def build_app() -> TangentApp:
    app = TangentApp()
    app.load_commands()
    return app


def main(argv=None) -> int:
    return build_app().run(argv)


# --- Startup ---
def start():
    sys.exit(main())


if __name__ == "__main__":
    start()
